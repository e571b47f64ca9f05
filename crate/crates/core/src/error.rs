//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("register of {requested} qubits exceeds the configured limit of {limit}")]
    ResourceLimit { requested: usize, limit: usize },

    #[error("qubit-count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("vector norm {norm} is not 1 within tolerance {tol}")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("post-selection probability {probability:.3e} is degenerate")]
    DegeneratePostselection { probability: f64 },

    #[error("invalid qubit index {qubit} for a {n_qubits}-qubit register")]
    InvalidQubit { qubit: usize, n_qubits: usize },

    #[error(
        "constant term with magnitude {c0_mag:.3e} is not zero; polynomial is not divisible by x"
    )]
    NotDivisibleByX { c0_mag: f64 },

    #[error("polynomial sup norm {sup:.6} exceeds the limit {limit}")]
    PolynomialTooLarge { sup: f64, limit: f64 },

    #[error("required polynomial degree {required} exceeds the cap {cap}")]
    DegreeOverflow { required: usize, cap: usize },

    #[error("matrix with spectral norm {norm:.12} is not a contraction")]
    ContractionViolation { norm: f64 },

    #[error("unitary does not decompose as a state-preparation branch: residual {residual:.3e}")]
    NotAnSpbe { residual: f64 },

    #[error("block-encoding error {epsilon:.3e} exceeds what the operation admits ({limit:.3e})")]
    EncodingErrorTooLarge { epsilon: f64, limit: f64 },

    #[error("encoded matrix deviates from Hermitian by {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("polynomial has a non-zero constant term; use the uniform-superposition engine")]
    WrongEngine,

    #[error("target amplitude vector has vanishing norm")]
    VanishingTarget,

    #[error("oracle amplitudes are not real: max imaginary part {max_imag:.3e}")]
    NotReal { max_imag: f64 },

    #[error("supplied promise (psi1, gap) is inconsistent with the state: masked top probability {top_probability:.6}")]
    BadPromise { top_probability: f64 },

    #[error("inner approximation range [{lo:.6}, {hi:.6}] leaves the outer domain [{dom_lo:.6}, {dom_hi:.6}]")]
    DomainViolation {
        lo: f64,
        hi: f64,
        dom_lo: f64,
        dom_hi: f64,
    },

    #[error("invalid parameter {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}
