//! Gate-level constructions: the reflection `R`, the middle-qubit layers, the
//! controlled state-preparation `U_C`, the controlled copy `C`, the `W` and
//! `G` operators built from them, the diagonal amplitude block-encodings, and
//! the sin-ladder state-preparation block-encoding.
//!
//! All of these act on a `2n+1`-qubit working register laid out as
//! `[top register: qubits 0..n) | flag: qubit n | basis register: qubits n+1..2n+1)`;
//! the encodings add further ancillas on top. Depth estimates record the
//! analytic linear-depth costs of the multi-controlled pieces rather than a
//! compiled gate count.

use crate::blockenc::{spbe_from_branch, BlockEncoding, Spbe};
use crate::linalg::{
    check_register, CMatrix, GateKind, GateOp, StateVector, UnitaryCircuit, C64, EXACT_TOL,
};
use crate::{Error, Result};

/// A state-preparation circuit `U` with `U|0> = |psi>`, optionally asserting
/// that all amplitudes of `|psi>` are real.
///
/// The circuit's `controlled_u_queries` metadata counts uses of the oracle;
/// an oracle circuit counts itself as one use, so query counts stay additive
/// under composition.
#[derive(Debug, Clone)]
pub struct StatePrepOracle {
    circuit: UnitaryCircuit,
    is_real: bool,
}

impl StatePrepOracle {
    pub fn new(circuit: UnitaryCircuit, is_real: bool) -> Result<Self> {
        let queries = circuit.controlled_u_queries().max(1);
        let circuit = circuit.with_queries(queries);
        let oracle = StatePrepOracle { circuit, is_real };
        if is_real {
            let max_imag = oracle.state()?.max_imag();
            if max_imag > EXACT_TOL {
                return Err(Error::NotReal { max_imag });
            }
        }
        Ok(oracle)
    }

    pub fn circuit(&self) -> &UnitaryCircuit {
        &self.circuit
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn n_qubits(&self) -> usize {
        self.circuit.n_qubits()
    }

    /// The prepared state `U|0...0>`.
    pub fn state(&self) -> Result<StateVector> {
        StateVector::new(self.n_qubits(), self.circuit.column_zero()?)
    }
}

/// Selects which part of the amplitudes a construction extracts: the phase
/// flag `p`, with `p = 0` for the real part and `p = 1` for the imaginary
/// part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplitudePart {
    Real,
    Imaginary,
}

impl AmplitudePart {
    pub fn phase_power(self) -> u32 {
        match self {
            AmplitudePart::Real => 0,
            AmplitudePart::Imaginary => 1,
        }
    }

    /// `Re((-i)^p z)`: the real part for `p = 0`, the imaginary part for `p = 1`.
    pub fn extract(self, z: C64) -> f64 {
        match self {
            AmplitudePart::Real => z.re,
            AmplitudePart::Imaginary => z.im,
        }
    }

    /// `i^p`.
    pub fn phase(self) -> C64 {
        match self {
            AmplitudePart::Real => C64::new(1.0, 0.0),
            AmplitudePart::Imaginary => C64::new(0.0, 1.0),
        }
    }
}

/// The single-qubit gate placed on the middle qubit by [`build_middle_layer`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiddleGate {
    Z,
    H,
    S,
}

pub(crate) mod gates {
    use super::{CMatrix, C64};

    pub fn hadamard() -> CMatrix {
        let s = 1.0 / 2f64.sqrt();
        CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(s, 0.0),
                C64::new(s, 0.0),
                C64::new(s, 0.0),
                C64::new(-s, 0.0),
            ],
        )
    }

    pub fn pauli_z() -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(-1.0, 0.0),
            ],
        )
    }

    pub fn pauli_x() -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        )
    }

    pub fn phase_s() -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 1.0),
            ],
        )
    }

    /// `X Z X = -Z = diag(-1, 1)`.
    pub fn xzx() -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(-1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
            ],
        )
    }

    /// `exp(-i Y theta)`.
    pub fn ry(theta: f64) -> CMatrix {
        let (s, c) = theta.sin_cos();
        CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(c, 0.0),
                C64::new(-s, 0.0),
                C64::new(s, 0.0),
                C64::new(c, 0.0),
            ],
        )
    }
}

/// The reflection `R = (I_{n+1} - 2|0><0|_{n+1}) (x) I_n` on `2n+1` qubits.
///
/// Depth records the linear-depth decomposition of the (n+1)-controlled flip.
pub fn build_reflection(n: usize) -> Result<UnitaryCircuit> {
    check_n(n)?;
    let total = 2 * n + 1;
    let mut c = UnitaryCircuit::identity(total)?;
    c.push(GateOp {
        kind: GateKind::ReflectAboutZeros {
            qubits: (0..=n).collect(),
        },
        controls: vec![],
    });
    Ok(c.with_depth(2 * n as u64))
}

/// A single-qubit gate on the middle qubit of the `2n+1` register.
pub fn build_middle_layer(n: usize, which: MiddleGate) -> Result<UnitaryCircuit> {
    check_n(n)?;
    let total = 2 * n + 1;
    let m = match which {
        MiddleGate::Z => gates::pauli_z(),
        MiddleGate::H => gates::hadamard(),
        MiddleGate::S => gates::phase_s(),
    };
    UnitaryCircuit::dense_gate(total, m, vec![n])
}

/// `U_C = (U (x) |0><0|_1 + I_n (x) |1><1|_1) (x) I_n`: the oracle on the top
/// register, controlled on the middle qubit being |0>.
pub fn build_controlled_prep(u: &StatePrepOracle) -> Result<UnitaryCircuit> {
    let n = u.n_qubits();
    check_n(n)?;
    let total = 2 * n + 1;
    let part = u.circuit().embed(total, 0)?.add_control(n, false)?;
    let depth = part.depth_estimate() + 2;
    Ok(part.with_depth(depth))
}

/// The controlled copy `C`: maps `|0>_n |1>_1 |k>_n` to `|k>_n |1>_1 |k>_n`
/// and fixes the `|0>_1` branch; self-inverse.
pub fn build_controlled_copy(n: usize) -> Result<UnitaryCircuit> {
    check_n(n)?;
    let total = 2 * n + 1;
    let mut c = UnitaryCircuit::identity(total)?;
    c.push(GateOp {
        kind: GateKind::XorRegister {
            src: (n + 1..total).collect(),
            dst: (0..n).collect(),
        },
        controls: vec![crate::linalg::Control {
            qubit: n,
            value: true,
        }],
    });
    Ok(c.with_depth(n as u64))
}

/// `W_p = H^ S^^p C U_C H^`, preparing `|Phi_k^p>` from `|0>_n |0>_1 |k>_n`.
///
/// Uses one query to the controlled oracle.
pub fn build_w(u: &StatePrepOracle, part: AmplitudePart) -> Result<UnitaryCircuit> {
    let n = u.n_qubits();
    let mut w = build_middle_layer(n, MiddleGate::H)?
        .then(&build_controlled_prep(u)?)?
        .then(&build_controlled_copy(n)?)?;
    if part == AmplitudePart::Imaginary {
        w = w.then(&build_middle_layer(n, MiddleGate::S)?)?;
    }
    w.then(&build_middle_layer(n, MiddleGate::H)?)
}

/// `G_p = W_p R W_p^dag Z^`.
///
/// `-1/2 (G_p + G_p^dag)` has `|Phi_k^p>` as eigenvector with eigenvalue
/// `Re(psi_k)` (`p = 0`) or `Im(psi_k)` (`p = 1`); two controlled-oracle
/// queries.
pub fn build_g(u: &StatePrepOracle, part: AmplitudePart) -> Result<UnitaryCircuit> {
    let n = u.n_qubits();
    let w = build_w(u, part)?;
    build_middle_layer(n, MiddleGate::Z)?
        .then(&w.adjoint())?
        .then(&build_reflection(n)?)?
        .then(&w)
}

/// The expected `W_p |0>_n |0>_1 |k>_n` amplitudes from the closed form
/// `1/2 ((|psi> + i^p |k>)|0> + (|psi> - i^p |k>)|1>) |k>`.
pub fn w_action_formula(psi: &[C64], k: usize, part: AmplitudePart) -> Vec<C64> {
    let n_dim = psi.len();
    let mut amps = vec![C64::new(0.0, 0.0); n_dim * 2 * n_dim];
    let phase = part.phase();
    for t in 0..n_dim {
        let delta = if t == k { phase } else { C64::new(0.0, 0.0) };
        // index layout: t * (2 * n_dim) + flag * n_dim + k
        amps[t * 2 * n_dim + k] = 0.5 * (psi[t] + delta);
        amps[t * 2 * n_dim + n_dim + k] = 0.5 * (psi[t] - delta);
    }
    amps
}

/// The `(1, n+2, 0)` diagonal block-encoding of `Re((-i)^p psi_j)`:
/// `U^(p) = (XZX (x) I)(H (x) W^dag)(|0><0| (x) G + |1><1| (x) G^dag)(H (x) W)`.
///
/// Six controlled-oracle queries in total.
pub fn build_diag_encoding_real_part(
    u: &StatePrepOracle,
    part: AmplitudePart,
) -> Result<BlockEncoding> {
    let n = u.n_qubits();
    let total = 2 * n + 2;
    check_register(total)?;

    let h0 = UnitaryCircuit::dense_gate(total, gates::hadamard(), vec![0])?;
    let w = build_w(u, part)?;
    let g = build_g(u, part)?;

    let circuit = h0
        .clone()
        .then(&w.embed(total, 1)?)?
        .then(&g.embed(total, 1)?.add_control(0, false)?)?
        .then(&g.adjoint().embed(total, 1)?.add_control(0, true)?)?
        .then(&w.adjoint().embed(total, 1)?)?
        .then(&h0)?
        .then(&UnitaryCircuit::dense_gate(total, gates::xzx(), vec![0])?)?;

    let psi = u.state()?;
    let claimed = CMatrix::from_fn(psi.dim(), psi.dim(), |i, j| {
        if i == j {
            C64::new(part.extract(psi.amplitudes()[i]), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    BlockEncoding::new(circuit, 1.0, n + 2, 0.0, Some(claimed))
}

/// How [`build_diag_encoding`] realizes the encoding for complex states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexEncodingMode {
    /// Honest PREPARE/SELECT combination `A^(0) + i A^(1)` with alpha = 2 and
    /// n+3 ancillas.
    LinearCombination,
    /// Exact unitary dilation of `diag(psi)` with alpha = 1 and one ancilla.
    Dilation,
}

/// Diagonal block-encoding of the full complex amplitudes `diag(psi)`.
///
/// Real oracles use the real-part encoding directly (alpha = 1, n+2
/// ancillas). Complex oracles use the requested mode. Dilation-mode circuits
/// record the analytic 12-query cost of the combination they stand in for.
pub fn build_diag_encoding(
    u: &StatePrepOracle,
    mode: ComplexEncodingMode,
) -> Result<BlockEncoding> {
    if u.is_real() {
        return build_diag_encoding_real_part(u, AmplitudePart::Real);
    }
    let n = u.n_qubits();
    let psi = u.state()?;
    let diag = CMatrix::from_fn(psi.dim(), psi.dim(), |i, j| {
        if i == j {
            psi.amplitudes()[i]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    match mode {
        ComplexEncodingMode::LinearCombination => {
            let total = 2 * n + 3;
            check_register(total)?;
            let re = build_diag_encoding_real_part(u, AmplitudePart::Real)?;
            let im = build_diag_encoding_real_part(u, AmplitudePart::Imaginary)?;
            let h0 = UnitaryCircuit::dense_gate(total, gates::hadamard(), vec![0])?;
            let s0 = UnitaryCircuit::dense_gate(total, gates::phase_s(), vec![0])?;
            let circuit = h0
                .clone()
                .then(&re.unitary().embed(total, 1)?.add_control(0, false)?)?
                .then(&im.unitary().embed(total, 1)?.add_control(0, true)?)?
                .then(&s0)?
                .then(&h0)?;
            BlockEncoding::new(circuit, 2.0, n + 3, 0.0, Some(diag))
        }
        ComplexEncodingMode::Dilation => {
            let be = crate::blockenc::dilate(&diag)?;
            let circuit = be
                .unitary()
                .clone()
                .with_queries(12)
                .with_depth(4 * n as u64 + 4);
            BlockEncoding::new(circuit, 1.0, 1, 0.0, Some(diag))
        }
    }
}

/// The sin-ladder state-preparation block-encoding on `1 + n` qubits:
/// Hadamards on the main register, controlled `exp(-i Y 2^-(j+1))` rotations
/// onto the ancilla (qubit 0) from the j-th most significant main qubit
/// (counting j from 0), then `X` on the ancilla.
///
/// The ancilla-zero branch carries `sin(j/N)/sqrt(N)`, so this is an
/// `(sqrt(N)/N0, 1, 0)`-SPBE of the normalized sine state, with
/// `N0^2 = sum_j sin^2(j/N)`.
pub fn build_sin_ladder(n: usize) -> Result<Spbe> {
    check_n(n)?;
    let total = n + 1;
    check_register(total)?;
    let big_n = (1usize << n) as f64;

    let mut circuit = UnitaryCircuit::identity(total)?;
    for q in 1..=n {
        circuit.push(GateOp {
            kind: GateKind::Dense {
                matrix: gates::hadamard(),
                targets: vec![q],
            },
            controls: vec![],
        });
    }
    for q in 1..=n {
        // main qubit q carries place value 2^(n-q) in j, so it rotates by
        // 2^(n-q)/N = 2^-q
        let theta = 2f64.powi(-(q as i32));
        circuit.push(GateOp {
            kind: GateKind::Dense {
                matrix: gates::ry(theta),
                targets: vec![0],
            },
            controls: vec![crate::linalg::Control {
                qubit: q,
                value: true,
            }],
        });
    }
    circuit.push(GateOp {
        kind: GateKind::Dense {
            matrix: gates::pauli_x(),
            targets: vec![0],
        },
        controls: vec![],
    });
    let circuit = circuit.with_queries(1).with_depth(n as u64 + 2);

    let norm0_sq: f64 = (0..1usize << n)
        .map(|j| (j as f64 / big_n).sin().powi(2))
        .sum();
    let alpha = big_n.sqrt() / norm0_sq.sqrt();
    spbe_from_branch(circuit, 1, alpha)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::param("n", "register must have at least one qubit"));
    }
    Ok(())
}
