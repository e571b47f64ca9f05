//! Desk-scale, gate-exact simulation and analysis of non-linear transformations
//! of quantum-state amplitudes.
//!
//! The crate builds diagonal block-encodings of the amplitudes of a state
//! specified by a state-preparation circuit, applies polynomially approximated
//! non-linear functions to those amplitudes through two competing engines
//! (importance-weighted and uniform-superposition), and checks the resulting
//! error bounds, success probabilities and query-count scaling numerically.
//!
//! Layer map:
//!
//! - [`linalg`] — dense complex vectors, gate kernels, composable circuits.
//! - [`circuits`] — the gate-level constructions: reflection `R`, middle-qubit
//!   layers, controlled state preparation, controlled copy, the `W`/`G`
//!   operators, the diagonal amplitude encodings and the sin-ladder.
//! - [`blockenc`] — the (alpha, ancillas, epsilon) block-encoding algebra:
//!   verification, products, linear combinations, exact dilation, state
//!   preparation block encodings and fixed-point amplification.
//! - [`poly`] — dual-basis polynomials, sup-norm estimation, reduced
//!   polynomials `h(x) = P(x)/x`, and the certified approximation library
//!   (tanh, exp, cos, logistic, Gaussian, sin, shifted erf, arcsin).
//! - [`engine`] — the end-to-end amplitude-transformation pipelines with full
//!   normalization and error bookkeeping, and the matrix-level eigenvalue
//!   transform they share.
//! - [`apps`] — runnable procedures: the five-function end-to-end table, the
//!   tanh engine comparison, maximum finding, and continuous state preparation.
//! - [`sampling`] — seeded, bit-reproducible random states and oracles.
//!
//! Qubit ordering convention (used everywhere): registers written left to
//! right in formulas map to most-significant-to-least-significant bits of the
//! amplitude index. Qubit `0` is the most significant.

pub mod apps;
pub mod blockenc;
pub mod circuits;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod sampling;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
