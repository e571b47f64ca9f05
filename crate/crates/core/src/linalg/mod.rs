//! Dense complex vector/matrix kernel layer.
//!
//! Everything above this module is built from three pieces defined here:
//! [`StateVector`] / [`UnnormalizedVector`] (amplitude vectors over qubit
//! registers), [`UnitaryCircuit`] (a composable sequence of structured gate
//! operations with query/depth metadata), and a handful of metric helpers.
//!
//! # Qubit ordering
//!
//! Registers written left to right in a formula map to
//! most-significant-to-least-significant bits of the amplitude index: qubit
//! `0` is the most significant. The bit position of qubit `q` in an
//! `n`-qubit register is `n - 1 - q`. This convention is fixed here once and
//! relied on by every construction in the crate.

mod circuit;
mod state;

use std::sync::atomic::{AtomicUsize, Ordering};

pub(crate) use circuit::dilation_pairs_to_dense;
pub use circuit::{Control, GateKind, GateOp, UnitaryCircuit};
pub use state::{l2_distance, postselect_zeros, StateVector, UnnormalizedVector};

use crate::{Error, Result};

pub type C64 = num_complex::Complex64;
pub type CMatrix = nalgebra::DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

/// Centralized tolerance ledger.
///
/// `exact_tol` guards constructions that are exact in infinite precision;
/// `approx_tol` is the per-experiment budget for epsilon-bounded claims.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub exact_tol: f64,
    pub approx_tol: f64,
}

impl Tolerance {
    pub fn new(exact_tol: f64, approx_tol: f64) -> Result<Self> {
        if exact_tol <= 0.0 {
            return Err(Error::param("exact_tol", "must be strictly positive"));
        }
        if approx_tol <= 0.0 {
            return Err(Error::param("approx_tol", "must be strictly positive"));
        }
        Ok(Tolerance {
            exact_tol,
            approx_tol,
        })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            exact_tol: EXACT_TOL,
            approx_tol: 1e-6,
        }
    }
}

/// Tolerance for constructions that are exact up to floating-point noise.
pub const EXACT_TOL: f64 = 1e-10;

/// Post-selection probabilities below this are treated as degenerate.
pub const DEGENERATE_PROBABILITY: f64 = 1e-14;

const DEFAULT_MAX_QUBITS: usize = 14;

static MAX_QUBITS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_QUBITS);

/// Current register-size cap (total qubits of any one vector or circuit).
pub fn max_qubits() -> usize {
    MAX_QUBITS.load(Ordering::Relaxed)
}

/// Overrides the register-size cap. The default is 14 qubits.
pub fn set_max_qubits(n: usize) {
    MAX_QUBITS.store(n, Ordering::Relaxed);
}

pub fn check_register(n_qubits: usize) -> Result<()> {
    let limit = max_qubits();
    if n_qubits == 0 {
        return Err(Error::param(
            "n_qubits",
            "register must have at least one qubit",
        ));
    }
    if n_qubits > limit {
        return Err(Error::ResourceLimit {
            requested: n_qubits,
            limit,
        });
    }
    Ok(())
}

/// Bit position of `qubit` inside an `n`-qubit register index.
#[inline]
pub fn bit_position(n_qubits: usize, qubit: usize) -> usize {
    debug_assert!(qubit < n_qubits);
    n_qubits - 1 - qubit
}

/// Completes a unit vector to a unitary whose first column is that vector.
///
/// Deterministic: the remaining columns are the canonical basis vectors in
/// index order, skipping the index where `first` has its largest magnitude
/// (ties resolved toward the lowest index), orthonormalized by modified
/// Gram-Schmidt.
pub fn complete_to_unitary(first: &[C64]) -> CMatrix {
    let dim = first.len();
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    cols.push(first.to_vec());

    let mut skip = 0usize;
    let mut best = 0.0f64;
    for (i, a) in first.iter().enumerate() {
        if a.norm() > best {
            best = a.norm();
            skip = i;
        }
    }
    for i in 0..dim {
        if i == skip {
            continue;
        }
        let mut e = vec![C64::new(0.0, 0.0); dim];
        e[i] = C64::new(1.0, 0.0);
        cols.push(e);
    }

    for j in 1..dim {
        for i in 0..j {
            let proj: C64 = cols[i]
                .iter()
                .zip(cols[j].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            let (head, tail) = cols.split_at_mut(j);
            let ci = &head[i];
            tail[0]
                .iter_mut()
                .zip(ci.iter())
                .for_each(|(b, a)| *b -= proj * a);
        }
        let norm = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|x| *x /= norm);
    }

    CMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Spectral norm (largest singular value) of a dense matrix. Diagonal
/// matrices short-circuit to their largest entry magnitude.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if m.nrows() == m.ncols() {
        let mut diagonal = true;
        'scan: for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if i != j && m[(i, j)].norm_sqr() != 0.0 {
                    diagonal = false;
                    break 'scan;
                }
            }
        }
        if diagonal {
            return (0..m.nrows()).map(|i| m[(i, i)].norm()).fold(0.0, f64::max);
        }
    }
    let sv = m.clone().singular_values();
    sv.iter().cloned().fold(0.0, f64::max)
}

/// Spectral-norm distance `||a - b||_2`.
pub fn spectral_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    spectral_norm(&(a - b))
}

/// Maximum absolute deviation of `m` from its own adjoint.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_positions_are_msb_first() {
        // qubit 0 is the most significant bit of the index
        assert_eq!(bit_position(3, 0), 2);
        assert_eq!(bit_position(3, 2), 0);
    }

    #[test]
    fn tolerance_rejects_non_positive() {
        assert!(Tolerance::new(0.0, 1e-3).is_err());
        assert!(Tolerance::new(1e-10, -1.0).is_err());
        assert!(Tolerance::new(1e-10, 1e-3).is_ok());
    }

    #[test]
    fn spectral_norm_of_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![
            C64::new(0.3, 0.0),
            C64::new(-0.7, 0.0),
        ]));
        assert!((spectral_norm(&m) - 0.7).abs() < 1e-12);
    }
}
