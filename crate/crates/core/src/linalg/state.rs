//! Amplitude vectors over qubit registers.

use super::{bit_position, check_register, C64, DEGENERATE_PROBABILITY, EXACT_TOL};
use crate::{Error, Result};

/// An l2-normalized complex amplitude vector over `n_qubits` qubits.
///
/// The constructor enforces normalization to within `1e-10`; intermediate
/// unnormalized values live in [`UnnormalizedVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(n_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        check_register(n_qubits)?;
        let dim = 1usize << n_qubits;
        if amps.len() != dim {
            return Err(Error::LengthMismatch {
                left: amps.len(),
                right: dim,
            });
        }
        let norm = vec_norm(&amps);
        if (norm - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: EXACT_TOL,
            });
        }
        Ok(StateVector { n_qubits, amps })
    }

    /// The all-zeros computational basis state.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// The computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_register(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::param(
                "index",
                format!("{index} out of range for {dim} amplitudes"),
            ));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn to_unnormalized(&self) -> UnnormalizedVector {
        UnnormalizedVector {
            n_qubits: self.n_qubits,
            amps: self.amps.clone(),
        }
    }

    /// Largest absolute imaginary part over all amplitudes.
    pub fn max_imag(&self) -> f64 {
        self.amps.iter().fold(0.0f64, |m, a| m.max(a.im.abs()))
    }

    pub(crate) fn from_raw_unchecked(n_qubits: usize, amps: Vec<C64>) -> Self {
        StateVector { n_qubits, amps }
    }
}

/// Unnormalized companion of [`StateVector`] for intermediate values
/// (post-selected branches, block actions, perturbed states).
#[derive(Debug, Clone, PartialEq)]
pub struct UnnormalizedVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl UnnormalizedVector {
    pub fn new(n_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        check_register(n_qubits)?;
        let dim = 1usize << n_qubits;
        if amps.len() != dim {
            return Err(Error::LengthMismatch {
                left: amps.len(),
                right: dim,
            });
        }
        Ok(UnnormalizedVector { n_qubits, amps })
    }

    pub fn zeros(n_qubits: usize) -> Result<Self> {
        check_register(n_qubits)?;
        Ok(UnnormalizedVector {
            n_qubits,
            amps: vec![C64::new(0.0, 0.0); 1usize << n_qubits],
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amps)
    }

    /// Renormalizes, returning the state and the norm that was divided out.
    pub fn normalized(&self) -> Result<(StateVector, f64)> {
        let norm = self.norm();
        if norm * norm < DEGENERATE_PROBABILITY {
            return Err(Error::DegeneratePostselection {
                probability: norm * norm,
            });
        }
        let amps = self.amps.iter().map(|a| a / norm).collect();
        Ok((StateVector::from_raw_unchecked(self.n_qubits, amps), norm))
    }
}

fn vec_norm(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Euclidean distance between two amplitude vectors of equal length.
pub fn l2_distance(a: &[C64], b: &[C64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Projects onto the subspace where every qubit in `ancillas` is |0> and drops
/// those qubits.
///
/// Returns the sub-block vector on the remaining qubits together with the
/// success probability (its squared norm). Fails when the probability is
/// degenerate (below `1e-14`).
pub fn postselect_zeros(
    s: &UnnormalizedVector,
    ancillas: &[usize],
) -> Result<(UnnormalizedVector, f64)> {
    let n = s.n_qubits();
    let mut seen = vec![false; n];
    for &q in ancillas {
        if q >= n {
            return Err(Error::InvalidQubit {
                qubit: q,
                n_qubits: n,
            });
        }
        if seen[q] {
            return Err(Error::param("ancillas", format!("qubit {q} listed twice")));
        }
        seen[q] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|q| !seen[*q]).collect();
    if kept.is_empty() {
        return Err(Error::param(
            "ancillas",
            "no qubits left after post-selection",
        ));
    }
    let anc_mask: usize = ancillas.iter().map(|&q| 1usize << bit_position(n, q)).sum();

    let m = kept.len();
    let mut out = vec![C64::new(0.0, 0.0); 1usize << m];
    for (new_idx, slot) in out.iter_mut().enumerate() {
        let mut idx = 0usize;
        for (pos, &q) in kept.iter().enumerate() {
            let bit = (new_idx >> (m - 1 - pos)) & 1;
            idx |= bit << bit_position(n, q);
        }
        debug_assert_eq!(idx & anc_mask, 0);
        *slot = s.amplitudes()[idx];
    }
    let sub = UnnormalizedVector::new(m, out)?;
    let probability = sub.norm().powi(2);
    if probability < DEGENERATE_PROBABILITY {
        return Err(Error::DegeneratePostselection { probability });
    }
    Ok((sub, probability))
}
