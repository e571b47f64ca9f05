//! Seeded, bit-reproducible random states and state-preparation oracles.
//!
//! All randomness in the crate flows through ChaCha12, a counter-based stream
//! generator: a given 64-bit seed always yields the identical byte stream, on
//! every platform, so every sampled state and oracle is reproducible
//! bit-for-bit. Normal deviates come from a fixed Box-Muller transform over
//! that stream rather than a library sampler, pinning the exact values.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::circuits::StatePrepOracle;
use crate::linalg::{StateVector, UnitaryCircuit, C64};
use crate::Result;

/// The repo-wide seeded generator.
pub fn rng_for_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// A standard-normal deviate via Box-Muller.
pub fn normal(rng: &mut ChaCha12Rng) -> f64 {
    loop {
        let u: f64 = rng.gen::<f64>();
        if u > 0.0 {
            let v: f64 = rng.gen::<f64>();
            return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
        }
    }
}

/// A random l2-normalized real amplitude vector.
pub fn random_real_amplitudes(dim: usize, rng: &mut ChaCha12Rng) -> Vec<C64> {
    let mut v: Vec<f64> = (0..dim).map(|_| normal(rng)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v.into_iter().map(|x| Complex64::new(x, 0.0)).collect()
}

/// A random l2-normalized complex amplitude vector.
pub fn random_complex_amplitudes(dim: usize, rng: &mut ChaCha12Rng) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim)
        .map(|_| Complex64::new(normal(rng), normal(rng)))
        .collect();
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

pub fn random_real_state(n_qubits: usize, seed: u64) -> Result<StateVector> {
    let mut rng = rng_for_seed(seed);
    StateVector::new(n_qubits, random_real_amplitudes(1 << n_qubits, &mut rng))
}

pub fn random_complex_state(n_qubits: usize, seed: u64) -> Result<StateVector> {
    let mut rng = rng_for_seed(seed);
    StateVector::new(n_qubits, random_complex_amplitudes(1 << n_qubits, &mut rng))
}

pub use crate::linalg::complete_to_unitary;

/// A seeded real state-preparation oracle: samples a normal vector,
/// normalizes it, and completes it to an orthogonal matrix whose first column
/// is the state.
pub fn random_real_oracle(n_qubits: usize, seed: u64) -> Result<StatePrepOracle> {
    let mut rng = rng_for_seed(seed);
    let amps = random_real_amplitudes(1 << n_qubits, &mut rng);
    oracle_from_amplitudes(n_qubits, amps, true)
}

/// A seeded complex state-preparation oracle.
pub fn random_complex_oracle(n_qubits: usize, seed: u64) -> Result<StatePrepOracle> {
    let mut rng = rng_for_seed(seed);
    let amps = random_complex_amplitudes(1 << n_qubits, &mut rng);
    oracle_from_amplitudes(n_qubits, amps, false)
}

/// Oracle preparing exactly the given state.
pub fn oracle_for_state(state: &StateVector) -> Result<StatePrepOracle> {
    let real = state.max_imag() <= crate::linalg::EXACT_TOL;
    oracle_from_amplitudes(state.n_qubits(), state.amplitudes().to_vec(), real)
}

fn oracle_from_amplitudes(
    n_qubits: usize,
    amps: Vec<C64>,
    is_real: bool,
) -> Result<StatePrepOracle> {
    let m = complete_to_unitary(&amps);
    let circuit = UnitaryCircuit::from_matrix(n_qubits, m)?;
    StatePrepOracle::new(circuit, is_real)
}
