//! Seeded fuzz suites for the supporting lemmas.
//!
//! Each suite returns (trials, violations, worst observed slack), where
//! slack is `lhs - rhs` of the lemma's inequality (negative = satisfied).

use ampforge::blockenc::{
    dilate, normalized_deviation_check, perturbation_bound_check, product, BlockEncoding,
};
use ampforge::linalg::{CMatrix, StateVector, C64};
use ampforge::poly::library::{build_to_tolerance, TargetFn};
use ampforge::poly::{check_h_bound, Polynomial};
use ampforge::sampling::{normal, random_real_amplitudes, rng_for_seed};
use ampforge::Result;
use num_complex::Complex64;
use rand::Rng;

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub violations: usize,
    pub worst_slack: f64,
}

fn record(name: &'static str, results: Vec<f64>) -> SuiteOutcome {
    let trials = results.len();
    let violations = results.iter().filter(|s| **s > 0.0).count();
    let worst_slack = results.iter().cloned().fold(f64::MIN, f64::max);
    SuiteOutcome {
        name,
        trials,
        violations,
        worst_slack,
    }
}

/// (a) `max |h| <= L` for random polynomials with vanishing constant term.
pub fn h_bound_suite(trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = rng_for_seed(seed);
    let mut slacks = Vec::with_capacity(trials);
    for _ in 0..trials {
        let degree = rng.gen_range(1..=12usize);
        let mut coeffs = vec![0.0f64];
        for _ in 0..degree {
            coeffs.push(normal(&mut rng));
        }
        let p = Polynomial::from_real_coeffs(&coeffs);
        let (max_h, lipschitz) = check_h_bound(&p)?;
        slacks.push(max_h - lipschitz - 1e-8);
    }
    Ok(record("h_bound", slacks))
}

/// (b) `N <= L` for functions with f(0) = 0 on seeded states.
pub fn norm_lipschitz_suite(trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = rng_for_seed(seed);
    let targets = [TargetFn::Tanh, TargetFn::Sin, TargetFn::Identity];
    let mut slacks = Vec::with_capacity(trials);
    for t in 0..trials {
        let n = 2 + (t % 4);
        let amps = random_real_amplitudes(1 << n, &mut rng);
        let f = &targets[t % targets.len()];
        let norm = amps
            .iter()
            .map(|a| f.eval(a.re).powi(2))
            .sum::<f64>()
            .sqrt();
        slacks.push(norm - f.lipschitz() - 1e-9);
    }
    Ok(record("norm_bounded_by_lipschitz", slacks))
}

/// (c) normalized-deviation bound on unnormalized pairs.
pub fn normalized_deviation_suite(trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = rng_for_seed(seed);
    let mut slacks = Vec::with_capacity(trials);
    for t in 0..trials {
        let dim = 1usize << (1 + t % 5);
        let scale_a = 0.2 + 3.0 * rng.gen::<f64>();
        let a: Vec<C64> = (0..dim)
            .map(|_| Complex64::new(normal(&mut rng), normal(&mut rng)) * scale_a)
            .collect();
        let noise = 10f64.powf(-4.0 * rng.gen::<f64>());
        let b: Vec<C64> = a
            .iter()
            .map(|x| x + Complex64::new(normal(&mut rng), normal(&mut rng)) * noise)
            .collect();
        let (lhs, rhs) = normalized_deviation_check(&a, &b)?;
        slacks.push(lhs - rhs - 1e-12);
    }
    Ok(record("normalized_deviation", slacks))
}

/// (d) technical lemma i-iii for library approximations under the stated
/// eps_0 conditions.
pub fn technical_suite(trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = rng_for_seed(seed);
    let targets = [
        TargetFn::Tanh,
        TargetFn::Exp,
        TargetFn::Cos,
        TargetFn::Sin,
        TargetFn::Logistic,
        TargetFn::Gaussian { sigma: 1.0 },
    ];
    let mut slacks = Vec::with_capacity(trials * 3);
    for t in 0..trials {
        let n = 2 + (t % 3);
        let n_dim = (1usize << n) as f64;
        let amps = random_real_amplitudes(1 << n, &mut rng);
        let f = &targets[t % targets.len()];
        let gamma = f.gamma();
        let f_norm = amps
            .iter()
            .map(|a| f.eval(a.re).powi(2))
            .sum::<f64>()
            .sqrt();
        // build under the lemma's condition eps0 <= N^2 / (6 gamma N)
        let eps0_req = f_norm * f_norm / (6.5 * gamma * n_dim);
        let cert = build_to_tolerance(f, eps0_req, 400)?;
        let eps0 = cert.sup_error_bound;

        // i.) sup |P| <= 2 gamma whenever eps0 <= gamma
        if eps0 <= gamma {
            let sup_p = cert.poly.sup_norm(cert.domain);
            slacks.push(sup_p - 2.0 * gamma - 1e-9);
        }
        // ii.) |N - N1| <= 3 gamma eps0 N / N
        let poly_norm = amps
            .iter()
            .map(|a| cert.poly.eval_real(a.re).norm_sqr())
            .sum::<f64>()
            .sqrt();
        slacks.push((f_norm - poly_norm).abs() - 3.0 * gamma * eps0 * n_dim / f_norm - 1e-9);
        // iii.) N1 >= N/2 under the condition
        slacks.push(f_norm / 2.0 - poly_norm - 1e-9);
    }
    Ok(record("technical_i_iii", slacks))
}

/// (e) product-of-encodings metadata law on seeded pairs.
pub fn product_law_suite(trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = rng_for_seed(seed);
    let mut slacks = Vec::with_capacity(trials);
    for t in 0..trials {
        let s = 1 + t % 2;
        let dim = 1usize << s;
        let mut diag = |bound: f64| -> CMatrix {
            CMatrix::from_fn(dim, dim, |i, j| {
                if i == j {
                    Complex64::new(bound * (2.0 * rng.gen::<f64>() - 1.0), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        };
        let a_true = diag(0.9);
        let b_true = diag(0.9);
        // claim slightly wrong matrices so the epsilons are exercised
        let eps_a = 1e-4 * rng.gen::<f64>();
        let eps_b = 1e-4 * rng.gen::<f64>();
        let mut a_claim = a_true.clone();
        a_claim[(0, 0)] += Complex64::new(eps_a, 0.0);
        let mut b_claim = b_true.clone();
        b_claim[(0, 0)] += Complex64::new(eps_b, 0.0);

        let be_a = dilate(&a_true)?;
        let be_a =
            BlockEncoding::new(be_a.unitary().clone(), 1.0, 1, eps_a, Some(a_claim.clone()))?;
        let be_b = dilate(&b_true)?;
        let be_b =
            BlockEncoding::new(be_b.unitary().clone(), 1.0, 1, eps_b, Some(b_claim.clone()))?;

        let prod = product(&be_a, &be_b)?;
        let achieved = prod.verify_against(&(a_claim * b_claim))?;
        // lemma: (alpha eps_b + beta eps_a)-encoding of AB
        slacks.push(achieved - (eps_a + eps_b) - 1e-10);
    }
    Ok(record("product_metadata_law", slacks))
}

/// (f) input-perturbation bound `lhs <= 3 gamma L eps0 N / N_psi^2`.
pub fn perturbation_suite(trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = rng_for_seed(seed);
    let targets = [
        TargetFn::Tanh,
        TargetFn::Sin,
        TargetFn::Logistic,
        TargetFn::Identity,
    ];
    let mut slacks = Vec::with_capacity(trials);
    for t in 0..trials {
        let n = 2 + (t % 3);
        let dim = 1usize << n;
        let psi = StateVector::new(n, random_real_amplitudes(dim, &mut rng))?;
        let noise = 10f64.powf(-5.0 + 3.0 * rng.gen::<f64>());
        let perturbed: Vec<C64> = psi
            .amplitudes()
            .iter()
            .map(|a| a + Complex64::new(noise * normal(&mut rng), 0.0))
            .collect();
        let norm = perturbed.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let phi = StateVector::new(n, perturbed.into_iter().map(|x| x / norm).collect())?;
        let f = &targets[t % targets.len()];
        let (lhs, rhs) = perturbation_bound_check(
            &psi,
            &phi,
            &|z: C64| Complex64::new(f.eval(z.re), 0.0),
            f.lipschitz(),
            f.gamma(),
        )?;
        slacks.push(lhs - rhs - 1e-12);
    }
    Ok(record("input_perturbation", slacks))
}

/// Runs all six suites at the acceptance trial counts scaled by `scale`.
pub fn run_all(scale: f64, seed: u64) -> Result<Vec<SuiteOutcome>> {
    let n = |base: usize| ((base as f64 * scale).round() as usize).max(1);
    Ok(vec![
        h_bound_suite(n(500), seed)?,
        norm_lipschitz_suite(n(200), seed.wrapping_add(1))?,
        normalized_deviation_suite(n(1000), seed.wrapping_add(2))?,
        technical_suite(n(500), seed.wrapping_add(3))?,
        product_law_suite(n(100), seed.wrapping_add(4))?,
        perturbation_suite(n(200), seed.wrapping_add(5))?,
        delta_k_suite(n(200), seed.wrapping_add(6))?,
    ])
}

/// (g) `Delta_k <= eps` when the approximation error budget is set by
/// `eps_0 = eps N^2 / (8 gamma N)`.
pub fn delta_k_suite(trials: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut rng = rng_for_seed(seed);
    let targets = [
        TargetFn::Tanh,
        TargetFn::Sin,
        TargetFn::Exp,
        TargetFn::Cos,
        TargetFn::Logistic,
        TargetFn::Gaussian { sigma: 1.0 },
    ];
    let mut slacks = Vec::with_capacity(trials);
    for t in 0..trials {
        let n = 2 + (t % 4);
        let n_dim = (1usize << n) as f64;
        let amps = random_real_amplitudes(1 << n, &mut rng);
        let f = &targets[t % targets.len()];
        let eps = 0.02 + 0.48 * rng.gen::<f64>();
        let f_vals: Vec<f64> = amps.iter().map(|a| f.eval(a.re)).collect();
        let f_norm = f_vals.iter().map(|x| x * x).sum::<f64>().sqrt();
        let eps0 = eps * f_norm * f_norm / (8.0 * f.gamma() * n_dim);
        let cert = build_to_tolerance(f, eps0, 400)?;
        let p_vals: Vec<f64> = amps.iter().map(|a| cert.poly.eval_real(a.re).re).collect();
        let p_norm = p_vals.iter().map(|x| x * x).sum::<f64>().sqrt();
        let delta_k = f_vals
            .iter()
            .zip(&p_vals)
            .map(|(a, b)| (a / f_norm - b / p_norm).powi(2))
            .sum::<f64>()
            .sqrt();
        slacks.push(delta_k - eps);
    }
    Ok(record("delta_k_budget", slacks))
}
