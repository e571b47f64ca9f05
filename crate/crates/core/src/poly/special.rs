//! Scalar special functions: the error function, its inverse, and scaled
//! modified Bessel functions of the first kind.
//!
//! Implemented locally so every consumer in the crate evaluates the exact
//! same double-precision values: erf by Taylor series below |x| <= 1 and a
//! Lentz continued fraction for erfc above, erfinv by Newton refinement of a
//! closed-form seed, and exp(-x) I_j(x) by Miller's downward recurrence
//! normalized with the identity I_0 + 2 * sum_j I_j = exp(x).

use std::f64::consts::PI;

/// Error function, accurate to roughly 1e-15 over the real line.
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x <= 1.0 {
        // Taylor: 2/sqrt(pi) * sum (-1)^n x^(2n+1) / (n! (2n+1))
        let mut term = x;
        let mut sum = 0.0;
        let x2 = x * x;
        for n in 0..60 {
            let contrib = term / (2 * n + 1) as f64;
            sum += contrib;
            if contrib.abs() < 1e-18 * sum.abs().max(1.0) {
                break;
            }
            term *= -x2 / (n + 1) as f64;
        }
        return 2.0 / PI.sqrt() * sum;
    }
    if x >= 6.5 {
        return 1.0;
    }
    1.0 - erfc_cf(x)
}

/// Complementary error function for x > 1 via the Lentz continued fraction
/// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + 1/2/(x + 1/(x + 3/2/(x + ...)))).
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x.max(tiny);
    let mut c = f;
    let mut d = 0.0;
    for k in 1..200 {
        let a = k as f64 / 2.0;
        // continued fraction step with partial numerator a, denominator x (odd
        // steps add to x, even steps recurse); the classic form alternates
        // b_k = x and the numerators k/2.
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / PI.sqrt() / f
}

/// Inverse error function via Newton iterations on [`erf`].
pub fn erfinv(y: f64) -> f64 {
    assert!(y > -1.0 && y < 1.0, "erfinv domain is (-1, 1), got {y}");
    if y == 0.0 {
        return 0.0;
    }
    // Winitzki's closed-form seed, then Newton to machine precision.
    let a = 0.147;
    let ln1m = (1.0 - y * y).ln();
    let t = 2.0 / (PI * a) + ln1m / 2.0;
    let mut x = (y.signum()) * ((t * t - ln1m / a).sqrt() - t).sqrt();
    for _ in 0..6 {
        let e = erf(x) - y;
        let deriv = 2.0 / PI.sqrt() * (-x * x).exp();
        let step = e / deriv;
        x -= step;
        if step.abs() < 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Scaled modified Bessel values `exp(-x) I_j(x)` for `j = 0..=j_max`.
///
/// Miller's algorithm: run the three-term recurrence downward from a start
/// index well above `j_max`, then normalize with
/// `exp(-x) (I_0 + 2 sum_{j>=1} I_j) = 1`. Stable for the large arguments
/// (x = 2 m^2 with m up to ~50) used by the erf mask series.
pub fn scaled_bessel_i(x: f64, j_max: usize) -> Vec<f64> {
    assert!(x > 0.0, "argument must be positive, got {x}");
    let start = j_max + 20 + (4.0 * x.sqrt()) as usize + (x as usize).min(40_000) / 4;
    let mut values = vec![0.0f64; j_max + 1];
    let mut p_up: f64 = 0.0; // p_{start+1}
    let mut p: f64 = 1e-280; // p_start, arbitrary tiny seed
    let mut norm = 0.0f64; // accumulates p_0 + 2 sum_{j>=1} p_j
    for j in (0..=start).rev() {
        let p_down = p_up + (2.0 * (j as f64 + 1.0) / x) * p;
        p_up = p;
        p = p_down;
        if p.abs() > 1e260 {
            // rescale the whole recurrence to avoid overflow
            p /= 1e260;
            p_up /= 1e260;
            norm /= 1e260;
            for v in values.iter_mut() {
                *v /= 1e260;
            }
        }
        if j <= j_max {
            values[j] = p;
        }
        norm += if j == 0 { p } else { 2.0 * p };
    }
    for v in values.iter_mut() {
        *v /= norm;
    }
    values
}
