//! Tangent numbers and the tanh Taylor coefficients derived from them.
//!
//! The tanh series coefficients `alpha_n = 2^(2n) (2^(2n) - 1) B_(2n) / (2n)!`
//! are computed as `alpha_n = (-1)^(n-1) T_n / (2n-1)!` where `T_n` are the
//! tangent numbers, generated exactly in integer arithmetic by the triangle
//! recurrence. Evaluating Bernoulli numbers in floating point instead loses
//! the leading digits to cancellation from roughly n = 12 on.

use num_bigint::BigInt;

/// First `count` tangent numbers `T_1, T_2, ...` (1, 2, 16, 272, 7936, ...).
pub fn tangent_numbers(count: usize) -> Vec<BigInt> {
    if count == 0 {
        return Vec::new();
    }
    // Seidel-style triangle: t[k] starts at (k-1)! pattern and is swept in place.
    let mut t: Vec<BigInt> = Vec::with_capacity(count);
    t.push(BigInt::from(1u32));
    for k in 1..count {
        let prev = t[k - 1].clone();
        t.push(prev * BigInt::from(k as u32));
    }
    for k in 1..count {
        for j in k..count {
            let a = t[j - 1].clone() * BigInt::from((j - k) as u64);
            let b = t[j].clone() * BigInt::from((j - k + 2) as u64);
            t[j] = a + b;
        }
    }
    t
}

/// Tanh Taylor coefficients `alpha_1..alpha_k` with
/// `tanh(x) = sum_n alpha_n x^(2n-1)`.
pub fn tanh_series_coefficients(k: usize) -> Vec<f64> {
    let tangents = tangent_numbers(k);
    let mut factorial = BigInt::from(1u32); // (2n-1)! running value
    let mut out = Vec::with_capacity(k);
    for (idx, t) in tangents.iter().enumerate() {
        let n = idx + 1;
        if n > 1 {
            // advance from (2n-3)! to (2n-1)!
            factorial *= BigInt::from((2 * n - 2) as u64) * BigInt::from((2 * n - 1) as u64);
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let num = bigint_to_f64(t);
        let den = bigint_to_f64(&factorial);
        out.push(sign * num / den);
    }
    out
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_bigint::Sign;
    let (sign, digits) = x.to_u64_digits();
    let mut value = 0.0f64;
    for &d in digits.iter().rev() {
        value = value * 18446744073709551616.0 + d as f64;
    }
    if sign == Sign::Minus {
        -value
    } else {
        value
    }
}
