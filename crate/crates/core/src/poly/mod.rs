//! Polynomial representation and approximation machinery.
//!
//! [`Polynomial`] carries a monomial coefficient vector, a Chebyshev mirror,
//! or both. Low-degree polynomials keep both representations in sync (they
//! round-trip to 1e-12 up to degree 60); high-degree certified approximations
//! (the erf masks, composed pipelines) live purely in the Chebyshev basis,
//! where expansion and evaluation stay conditioned.

pub mod library;
pub mod special;
pub mod tangent;

use crate::linalg::C64;
use crate::{Error, Result};

/// Degree cap shared by the approximation builders.
pub const DEFAULT_DEGREE_CAP: usize = 400;

/// Highest degree at which monomial/Chebyshev mirrors are kept in sync.
pub const MIRROR_DEGREE_LIMIT: usize = 60;

/// Number of Chebyshev sample nodes used by sup-norm estimation.
pub const SUP_NORM_NODES: usize = 4097;

/// A polynomial in Chebyshev basis relative to a reference interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevForm {
    /// Interval the basis is anchored to (T_j of the affine-mapped variable).
    pub domain: (f64, f64),
    /// Coefficients c_0..c_k of T_0..T_k.
    pub coeffs: Vec<C64>,
}

/// Which representation a polynomial was constructed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Monomial,
    Chebyshev,
}

/// Dual-representation polynomial.
///
/// The primary basis is the one the polynomial was built in; evaluation and
/// coefficient operations always use it. The mirror is derived for low
/// degrees (conversion round-trips to 1e-12 up to degree 60 on ordinary
/// intervals) and serves cross-checks and export only.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    primary: Basis,
    monomial: Option<Vec<C64>>,
    cheb: Option<ChebyshevForm>,
}

impl Polynomial {
    /// From monomial coefficients `c_0 + c_1 x + ...`; trailing zeros trimmed.
    pub fn from_coeffs(mut coeffs: Vec<C64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        let mut p = Polynomial {
            primary: Basis::Monomial,
            monomial: Some(coeffs),
            cheb: None,
        };
        p.refresh_mirror();
        p
    }

    pub fn from_real_coeffs(coeffs: &[f64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::from_coeffs(vec![C64::new(0.0, 0.0)])
    }

    pub fn from_chebyshev(domain: (f64, f64), mut coeffs: Vec<C64>) -> Result<Self> {
        if domain.1 <= domain.0 {
            return Err(Error::param("domain", "empty interval"));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        let mut p = Polynomial {
            primary: Basis::Chebyshev,
            monomial: None,
            cheb: Some(ChebyshevForm { domain, coeffs }),
        };
        p.refresh_mirror();
        Ok(p)
    }

    fn refresh_mirror(&mut self) {
        if self.degree() > MIRROR_DEGREE_LIMIT {
            return;
        }
        match (&self.monomial, &self.cheb) {
            (Some(m), None) => {
                let domain = (-1.0, 1.0);
                let coeffs = monomial_to_chebyshev(m, domain);
                self.cheb = Some(ChebyshevForm { domain, coeffs });
            }
            (None, Some(c)) => {
                self.monomial = Some(chebyshev_to_monomial(&c.coeffs, c.domain));
            }
            _ => {}
        }
    }

    pub fn primary_basis(&self) -> Basis {
        self.primary
    }

    pub fn degree(&self) -> usize {
        match self.primary {
            Basis::Monomial => self.monomial.as_ref().map_or(0, |m| m.len() - 1),
            Basis::Chebyshev => self.cheb.as_ref().map_or(0, |c| c.coeffs.len() - 1),
        }
    }

    pub fn monomial_coeffs(&self) -> Option<&[C64]> {
        self.monomial.as_deref()
    }

    pub fn chebyshev(&self) -> Option<&ChebyshevForm> {
        self.cheb.as_ref()
    }

    /// All coefficients real (within float zero)?
    pub fn is_real(&self) -> bool {
        let check = |v: &[C64]| v.iter().all(|c| c.im == 0.0);
        match self.primary {
            Basis::Monomial => check(self.monomial.as_ref().unwrap()),
            Basis::Chebyshev => check(&self.cheb.as_ref().unwrap().coeffs),
        }
    }

    pub fn eval(&self, x: C64) -> C64 {
        match self.primary {
            Basis::Monomial => horner(self.monomial.as_ref().unwrap(), x),
            Basis::Chebyshev => {
                let c = self.cheb.as_ref().unwrap();
                clenshaw_complex(&c.coeffs, c.domain, x)
            }
        }
    }

    pub fn eval_real(&self, x: f64) -> C64 {
        self.eval(C64::new(x, 0.0))
    }

    /// Evaluates in the Chebyshev mirror when both bases are present
    /// (agreement is a tested invariant).
    pub fn eval_chebyshev(&self, x: f64) -> Option<C64> {
        self.cheb
            .as_ref()
            .map(|c| clenshaw_complex(&c.coeffs, c.domain, C64::new(x, 0.0)))
    }

    /// The value at zero (the constant term in monomial basis).
    pub fn constant_term(&self) -> C64 {
        self.eval(C64::new(0.0, 0.0))
    }

    pub fn scale(&self, factor: C64) -> Polynomial {
        match self.primary {
            Basis::Monomial => Polynomial::from_coeffs(
                self.monomial
                    .as_ref()
                    .unwrap()
                    .iter()
                    .map(|c| c * factor)
                    .collect(),
            ),
            Basis::Chebyshev => {
                let c = self.cheb.as_ref().unwrap();
                Polynomial::from_chebyshev(c.domain, c.coeffs.iter().map(|x| x * factor).collect())
                    .expect("valid domain")
            }
        }
    }

    /// `x * P(x)`.
    pub fn mul_by_x(&self) -> Polynomial {
        if self.primary == Basis::Monomial {
            let m = self.monomial.as_ref().unwrap();
            let mut out = vec![C64::new(0.0, 0.0); m.len() + 1];
            for (i, c) in m.iter().enumerate() {
                out[i + 1] = *c;
            }
            return Polynomial::from_coeffs(out);
        }
        let c = self.cheb.as_ref().unwrap();
        // x = (w u + m) with w = (b-a)/2, m = (a+b)/2 and x T_j =
        // w (T_{j+1} + T_{j-1})/2 + m T_j
        let (a, b) = c.domain;
        let w = (b - a) / 2.0;
        let mid = (a + b) / 2.0;
        let k = c.coeffs.len();
        let mut out = vec![C64::new(0.0, 0.0); k + 1];
        for (j, cj) in c.coeffs.iter().enumerate() {
            out[j] += mid * cj;
            if j == 0 {
                out[1] += w * cj;
            } else {
                out[j + 1] += 0.5 * w * cj;
                out[j - 1] += 0.5 * w * cj;
            }
        }
        Polynomial::from_chebyshev(c.domain, out).expect("valid domain")
    }

    /// The reduced polynomial `h` with `P(x) = x h(x)`; requires a vanishing
    /// constant term.
    pub fn reduce_by_x(&self) -> Result<Polynomial> {
        let c0 = self.constant_term().norm();
        if c0 > 1e-12 {
            return Err(Error::NotDivisibleByX { c0_mag: c0 });
        }
        if let Some(m) = &self.monomial {
            if m.len() == 1 {
                return Ok(Polynomial::zero());
            }
            return Ok(Polynomial::from_coeffs(m[1..].to_vec()));
        }
        let c = self.cheb.as_ref().unwrap();
        let (a, b) = c.domain;
        // With x = w u + m0, matching coefficients of x h = P gives the
        // tridiagonal relations a_j = (w/2) b_{j-1} + m0 b_j + (w/2) b_{j+1}
        // (with the j = 0, 1 boundary forms); back-substitute from the top.
        let w = (b - a) / 2.0;
        let m0 = (a + b) / 2.0;
        let k_deg = c.coeffs.len() - 1;
        if k_deg == 0 {
            return Ok(Polynomial::zero());
        }
        let zero = C64::new(0.0, 0.0);
        let mut h = vec![zero; k_deg];
        for j in (2..=k_deg).rev() {
            let b_j = if j < k_deg { h[j] } else { zero };
            let b_up = if j + 1 < k_deg { h[j + 1] } else { zero };
            h[j - 1] = (c.coeffs[j] - m0 * b_j - 0.5 * w * b_up) * (2.0 / w);
        }
        let b1 = if k_deg >= 2 { h[1] } else { zero };
        let b2 = if k_deg >= 3 { h[2] } else { zero };
        h[0] = (c.coeffs[1] - m0 * b1 - 0.5 * w * b2) / w;
        // residual of the T_0 relation; nonzero means P(0) != 0
        let residual = (c.coeffs[0] - m0 * h[0] - 0.5 * w * b1).norm();
        if residual > 1e-9 {
            return Err(Error::NotDivisibleByX { c0_mag: residual });
        }
        Polynomial::from_chebyshev(c.domain, h)
    }

    pub fn derivative(&self) -> Polynomial {
        if let Some(m) = &self.monomial {
            if m.len() <= 1 {
                return Polynomial::zero();
            }
            let out: Vec<C64> = m
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * C64::new(i as f64, 0.0))
                .collect();
            return Polynomial::from_coeffs(out);
        }
        let c = self.cheb.as_ref().unwrap();
        let k = c.coeffs.len();
        if k <= 1 {
            return Polynomial::zero();
        }
        // standard Chebyshev derivative recurrence, then chain factor 2/(b-a)
        let mut d = vec![C64::new(0.0, 0.0); k];
        for j in (1..k).rev() {
            let upper = if j + 2 < k {
                d[j + 1]
            } else {
                C64::new(0.0, 0.0)
            };
            d[j - 1] = upper + C64::new(2.0 * j as f64, 0.0) * c.coeffs[j];
        }
        d[0] *= 0.5;
        d.truncate(k - 1);
        let factor = 2.0 / (c.domain.1 - c.domain.0);
        Polynomial::from_chebyshev(c.domain, d.iter().map(|x| x * factor).collect())
            .expect("valid domain")
    }

    /// Reference interval for sup-norm measurements: the Chebyshev anchor
    /// when present, else [-1, 1].
    pub fn natural_domain(&self) -> (f64, f64) {
        self.cheb.as_ref().map(|c| c.domain).unwrap_or((-1.0, 1.0))
    }

    /// Sup norm of |P| over an interval (grid + golden-section refinement).
    pub fn sup_norm(&self, interval: (f64, f64)) -> f64 {
        sup_norm_of(&|x| self.eval_real(x).norm(), interval)
    }
}

fn horner(coeffs: &[C64], x: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Clenshaw evaluation of a Chebyshev series at a (complex) point, with the
/// affine map from `domain` to [-1, 1] applied first.
pub fn clenshaw_complex(coeffs: &[C64], domain: (f64, f64), x: C64) -> C64 {
    let (a, b) = domain;
    let u = (x * 2.0 - C64::new(a + b, 0.0)) / (b - a);
    let mut b1 = C64::new(0.0, 0.0);
    let mut b2 = C64::new(0.0, 0.0);
    for c in coeffs.iter().skip(1).rev() {
        let tmp = b1;
        b1 = u * 2.0 * b1 - b2 + c;
        b2 = tmp;
    }
    u * b1 - b2 + coeffs[0]
}

/// Chebyshev interpolation coefficients of `f` at `m` Chebyshev-Gauss nodes
/// on `domain`, exact (up to conditioning) for polynomials of degree < m.
pub fn chebyshev_fit(f: &dyn Fn(f64) -> C64, domain: (f64, f64), m: usize) -> Vec<C64> {
    let (a, b) = domain;
    let values: Vec<C64> = (0..m)
        .map(|i| {
            let u = (std::f64::consts::PI * (i as f64 + 0.5) / m as f64).cos();
            let x = 0.5 * (a + b) + 0.5 * (b - a) * u;
            f(x)
        })
        .collect();
    (0..m)
        .map(|j| {
            let mut acc = C64::new(0.0, 0.0);
            for (i, v) in values.iter().enumerate() {
                let w = (std::f64::consts::PI * j as f64 * (i as f64 + 0.5) / m as f64).cos();
                acc += v * w;
            }
            acc * (if j == 0 { 1.0 } else { 2.0 } / m as f64)
        })
        .collect()
}

fn monomial_to_chebyshev(coeffs: &[C64], domain: (f64, f64)) -> Vec<C64> {
    let m = coeffs.len();
    chebyshev_fit(&|x| horner(coeffs, C64::new(x, 0.0)), domain, m)
}

fn chebyshev_to_monomial(coeffs: &[C64], domain: (f64, f64)) -> Vec<C64> {
    // T_j(u(x)) with u(x) = alpha x + beta expanded by the recurrence
    let (a, b) = domain;
    let alpha = 2.0 / (b - a);
    let beta = -(a + b) / (b - a);
    let k = coeffs.len();
    let mut out = vec![C64::new(0.0, 0.0); k];
    let mut t_prev = vec![C64::new(1.0, 0.0)]; // T_0
    let mut t_cur = vec![C64::new(beta, 0.0), C64::new(alpha, 0.0)]; // T_1 = u(x)
    for (j, c) in coeffs.iter().enumerate() {
        let t_j: &[C64] = if j == 0 {
            &t_prev
        } else if j == 1 {
            &t_cur
        } else {
            // T_{j} = 2 u T_{j-1} - T_{j-2}
            let mut next = vec![C64::new(0.0, 0.0); t_cur.len() + 1];
            for (i, v) in t_cur.iter().enumerate() {
                next[i] += 2.0 * beta * v;
                next[i + 1] += 2.0 * alpha * v;
            }
            for (i, v) in t_prev.iter().enumerate() {
                next[i] -= v;
            }
            t_prev = std::mem::take(&mut t_cur);
            t_cur = next;
            &t_cur
        };
        for (i, v) in t_j.iter().enumerate() {
            out[i] += c * v;
        }
    }
    out
}

/// Sup norm of an arbitrary scalar function over an interval: 4097 Chebyshev
/// nodes, then golden-section refinement around the five best candidates.
/// Resolves polynomials up to the degree cap well below 1e-8.
pub fn sup_norm_of(f: &dyn Fn(f64) -> f64, interval: (f64, f64)) -> f64 {
    let (a, b) = interval;
    assert!(b > a, "empty interval");
    let m = SUP_NORM_NODES;
    let xs: Vec<f64> = (0..m)
        .map(|i| {
            let u = (std::f64::consts::PI * i as f64 / (m - 1) as f64).cos();
            0.5 * (a + b) + 0.5 * (b - a) * u
        })
        .collect();
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    // top candidates by value; each refined within its bracketing neighbors
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
    let mut best = 0.0f64;
    for &idx in order.iter().take(5) {
        best = best.max(vals[idx]);
        let lo = if idx + 1 < m { xs[idx + 1] } else { xs[idx] };
        let hi = if idx > 0 { xs[idx - 1] } else { xs[idx] };
        if hi > lo {
            best = best.max(golden_section_max(f, lo, hi));
        }
    }
    best
}

fn golden_section_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..90 {
        if (b - a).abs() < 1e-14 {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}

/// `L = k ||c||_1`, a valid Lipschitz constant for a degree-k polynomial with
/// vanishing constant term, straight from the monomial coefficients.
pub fn lipschitz_from_coeffs(p: &Polynomial) -> Result<f64> {
    let coeffs = p
        .monomial_coeffs()
        .ok_or_else(|| Error::param("polynomial", "monomial coefficients required"))?;
    if coeffs[0].norm() > 1e-12 {
        return Err(Error::NotDivisibleByX {
            c0_mag: coeffs[0].norm(),
        });
    }
    let k = p.degree() as f64;
    Ok(k * coeffs.iter().map(|c| c.norm()).sum::<f64>())
}

/// Measured `max |h|` for `h = P/x` together with the Lipschitz bound
/// `L = sup |P'|`; the h-bound lemma asserts `max |h| <= L`.
pub fn check_h_bound(p: &Polynomial) -> Result<(f64, f64)> {
    let domain = p.natural_domain();
    let h = p.reduce_by_x()?;
    let max_h = h.sup_norm(domain);
    let lipschitz = p.derivative().sup_norm(domain);
    Ok((max_h, lipschitz))
}

/// Coefficient export record (`basis` is "monomial" or "chebyshev").
#[derive(Debug, Clone, serde::Serialize)]
pub struct CoefficientExport {
    pub basis: &'static str,
    pub domain: (f64, f64),
    pub coefficients_re: Vec<f64>,
    pub coefficients_im: Vec<f64>,
}

impl Polynomial {
    /// JSON-ready coefficient export with a basis tag.
    pub fn export(&self) -> CoefficientExport {
        if let Some(m) = &self.monomial {
            CoefficientExport {
                basis: "monomial",
                domain: (-1.0, 1.0),
                coefficients_re: m.iter().map(|c| c.re).collect(),
                coefficients_im: m.iter().map(|c| c.im).collect(),
            }
        } else {
            let c = self.cheb.as_ref().unwrap();
            CoefficientExport {
                basis: "chebyshev",
                domain: c.domain,
                coefficients_re: c.coeffs.iter().map(|x| x.re).collect(),
                coefficients_im: c.coeffs.iter().map(|x| x.im).collect(),
            }
        }
    }
}

/// Exact polynomial composition `outer(pre_add + pre_mul * inner(x))` by
/// Chebyshev interpolation at (deg_outer * deg_inner + 1) nodes, anchored on
/// the given interval.
pub fn compose(
    outer: &Polynomial,
    inner: &Polynomial,
    pre_mul: f64,
    pre_add: f64,
    domain: (f64, f64),
    degree_cap: usize,
) -> Result<Polynomial> {
    let target_degree = outer.degree() * inner.degree();
    if target_degree > degree_cap {
        return Err(Error::DegreeOverflow {
            required: target_degree,
            cap: degree_cap,
        });
    }
    let f = |x: f64| {
        let y = inner.eval_real(x) * pre_mul + C64::new(pre_add, 0.0);
        outer.eval(y)
    };
    let coeffs = chebyshev_fit(&f, domain, target_degree + 1);
    Polynomial::from_chebyshev(domain, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn eval_monomial_basics() {
        let p = Polynomial::from_real_coeffs(&[0.0, 0.0, 1.0]); // x^2
        assert!((p.eval_real(0.5).re - 0.25).abs() < 1e-15);
        let z = Polynomial::zero();
        assert_eq!(z.eval_real(123.0), C64::new(0.0, 0.0));
    }

    #[test]
    fn chebyshev_t3_identity() {
        // T_3 evaluated at cos(theta) equals cos(3 theta)
        let p =
            Polynomial::from_chebyshev((-1.0, 1.0), vec![c(0.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        let theta: f64 = 0.3;
        let got = p.eval_real(theta.cos()).re;
        assert!((got - (3.0 * theta).cos()).abs() < 1e-14);
    }

    #[test]
    fn bases_agree_after_conversion() {
        let p = Polynomial::from_real_coeffs(&[0.3, -1.2, 0.0, 2.5, -0.7]);
        for i in 0..20 {
            let x = -1.0 + 2.0 * i as f64 / 19.0;
            let a = p.eval_real(x);
            let b = p.eval_chebyshev(x).unwrap();
            assert!((a - b).norm() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn roundtrip_degree_sixty() {
        // alternating-sign coefficients up to degree 60 survive the mirror
        let coeffs: Vec<C64> = (0..=60)
            .map(|i| c(if i % 2 == 0 { 1.0 } else { -1.0 } / (1.0 + i as f64)))
            .collect();
        let p = Polynomial::from_coeffs(coeffs);
        for i in 0..40 {
            let x = -1.0 + 2.0 * i as f64 / 39.0;
            let a = p.eval_real(x);
            let b = p.eval_chebyshev(x).unwrap();
            assert!((a - b).norm() < 1e-12, "x={x} diff={}", (a - b).norm());
        }
    }

    #[test]
    fn reduce_by_x_shifts_coefficients() {
        // P = 3x^3 - x -> h = 3x^2 - 1
        let p = Polynomial::from_real_coeffs(&[0.0, -1.0, 0.0, 3.0]);
        let h = p.reduce_by_x().unwrap();
        assert_eq!(h.monomial_coeffs().unwrap().len(), 3);
        assert!((h.eval_real(1.0).re - 2.0).abs() < 1e-14);
        assert!((h.eval_real(0.0).re + 1.0).abs() < 1e-14);

        // P = x -> h = 1
        let p = Polynomial::from_real_coeffs(&[0.0, 1.0]);
        let h = p.reduce_by_x().unwrap();
        assert!((h.eval_real(0.3).re - 1.0).abs() < 1e-15);

        // non-zero constant term rejected
        let p = Polynomial::from_real_coeffs(&[0.5, 1.0]);
        assert!(matches!(
            p.reduce_by_x(),
            Err(Error::NotDivisibleByX { .. })
        ));
    }

    #[test]
    fn reduce_by_x_in_chebyshev_basis() {
        // odd Chebyshev series on a symmetric domain divides exactly
        let p = Polynomial::from_chebyshev(
            (-2.0, 2.0),
            vec![c(0.0), c(0.7), c(0.0), c(-0.3), c(0.0), c(0.1)],
        )
        .unwrap();
        let h = p.reduce_by_x().unwrap();
        for i in 0..25 {
            let x = -2.0 + 4.0 * i as f64 / 24.0;
            if x.abs() < 1e-3 {
                continue;
            }
            let want = p.eval_real(x).re / x;
            let got = h.eval_real(x).re;
            assert!((want - got).abs() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn mul_by_x_inverts_reduce() {
        let p = Polynomial::from_real_coeffs(&[0.0, 0.4, -0.2, 0.0, 0.05]);
        let h = p.reduce_by_x().unwrap();
        let back = h.mul_by_x();
        for i in 0..15 {
            let x = -1.0 + 2.0 * i as f64 / 14.0;
            assert!((back.eval_real(x) - p.eval_real(x)).norm() < 1e-13);
        }
    }

    #[test]
    fn lipschitz_from_coeffs_formula() {
        // P = 3x^3 - x: L = 3 * (3 + 1) = 12
        let p = Polynomial::from_real_coeffs(&[0.0, -1.0, 0.0, 3.0]);
        assert!((lipschitz_from_coeffs(&p).unwrap() - 12.0).abs() < 1e-12);
        // P = x: L = 1
        let p = Polynomial::from_real_coeffs(&[0.0, 1.0]);
        assert!((lipschitz_from_coeffs(&p).unwrap() - 1.0).abs() < 1e-12);
        // h-bound corollary: max|h| <= ||c||_1 = L/k = 4
        let p = Polynomial::from_real_coeffs(&[0.0, -1.0, 0.0, 3.0]);
        let h = p.reduce_by_x().unwrap();
        assert!(h.sup_norm((-1.0, 1.0)) <= 4.0 + 1e-10);
    }

    #[test]
    fn sup_norm_reference_values() {
        // |x| on [-1,1]
        assert!((sup_norm_of(&|x: f64| x.abs(), (-1.0, 1.0)) - 1.0).abs() < 1e-10);
        // tanh attains its max at the right endpoint
        let got = sup_norm_of(&|x: f64| x.tanh().abs(), (-1.0, 1.0));
        assert!((got - 1f64.tanh()).abs() < 1e-10);
        // 3x^2 - 1 peaks at the endpoints with value 2
        let p = Polynomial::from_real_coeffs(&[-1.0, 0.0, 3.0]);
        assert!((p.sup_norm((-1.0, 1.0)) - 2.0).abs() < 1e-10);
        // interior maximum: sin peaks at pi/2 inside [0, 3]
        let got = sup_norm_of(&|x: f64| x.sin(), (0.0, 3.0));
        assert!((got - 1.0).abs() < 1e-10);
    }

    #[test]
    fn h_bound_examples() {
        // P = x^2: h = x, max|h| = 1, L = 2
        let p = Polynomial::from_real_coeffs(&[0.0, 0.0, 1.0]);
        let (max_h, lipschitz) = check_h_bound(&p).unwrap();
        assert!((max_h - 1.0).abs() < 1e-9);
        assert!((lipschitz - 2.0).abs() < 1e-9);
        assert!(max_h <= lipschitz + 1e-8);
    }

    #[test]
    fn derivative_in_both_bases() {
        let p = Polynomial::from_real_coeffs(&[1.0, -2.0, 0.5, 4.0]);
        let d = p.derivative();
        // a Chebyshev-built copy takes the recurrence path
        let cheb_only =
            Polynomial::from_chebyshev((-1.0, 1.0), p.chebyshev().unwrap().coeffs.clone()).unwrap();
        let d2 = cheb_only.derivative();
        for i in 0..15 {
            let x = -1.0 + 2.0 * i as f64 / 14.0;
            assert!((d.eval_real(x) - d2.eval_real(x)).norm() < 1e-11, "x={x}");
        }
    }

    #[test]
    fn compose_quadratic_in_cubic() {
        let outer = Polynomial::from_real_coeffs(&[1.0, 0.0, 2.0]); // 1 + 2y^2
        let inner = Polynomial::from_real_coeffs(&[0.0, 1.0, 1.0]); // x + x^2
        let comp = compose(&outer, &inner, 1.0, 0.0, (-1.0, 1.0), 100).unwrap();
        assert_eq!(comp.degree(), 4);
        for i in 0..15 {
            let x = -1.0 + 2.0 * i as f64 / 14.0;
            let y = x + x * x;
            let want = 1.0 + 2.0 * y * y;
            assert!((comp.eval_real(x).re - want).abs() < 1e-11, "x={x}");
        }
        // cap enforcement
        assert!(matches!(
            compose(&outer, &inner, 1.0, 0.0, (-1.0, 1.0), 3),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn prop_reduce_then_mul_roundtrips(
                coeffs in proptest::collection::vec(-1.0f64..1.0, 1..10)
            ) {
                let mut full = vec![0.0];
                full.extend(coeffs);
                let p = Polynomial::from_real_coeffs(&full);
                let h = p.reduce_by_x().unwrap();
                let back = h.mul_by_x();
                for i in 0..9 {
                    let x = -1.0 + 2.0 * i as f64 / 8.0;
                    prop_assert!((back.eval_real(x) - p.eval_real(x)).norm() < 1e-12);
                }
            }

            #[test]
            fn prop_bases_agree(
                coeffs in proptest::collection::vec(-2.0f64..2.0, 1..25)
            ) {
                let p = Polynomial::from_real_coeffs(&coeffs);
                for i in 0..9 {
                    let x = -1.0 + 2.0 * i as f64 / 8.0;
                    let a = p.eval_real(x);
                    let b = p.eval_chebyshev(x).unwrap();
                    prop_assert!((a - b).norm() < 1e-11);
                }
            }
        }
    }
}
