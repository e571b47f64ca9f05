//! Certified polynomial approximations of the library functions.
//!
//! Every constructor returns a [`CertifiedApproximation`] whose grid-measured
//! sup error is checked against its recorded bound at build time; a
//! construction that cannot meet its own certificate is rejected rather than
//! returned. Series functions (tanh, exp, cos, logistic, Gaussian, sin) carry
//! the analytic tail bounds of their truncations; the erf mask and arcsin
//! pick their degree by measurement against the requested tolerance, since
//! their source bounds fix only the asymptotic order.

use super::special::{erf, scaled_bessel_i};
use super::tangent::tanh_series_coefficients;
use super::{compose, sup_norm_of, ChebyshevForm, Polynomial, DEFAULT_DEGREE_CAP};
use crate::linalg::C64;
use crate::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// The function a certified approximation targets, evaluable exactly for
/// oracle-side comparisons.
#[derive(Debug, Clone)]
pub enum TargetFn {
    Identity,
    Constant(f64),
    Tanh,
    Exp,
    Cos,
    Sin,
    Logistic,
    Gaussian {
        sigma: f64,
    },
    /// `(erf(m (x - tau)) + 1) / 2`.
    ErfShifted {
        m: f64,
        tau: f64,
    },
    /// `x * erfs_{m, tau}(x)`: the importance-style maximum-finding mask.
    XErfShifted {
        m: f64,
        tau: f64,
    },
    Arcsin,
    /// `factor * inner(x)`.
    ScaledOutput {
        inner: Box<TargetFn>,
        factor: f64,
    },
    /// `inner(scale * x)`.
    Scaled {
        inner: Box<TargetFn>,
        scale: f64,
    },
    /// `outer(pre_add + pre_mul * inner(x))`.
    Composed {
        outer: Box<TargetFn>,
        inner: Box<TargetFn>,
        pre_mul: f64,
        pre_add: f64,
    },
    /// `inner(x)` certified only on the stated sub-interval.
    Restricted {
        inner: Box<TargetFn>,
        domain: (f64, f64),
    },
}

impl TargetFn {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            TargetFn::Identity => x,
            TargetFn::Constant(c) => *c,
            TargetFn::Tanh => x.tanh(),
            TargetFn::Exp => x.exp(),
            TargetFn::Cos => x.cos(),
            TargetFn::Sin => x.sin(),
            TargetFn::Logistic => 1.0 / (1.0 + (-2.0 * x).exp()),
            TargetFn::Gaussian { sigma } => {
                (-(x * x) / (2.0 * sigma * sigma)).exp()
                    / (sigma * (2.0 * std::f64::consts::PI).sqrt())
            }
            TargetFn::ErfShifted { m, tau } => 0.5 * (erf(m * (x - tau)) + 1.0),
            TargetFn::XErfShifted { m, tau } => x * 0.5 * (erf(m * (x - tau)) + 1.0),
            TargetFn::Arcsin => x.asin(),
            TargetFn::ScaledOutput { inner, factor } => factor * inner.eval(x),
            TargetFn::Scaled { inner, scale } => inner.eval(scale * x),
            TargetFn::Composed {
                outer,
                inner,
                pre_mul,
                pre_add,
            } => outer.eval(pre_add + pre_mul * inner.eval(x)),
            TargetFn::Restricted { inner, .. } => inner.eval(x),
        }
    }

    /// Interval on which the approximation for this target is certified.
    pub fn natural_domain(&self) -> (f64, f64) {
        match self {
            TargetFn::Arcsin => (-0.85, 0.85),
            TargetFn::ScaledOutput { inner, .. } => inner.natural_domain(),
            TargetFn::Scaled { inner, scale } => {
                let (a, b) = inner.natural_domain();
                (a / scale, b / scale)
            }
            TargetFn::Composed { inner, .. } => inner.natural_domain(),
            TargetFn::Restricted { domain, .. } => *domain,
            _ => (-1.0, 1.0),
        }
    }

    /// Analytic bound on `max |f|` over the natural domain.
    pub fn gamma(&self) -> f64 {
        match self {
            TargetFn::Identity => 1.0,
            TargetFn::Constant(c) => c.abs(),
            TargetFn::Tanh => 1f64.tanh(),
            TargetFn::Exp => std::f64::consts::E,
            TargetFn::Cos => 1.0,
            TargetFn::Sin => 1f64.sin(),
            TargetFn::Logistic => 1.0 / (1.0 + (-2.0f64).exp()),
            TargetFn::Gaussian { sigma } => 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt()),
            TargetFn::ErfShifted { .. } => 1.0,
            TargetFn::XErfShifted { .. } => 1.0,
            TargetFn::Arcsin => 0.85f64.asin(),
            TargetFn::ScaledOutput { inner, factor } => factor.abs() * inner.gamma(),
            TargetFn::Scaled { inner, .. } => inner.gamma(),
            TargetFn::Composed { outer, .. } => outer.gamma(),
            TargetFn::Restricted { inner, .. } => inner.gamma(),
        }
    }

    /// Analytic Lipschitz constant over the natural domain.
    pub fn lipschitz(&self) -> f64 {
        match self {
            TargetFn::Identity => 1.0,
            TargetFn::Constant(_) => 0.0,
            TargetFn::Tanh => 1.0,
            TargetFn::Exp => std::f64::consts::E,
            TargetFn::Cos => 1f64.sin(),
            TargetFn::Sin => 1.0,
            TargetFn::Logistic => 0.5,
            TargetFn::Gaussian { sigma } => {
                // max of |x| f(x) / sigma^2 over [0, 1] sits at min(1, sigma)
                let beta = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
                let x_star = sigma.min(1.0);
                beta * x_star * (-(x_star * x_star) / (2.0 * sigma * sigma)).exp() / (sigma * sigma)
            }
            TargetFn::ErfShifted { m, .. } => m / SQRT_PI,
            TargetFn::XErfShifted { m, .. } => 1.0 + m / SQRT_PI,
            TargetFn::Arcsin => 1.0 / (1.0 - 0.85f64 * 0.85).sqrt(),
            TargetFn::ScaledOutput { inner, factor } => factor.abs() * inner.lipschitz(),
            TargetFn::Scaled { inner, scale } => scale.abs() * inner.lipschitz(),
            TargetFn::Composed {
                outer,
                inner,
                pre_mul,
                ..
            } => outer.lipschitz() * pre_mul.abs() * inner.lipschitz(),
            TargetFn::Restricted { inner, .. } => inner.lipschitz(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            TargetFn::Identity => "identity".into(),
            TargetFn::Constant(c) => format!("constant({c})"),
            TargetFn::Tanh => "tanh".into(),
            TargetFn::Exp => "exp".into(),
            TargetFn::Cos => "cos".into(),
            TargetFn::Sin => "sin".into(),
            TargetFn::Logistic => "logistic".into(),
            TargetFn::Gaussian { sigma } => format!("gaussian(sigma={sigma})"),
            TargetFn::ErfShifted { m, tau } => format!("erfs(m={m:.3},tau={tau:.3})"),
            TargetFn::XErfShifted { m, tau } => format!("x*erfs(m={m:.3},tau={tau:.3})"),
            TargetFn::Arcsin => "arcsin".into(),
            TargetFn::ScaledOutput { inner, factor } => {
                format!("{factor:.4}*{}", inner.name())
            }
            TargetFn::Scaled { inner, scale } => format!("{}(*{scale:.4})", inner.name()),
            TargetFn::Composed { outer, inner, .. } => {
                format!("{}∘{}", outer.name(), inner.name())
            }
            TargetFn::Restricted { inner, domain } => {
                format!("{}|[{:.4},{:.4}]", inner.name(), domain.0, domain.1)
            }
        }
    }
}

/// A polynomial with a certificate: target function, certified interval,
/// analytic error bound, and the grid measurement that validated it.
#[derive(Debug, Clone)]
pub struct CertifiedApproximation {
    pub poly: Polynomial,
    pub target: TargetFn,
    /// Bound the certificate asserts for `sup |f - P|` on the domain.
    pub sup_error_bound: f64,
    /// Grid-measured sup error (always <= `sup_error_bound`).
    pub measured_error: f64,
    pub domain: (f64, f64),
    pub gamma: f64,
    pub lipschitz: f64,
    /// Series terms `k` in the per-function truncation lemmas.
    pub series_terms: usize,
    /// `h` with `P(x) = x h(x)`, when the construction yields it directly
    /// (the mask polynomials are built as `x` times a certified series).
    pub reduced_form: Option<Polynomial>,
}

impl CertifiedApproximation {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// True when both the target and the polynomial vanish at zero, which is
    /// what the importance-weighted engine requires.
    pub fn has_zero_constant(&self) -> bool {
        self.target.eval(0.0).abs() <= 1e-12 && self.poly.constant_term().norm() <= 1e-12
    }
}

fn certify(
    poly: Polynomial,
    target: TargetFn,
    sup_error_bound: f64,
    series_terms: usize,
) -> Result<CertifiedApproximation> {
    let domain = target.natural_domain();
    let measured_error = sup_norm_of(
        &|x| (C64::new(target.eval(x), 0.0) - poly.eval_real(x)).norm(),
        domain,
    );
    if measured_error > sup_error_bound * (1.0 + 1e-9) + 1e-15 {
        return Err(Error::param(
            "approximation",
            format!(
                "measured sup error {measured_error:.3e} exceeds the bound {sup_error_bound:.3e} for {}",
                target.name()
            ),
        ));
    }
    let gamma = target.gamma();
    let lipschitz = target.lipschitz();
    Ok(CertifiedApproximation {
        poly,
        target,
        sup_error_bound,
        measured_error,
        domain,
        gamma,
        lipschitz,
        series_terms,
        reduced_form: None,
    })
}

/// tanh truncated to `k` series terms (degree 2k-1); tail bound `9 (2/pi)^k`.
pub fn approx_tanh(k: usize) -> Result<CertifiedApproximation> {
    if k < 2 {
        return Err(Error::param("k", "the tanh tail bound requires k >= 2"));
    }
    let alphas = tanh_series_coefficients(k);
    let mut coeffs = vec![0.0; 2 * k];
    for (n, alpha) in alphas.iter().enumerate() {
        coeffs[2 * (n + 1) - 1] = *alpha;
    }
    let bound = 9.0 * (2.0 / std::f64::consts::PI).powi(k as i32);
    certify(
        Polynomial::from_real_coeffs(&coeffs),
        TargetFn::Tanh,
        bound,
        k,
    )
}

/// exp truncated to degree `k`; tail bound `2^-k` (valid from k = 2).
pub fn approx_exp(k: usize) -> Result<CertifiedApproximation> {
    if k < 2 {
        return Err(Error::param("k", "the exp tail bound requires k >= 2"));
    }
    let mut coeffs = vec![0.0; k + 1];
    let mut fact = 1.0;
    for (m, c) in coeffs.iter_mut().enumerate() {
        if m > 0 {
            fact *= m as f64;
        }
        *c = 1.0 / fact;
    }
    certify(
        Polynomial::from_real_coeffs(&coeffs),
        TargetFn::Exp,
        2f64.powi(-(k as i32)),
        k,
    )
}

/// cos truncated to `k+1` even terms (degree 2k); tail bound `2^-k`.
pub fn approx_cos(k: usize) -> Result<CertifiedApproximation> {
    let mut coeffs = vec![0.0; 2 * k + 1];
    let mut fact = 1.0;
    for m in 0..=k {
        if m > 0 {
            fact *= (2 * m - 1) as f64 * (2 * m) as f64;
        }
        coeffs[2 * m] = if m % 2 == 0 { 1.0 } else { -1.0 } / fact;
    }
    certify(
        Polynomial::from_real_coeffs(&coeffs),
        TargetFn::Cos,
        2f64.powi(-(k as i32)),
        k,
    )
}

/// sin truncated to `k+1` odd terms (degree 2k+1); tail bound `2^-k`.
pub fn approx_sin(k: usize) -> Result<CertifiedApproximation> {
    let mut coeffs = vec![0.0; 2 * k + 2];
    let mut fact = 1.0;
    for m in 0..=k {
        if m > 0 {
            fact *= (2 * m) as f64 * (2 * m + 1) as f64;
        }
        coeffs[2 * m + 1] = if m % 2 == 0 { 1.0 } else { -1.0 } / fact;
    }
    certify(
        Polynomial::from_real_coeffs(&coeffs),
        TargetFn::Sin,
        2f64.powi(-(k as i32)),
        k,
    )
}

/// Logistic `1/(1 + e^-2x) = (1 + tanh x)/2` truncated to `k` tanh terms;
/// tail bound `5 (2/pi)^k`.
pub fn approx_logistic(k: usize) -> Result<CertifiedApproximation> {
    if k < 2 {
        return Err(Error::param("k", "the logistic tail bound requires k >= 2"));
    }
    let alphas = tanh_series_coefficients(k);
    let mut coeffs = vec![0.0; 2 * k];
    coeffs[0] = 0.5;
    for (n, alpha) in alphas.iter().enumerate() {
        coeffs[2 * (n + 1) - 1] = alpha / 2.0;
    }
    let bound = 5.0 * (2.0 / std::f64::consts::PI).powi(k as i32);
    certify(
        Polynomial::from_real_coeffs(&coeffs),
        TargetFn::Logistic,
        bound,
        k,
    )
}

/// Normalized Gaussian `exp(-x^2/2 sigma^2)/(sigma sqrt(2 pi))` truncated to
/// `k+1` even terms; tail bound `2^-k / pi`, requiring `sigma^2 >= 1/2`.
pub fn approx_gaussian(k: usize, sigma: f64) -> Result<CertifiedApproximation> {
    if sigma * sigma < 0.5 - 1e-12 {
        return Err(Error::param(
            "sigma",
            "the Gaussian tail bound requires sigma^2 >= 1/2",
        ));
    }
    let beta = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
    let alpha = -1.0 / (2.0 * sigma * sigma);
    let mut coeffs = vec![0.0; 2 * k + 1];
    let mut term = beta;
    for m in 0..=k {
        if m > 0 {
            term *= alpha / m as f64;
        }
        coeffs[2 * m] = term;
    }
    certify(
        Polynomial::from_real_coeffs(&coeffs),
        TargetFn::Gaussian { sigma },
        2f64.powi(-(k as i32)) / std::f64::consts::PI,
        k,
    )
}

/// Shifted/scaled error function `erfs_{m,tau}` as a Bessel-Chebyshev series
/// in `(x - tau)/2`, truncated at the smallest degree whose measured sup
/// error on [-1, 1] meets `eps`.
pub fn approx_erf_shifted(
    m: f64,
    tau: f64,
    eps: f64,
    degree_cap: usize,
) -> Result<CertifiedApproximation> {
    if m <= 0.0 {
        return Err(Error::param("m", "scale must be positive"));
    }
    if !(-1.0..=1.0).contains(&tau) {
        return Err(Error::param("tau", "shift must lie in [-1, 1]"));
    }
    if eps <= 0.0 {
        return Err(Error::param("eps", "tolerance must be positive"));
    }
    let target = TargetFn::ErfShifted { m, tau };
    let j_cap = degree_cap.saturating_sub(1) / 2;
    if j_cap == 0 {
        return Err(Error::DegreeOverflow {
            required: 3,
            cap: degree_cap,
        });
    }
    // series argument u = (x - tau)/2 in T_j(u); scaled Bessel coefficients
    // keep exp(-2m^2) from underflowing
    let bessels = scaled_bessel_i(2.0 * m * m, j_cap + 1);
    let front = 2.0 * m / SQRT_PI;
    let build = |j_terms: usize| -> Polynomial {
        let mut coeffs = vec![C64::new(0.0, 0.0); 2 * j_terms + 2];
        coeffs[0] = C64::new(0.5, 0.0);
        coeffs[1] += C64::new(front * bessels[0], 0.0);
        for j in 1..=j_terms {
            let v = front * bessels[j] * if j % 2 == 0 { 1.0 } else { -1.0 };
            coeffs[2 * j + 1] += C64::new(v / (2 * j + 1) as f64, 0.0);
            coeffs[2 * j - 1] -= C64::new(v / (2 * j - 1) as f64, 0.0);
        }
        Polynomial::from_chebyshev((tau - 2.0, tau + 2.0), coeffs).expect("valid domain")
    };
    let measure = |p: &Polynomial| {
        sup_norm_of(
            &|x| (C64::new(target.eval(x), 0.0) - p.eval_real(x)).norm(),
            (-1.0, 1.0),
        )
    };

    if measure(&build(j_cap)) > eps {
        return Err(Error::DegreeOverflow {
            required: 2 * j_cap + 3,
            cap: degree_cap,
        });
    }
    // binary search the smallest truncation meeting eps (error decreases in j
    // past the Bessel bulk), then a linear polish for safety
    let (mut lo, mut hi) = (0usize, j_cap);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if measure(&build(mid)) <= eps {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let mut j = lo;
    while measure(&build(j)) > eps {
        j += 1;
        if j > j_cap {
            return Err(Error::DegreeOverflow {
                required: 2 * j_cap + 3,
                cap: degree_cap,
            });
        }
    }
    certify(build(j), target, eps, j)
}

/// `x * erfs_{m,tau}(x)`: the mask polynomial the maximum finder applies, in
/// reduced form by construction (the factor `x` multiplies a certified erf
/// series).
pub fn approx_x_erf_shifted(
    m: f64,
    tau: f64,
    eps: f64,
    degree_cap: usize,
) -> Result<CertifiedApproximation> {
    let base = approx_erf_shifted(m, tau, eps, degree_cap)?;
    let poly = base.poly.mul_by_x();
    let mut cert = certify(
        poly,
        TargetFn::XErfShifted { m, tau },
        eps,
        base.series_terms,
    )?;
    cert.reduced_form = Some(base.poly);
    Ok(cert)
}

/// arcsin on [-0.85, 0.85] by Chebyshev interpolation, truncated to the
/// smallest degree meeting `eps` on a dense grid.
pub fn approx_arcsin(eps: f64, degree_cap: usize) -> Result<CertifiedApproximation> {
    if eps <= 0.0 {
        return Err(Error::param("eps", "tolerance must be positive"));
    }
    let target = TargetFn::Arcsin;
    let domain = target.natural_domain();
    let fit_degree = degree_cap.min(240);
    let full = super::chebyshev_fit(&|x| C64::new(x.asin(), 0.0), domain, fit_degree + 1);
    let measure = |l: usize| -> Result<(Polynomial, f64)> {
        let p = Polynomial::from_chebyshev(domain, full[..=l].to_vec())?;
        let err = sup_norm_of(
            &|x| (C64::new(target.eval(x), 0.0) - p.eval_real(x)).norm(),
            domain,
        );
        Ok((p, err))
    };
    let (_, best_err) = measure(fit_degree)?;
    if best_err > eps {
        return Err(Error::DegreeOverflow {
            required: fit_degree + 1,
            cap: degree_cap,
        });
    }
    let (mut lo, mut hi) = (1usize, fit_degree);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if measure(mid)?.1 <= eps {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (poly, _) = measure(lo)?;
    certify(poly, target, eps, lo)
}

/// Composition certificate: `outer(pre_add + pre_mul * inner(x))` with bound
/// `eps_outer + L_outer * |pre_mul| * eps_inner` and degree
/// `deg_outer * deg_inner`.
pub fn compose_approx(
    outer: &CertifiedApproximation,
    inner: &CertifiedApproximation,
    pre_mul: f64,
    pre_add: f64,
    degree_cap: usize,
) -> Result<CertifiedApproximation> {
    compose_approx_on(outer, inner, pre_mul, pre_add, inner.domain, degree_cap)
}

/// Composition certified on an explicit sub-interval of the inner domain
/// (the continuous state-preparation pipeline only exercises the sine image
/// of the grid, not the full symmetric arcsin interval).
pub fn compose_approx_on(
    outer: &CertifiedApproximation,
    inner: &CertifiedApproximation,
    pre_mul: f64,
    pre_add: f64,
    domain: (f64, f64),
    degree_cap: usize,
) -> Result<CertifiedApproximation> {
    let (ia, ib) = inner.domain;
    if domain.0 < ia - 1e-12 || domain.1 > ib + 1e-12 {
        return Err(Error::param(
            "domain",
            "composition interval exceeds the inner certificate's domain",
        ));
    }
    // the affine image of the exact inner target over the interval must stay
    // inside the outer certificate's domain (approximation slack may probe
    // marginally outside; the measured validation below covers it)
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let samples = 512;
    for i in 0..=samples {
        let x = domain.0 + (domain.1 - domain.0) * i as f64 / samples as f64;
        let y = pre_add + pre_mul * inner.target.eval(x);
        lo = lo.min(y);
        hi = hi.max(y);
    }
    let (oa, ob) = outer.domain;
    if lo < oa - 1e-9 || hi > ob + 1e-9 {
        return Err(Error::DomainViolation {
            lo,
            hi,
            dom_lo: oa,
            dom_hi: ob,
        });
    }

    let poly = compose(
        &outer.poly,
        &inner.poly,
        pre_mul,
        pre_add,
        domain,
        degree_cap,
    )?;
    let bound = outer.sup_error_bound + outer.lipschitz * pre_mul.abs() * inner.sup_error_bound;
    let composed = TargetFn::Composed {
        outer: Box::new(outer.target.clone()),
        inner: Box::new(inner.target.clone()),
        pre_mul,
        pre_add,
    };
    let target = if (domain.0 - ia).abs() < 1e-15 && (domain.1 - ib).abs() < 1e-15 {
        composed
    } else {
        TargetFn::Restricted {
            inner: Box::new(composed),
            domain,
        }
    };
    let series = outer.series_terms.max(1) * inner.series_terms.max(1);
    certify(poly, target, bound, series)
}

/// Builds the approximation of `target` at tolerance `eps`: series functions
/// take the smallest admissible truncation whose measured error meets `eps`;
/// masks and arcsin defer to their own measured selection; compositions split
/// the budget between the outer error and the Lipschitz-scaled inner error.
pub fn build_to_tolerance(
    target: &TargetFn,
    eps: f64,
    degree_cap: usize,
) -> Result<CertifiedApproximation> {
    if eps <= 0.0 {
        return Err(Error::param("eps", "tolerance must be positive"));
    }
    let search = |k_min: usize,
                  degree_of: &dyn Fn(usize) -> usize,
                  build: &dyn Fn(usize) -> Result<CertifiedApproximation>|
     -> Result<CertifiedApproximation> {
        let mut k = k_min;
        loop {
            if degree_of(k) > degree_cap {
                return Err(Error::DegreeOverflow {
                    required: degree_of(k),
                    cap: degree_cap,
                });
            }
            match build(k) {
                Ok(cert) if cert.measured_error <= eps => {
                    let mut cert = cert;
                    cert.sup_error_bound = cert.sup_error_bound.min(eps);
                    return Ok(cert);
                }
                Ok(_) => {}
                Err(Error::InvalidParameter { .. }) => {}
                Err(e) => return Err(e),
            }
            k += 1;
        }
    };
    match target {
        TargetFn::Identity => certify(
            Polynomial::from_real_coeffs(&[0.0, 1.0]),
            TargetFn::Identity,
            0.0,
            1,
        ),
        TargetFn::Constant(c) => certify(
            Polynomial::from_real_coeffs(&[*c]),
            TargetFn::Constant(*c),
            0.0,
            0,
        ),
        TargetFn::Tanh => search(2, &|k| 2 * k - 1, &approx_tanh),
        TargetFn::Exp => search(2, &|k| k, &approx_exp),
        TargetFn::Cos => search(1, &|k| 2 * k, &approx_cos),
        TargetFn::Sin => search(1, &|k| 2 * k + 1, &approx_sin),
        TargetFn::Logistic => search(2, &|k| 2 * k - 1, &approx_logistic),
        TargetFn::Gaussian { sigma } => {
            let sigma = *sigma;
            search(1, &|k| 2 * k, &move |k| approx_gaussian(k, sigma))
        }
        TargetFn::ErfShifted { m, tau } => approx_erf_shifted(*m, *tau, eps, degree_cap),
        TargetFn::XErfShifted { m, tau } => approx_x_erf_shifted(*m, *tau, eps, degree_cap),
        TargetFn::Arcsin => approx_arcsin(eps, degree_cap),
        TargetFn::ScaledOutput { inner, factor } => {
            let base = build_to_tolerance(inner, eps / factor.abs().max(1e-12), degree_cap)?;
            let poly = base.poly.scale(C64::new(*factor, 0.0));
            certify(
                poly,
                TargetFn::ScaledOutput {
                    inner: inner.clone(),
                    factor: *factor,
                },
                base.sup_error_bound * factor.abs(),
                base.series_terms,
            )
        }
        TargetFn::Scaled { inner, scale } => {
            let base = build_to_tolerance(inner, eps, degree_cap)?;
            let cheb = base
                .poly
                .chebyshev()
                .cloned()
                .unwrap_or_else(|| ChebyshevForm {
                    domain: (-1.0, 1.0),
                    coeffs: super::chebyshev_fit(
                        &|x| base.poly.eval_real(x),
                        (-1.0, 1.0),
                        base.poly.degree() + 1,
                    ),
                });
            let (a, b) = cheb.domain;
            let poly = Polynomial::from_chebyshev((a / scale, b / scale), cheb.coeffs)?;
            certify(
                poly,
                TargetFn::Scaled {
                    inner: inner.clone(),
                    scale: *scale,
                },
                base.sup_error_bound,
                base.series_terms,
            )
        }
        TargetFn::Composed {
            outer,
            inner,
            pre_mul,
            pre_add,
        } => {
            let l_out = outer.lipschitz();
            let eps_out = eps / 2.0;
            let eps_in = eps / (2.0 * (l_out * pre_mul.abs()).max(1e-12));
            let outer_cert = build_to_tolerance(outer, eps_out, degree_cap)?;
            let inner_cert = build_to_tolerance(inner, eps_in, degree_cap)?;
            compose_approx(&outer_cert, &inner_cert, *pre_mul, *pre_add, degree_cap)
        }
        TargetFn::Restricted { inner, domain } => match inner.as_ref() {
            TargetFn::Composed {
                outer,
                inner: comp_inner,
                pre_mul,
                pre_add,
            } => {
                let l_out = outer.lipschitz();
                let eps_out = eps / 2.0;
                let eps_in = eps / (2.0 * (l_out * pre_mul.abs()).max(1e-12));
                let outer_cert = build_to_tolerance(outer, eps_out, degree_cap)?;
                let inner_cert = build_to_tolerance(comp_inner, eps_in, degree_cap)?;
                compose_approx_on(
                    &outer_cert,
                    &inner_cert,
                    *pre_mul,
                    *pre_add,
                    *domain,
                    degree_cap,
                )
            }
            other => {
                let base = build_to_tolerance(other, eps, degree_cap)?;
                certify(
                    base.poly,
                    TargetFn::Restricted {
                        inner: inner.clone(),
                        domain: *domain,
                    },
                    base.sup_error_bound,
                    base.series_terms,
                )
            }
        },
    }
}

/// Convenience handle for the degree cap used when none is specified.
pub fn default_degree_cap() -> usize {
    DEFAULT_DEGREE_CAP
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_coefficients_and_bound() {
        let cert = approx_tanh(10).unwrap();
        // alpha_1 = 1, alpha_2 = -1/3, alpha_3 = 2/15
        let coeffs = cert.poly.monomial_coeffs().unwrap();
        assert!((coeffs[1].re - 1.0).abs() < 1e-14);
        assert!((coeffs[3].re + 1.0 / 3.0).abs() < 1e-14);
        assert!((coeffs[5].re - 2.0 / 15.0).abs() < 1e-14);
        // bound value 9 (2/pi)^10
        assert!((cert.sup_error_bound - 0.09841).abs() < 1e-4);
        assert!(cert.measured_error <= cert.sup_error_bound);
        assert!(cert.measured_error <= 0.09785);
        assert!(cert.has_zero_constant());
    }

    #[test]
    fn tanh_requires_two_terms() {
        assert!(approx_tanh(1).is_err());
        assert!(approx_tanh(2).is_ok());
    }

    #[test]
    fn exp_measured_error_tracks_bound() {
        let cert = approx_exp(20).unwrap();
        assert!(cert.measured_error <= 2f64.powi(-20));
        assert!(!cert.has_zero_constant());
    }

    #[test]
    fn gaussian_bound_and_domain_guard() {
        let cert = approx_gaussian(3, 1.0).unwrap();
        let want_bound = 2f64.powi(-3) / std::f64::consts::PI;
        assert!((cert.sup_error_bound - want_bound).abs() < 1e-15);
        assert!(cert.measured_error <= want_bound);
        assert!(approx_gaussian(3, 0.5).is_err()); // sigma^2 = 0.25 < 1/2
    }

    #[test]
    fn logistic_is_half_at_zero() {
        for k in [2usize, 5, 9] {
            let cert = approx_logistic(k).unwrap();
            assert!((cert.poly.eval_real(0.0).re - 0.5).abs() < 1e-15, "k={k}");
        }
    }

    #[test]
    fn sin_truncation_l_bound() {
        // the derivative of the degree-9 sin truncation stays below 2
        let cert = approx_sin(4).unwrap();
        let deriv_sup = cert.poly.derivative().sup_norm((-1.0, 1.0));
        assert!(deriv_sup <= 2.0);
    }

    #[test]
    fn erf_mask_value_at_tau_is_half() {
        let cert = approx_erf_shifted(4.0, 0.3, 1e-4, 400).unwrap();
        assert!((cert.poly.eval_real(0.3).re - 0.5).abs() < 1e-3);
    }

    #[test]
    fn erf_mask_matches_exact_value() {
        // m=4, tau=0: at x=0.8 the mask is (erf(3.2)+1)/2
        let cert = approx_erf_shifted(4.0, 0.0, 1e-4, 400).unwrap();
        let want = 0.5 * (erf(3.2) + 1.0);
        assert!((cert.poly.eval_real(0.8).re - want).abs() <= 1e-4);
        assert!(cert.measured_error <= 1e-4);
    }

    #[test]
    fn erf_threshold_window() {
        // with m = (sqrt(2)/delta) sqrt(log(2/(pi eps^2))), values outside the
        // delta window sit within eps of {0, 1}
        let delta = 0.2f64;
        let eps = 1e-3f64;
        let m = (2f64).sqrt() / delta * (2.0 / (std::f64::consts::PI * eps * eps)).ln().sqrt();
        let tau = 0.4;
        let cert = approx_erf_shifted(m, tau, 5e-4, 2000).unwrap();
        for x in [-0.9, -0.2, tau - delta / 2.0 - 0.01] {
            let v = cert.poly.eval_real(x).re;
            assert!(v.abs() <= eps + 5e-4, "x={x} v={v}");
        }
        for x in [tau + delta / 2.0 + 0.01, 0.8, 0.99] {
            let v = cert.poly.eval_real(x).re;
            assert!((v - 1.0).abs() <= eps + 5e-4, "x={x} v={v}");
        }
    }

    #[test]
    fn erf_degree_cap_is_enforced() {
        let res = approx_erf_shifted(40.0, 0.0, 1e-6, 40);
        assert!(matches!(res, Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn arcsin_certificate() {
        let cert = approx_arcsin(1e-6, 400).unwrap();
        // odd function: value at 0 vanishes
        assert!(cert.poly.eval_real(0.0).norm() < 1e-9);
        assert!((cert.poly.eval_real(0.5).re - std::f64::consts::PI / 6.0).abs() <= 1e-6);
        assert!(cert.measured_error <= 1e-6);
    }

    #[test]
    fn arcsin_degree_grows_logarithmically() {
        let mut degrees = Vec::new();
        for eps_pow in [2i32, 4, 6, 8] {
            let cert = approx_arcsin(10f64.powi(-eps_pow), 400).unwrap();
            degrees.push((eps_pow as f64, cert.degree() as f64));
        }
        // least-squares slope of degree vs log10(1/eps) should be a modest
        // constant: degrees roughly linear in eps_pow
        let n = degrees.len() as f64;
        let sx: f64 = degrees.iter().map(|d| d.0).sum();
        let sy: f64 = degrees.iter().map(|d| d.1).sum();
        let sxy: f64 = degrees.iter().map(|d| d.0 * d.1).sum();
        let sxx: f64 = degrees.iter().map(|d| d.0 * d.0).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!(slope > 0.5 && slope < 12.0, "slope {slope}");
        // and the fit should be decent: residuals small relative to values
        let intercept = (sy - slope * sx) / n;
        for (x, y) in &degrees {
            let pred = slope * x + intercept;
            assert!(
                (pred - y).abs() <= 0.35 * y.max(4.0),
                "eps10={x} deg={y} pred={pred}"
            );
        }
    }

    #[test]
    fn composition_with_identity_outer() {
        let inner = approx_sin(6).unwrap();
        let outer = build_to_tolerance(&TargetFn::Identity, 1e-12, 400).unwrap();
        let comp = compose_approx(&outer, &inner, 1.0, 0.0, 400).unwrap();
        assert!(comp.measured_error <= inner.sup_error_bound + 1e-12);
        for i in 0..9 {
            let x = -1.0 + 2.0 * i as f64 / 8.0;
            assert!((comp.poly.eval_real(x) - inner.poly.eval_real(x)).norm() < 1e-10);
        }
    }

    #[test]
    fn gaussian_of_arcsin_pipeline() {
        // f((b-a) arcsin(x) + a) with f = gaussian, on the arcsin domain
        let outer = build_to_tolerance(&TargetFn::Gaussian { sigma: 1.0 }, 1e-5, 400).unwrap();
        let inner = approx_arcsin(1e-6, 400).unwrap();
        let comp = compose_approx(&outer, &inner, 2.0 / std::f64::consts::PI, 0.0, 400).unwrap();
        assert!(comp.measured_error <= comp.sup_error_bound);
        // spot value
        let x = 0.4f64;
        let want = TargetFn::Gaussian { sigma: 1.0 }.eval(2.0 / std::f64::consts::PI * x.asin());
        assert!((comp.poly.eval_real(x).re - want).abs() < 1e-4);
    }

    #[test]
    fn composition_domain_violation_detected() {
        // arcsin output scaled far beyond [-1, 1] leaves the gaussian domain
        let outer = build_to_tolerance(&TargetFn::Gaussian { sigma: 1.0 }, 1e-4, 400).unwrap();
        let inner = approx_arcsin(1e-4, 400).unwrap();
        let res = compose_approx(&outer, &inner, 5.0, 0.0, 400);
        assert!(matches!(res, Err(Error::DomainViolation { .. })));
    }

    #[test]
    fn build_to_tolerance_picks_minimal_terms() {
        let loose = build_to_tolerance(&TargetFn::Tanh, 1e-2, 400).unwrap();
        let tight = build_to_tolerance(&TargetFn::Tanh, 1e-8, 400).unwrap();
        assert!(loose.series_terms < tight.series_terms);
        assert!(loose.measured_error <= 1e-2);
        assert!(tight.measured_error <= 1e-8);
    }

    #[test]
    fn tanh_lipschitz_constant_is_one() {
        // sup |d/dx tanh| = max |1 - tanh^2| on [-1, 1]
        let sup = super::super::sup_norm_of(&|x: f64| (1.0 - x.tanh().powi(2)).abs(), (-1.0, 1.0));
        assert!((sup - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn technical_lemma_p_bounded_by_two_gamma() {
        // sup|P| <= 2 gamma whenever the bound eps0 <= gamma
        for (cert, name) in [
            (approx_tanh(3).unwrap(), "tanh"),
            (approx_exp(4).unwrap(), "exp"),
            (approx_cos(2).unwrap(), "cos"),
            (approx_logistic(3).unwrap(), "logistic"),
            (approx_gaussian(2, 1.0).unwrap(), "gaussian"),
            (approx_sin(2).unwrap(), "sin"),
        ] {
            if cert.sup_error_bound <= cert.gamma {
                let sup_p = cert.poly.sup_norm(cert.domain);
                assert!(sup_p <= 2.0 * cert.gamma + 1e-12, "{name}");
            }
        }
    }
}
