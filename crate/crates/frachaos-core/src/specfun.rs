//! Scalar special-function kernels: Kummer's 1F1, the parabolic cylinder
//! functions U(a, z) and D_alpha(z) of real order, scaled Hermite polynomials,
//! and gamma/digamma.

use core::f64::consts::{PI, SQRT_2};
use libm::{exp, fabs, floor, log, pow, round, sqrt, tan, tgamma};

use crate::error::{Error, Result};
use crate::quad::{
    linear_breaks, tanh_sinh, GaussLegendre, QuadratureGrid, SQRT_PI_INTERNAL as SQRT_PI,
};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Tuning knobs for the series and asymptotic kernels.
///
/// `asym_switch_z` is the z threshold beyond which the large-z expansion of
/// U(a, z) replaces series evaluation on the positive axis. Between
/// `SERIES_POS_LIMIT` and the switch, where the two-Kummer-series form loses
/// e^{z^2/2} of relative accuracy to cancellation and the asymptotic tail has
/// not yet bottomed out, evaluation goes through the cancellation-free
/// half-line integral representation plus a stable upward order recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunConfig {
    /// Relative tolerance for series termination.
    pub series_tol: f64,
    /// Hard cap on series terms before reporting non-convergence.
    pub max_terms: usize,
    /// z threshold for the asymptotic branch of U(a, z).
    pub asym_switch_z: f64,
    /// Maximum number of asymptotic correction terms.
    pub asym_terms: usize,
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        SpecFunConfig {
            series_tol: 1e-14,
            max_terms: 500,
            asym_switch_z: 8.0,
            asym_terms: 10,
        }
    }
}

/// Positive-z limit for the two-series representation; beyond this the
/// cancellation between the even and odd parts costs more than ~1e-12.
const SERIES_POS_LIMIT: f64 = 4.0;

impl SpecFunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_tol > 0.0) {
            return Err(Error::Domain("series_tol must be positive"));
        }
        if self.max_terms < 10 {
            return Err(Error::Domain("max_terms must be at least 10"));
        }
        if !(self.asym_switch_z > 0.0) {
            return Err(Error::Domain("asym_switch_z must be positive"));
        }
        Ok(())
    }
}

/// Order bookkeeping for the parabolic cylinder functions:
/// `D_alpha(z) = U(a, z)` with `a = -alpha - 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcfOrder {
    pub a: f64,
    pub alpha: f64,
}

impl PcfOrder {
    pub fn from_a(a: f64) -> Self {
        PcfOrder { a, alpha: -a - 0.5 }
    }

    pub fn from_alpha(alpha: f64) -> Self {
        PcfOrder {
            a: -alpha - 0.5,
            alpha,
        }
    }
}

/// Returns Some(n) when x is exactly a non-positive integer -n.
fn nonpos_int(x: f64) -> Option<usize> {
    if x <= 0.0 && x == floor(x) && x > -1e15 {
        Some((-x) as usize)
    } else {
        None
    }
}

/// Returns Some(n) when alpha is within `window` of a nonnegative integer n.
pub(crate) fn nonneg_int_window(alpha: f64, window: f64) -> Option<usize> {
    let r = round(alpha);
    if r >= 0.0 && fabs(alpha - r) < window {
        Some(r as usize)
    } else {
        None
    }
}

/// Gamma function; pole error at non-positive integers.
pub fn gamma(x: f64) -> Result<f64> {
    if nonpos_int(x).is_some() {
        return Err(Error::Pole { arg: x });
    }
    Ok(tgamma(x))
}

/// Reciprocal gamma, entire in x: zero at the poles of gamma.
pub fn recip_gamma(x: f64) -> f64 {
    if nonpos_int(x).is_some() {
        0.0
    } else {
        1.0 / tgamma(x)
    }
}

/// B_{2k}/(2k) for k = 1..8, the asymptotic digamma coefficients.
const DIGAMMA_ASYMP: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Digamma psi(z) = Gamma'(z)/Gamma(z) to better than 1e-12 relative.
///
/// Negative arguments go through the reflection formula, positive ones are
/// lifted by the recurrence psi(z+1) = psi(z) + 1/z until z >= 12 where the
/// eight-term asymptotic series applies.
pub fn digamma(z: f64) -> Result<f64> {
    if nonpos_int(z).is_some() {
        return Err(Error::Pole { arg: z });
    }
    if z < 0.0 {
        return Ok(digamma(1.0 - z)? - PI / tan(PI * z));
    }
    let mut acc = 0.0;
    let mut x = z;
    while x < 12.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut tail = 0.0;
    let mut p = inv2;
    for c in DIGAMMA_ASYMP {
        tail += c * p;
        p *= inv2;
    }
    Ok(acc + log(x) - 0.5 / x - tail)
}

/// Kummer's confluent hypergeometric function 1F1(a; b; z).
///
/// Plain Taylor series with term-ratio stopping; exact termination when a is
/// a non-positive integer. For z < 0 with a > 0 the Kummer transform
/// 1F1(a,b,z) = e^z 1F1(b-a, b, -z) avoids alternating-series cancellation.
pub fn kummer_1f1(a: f64, b: f64, z: f64, cfg: &SpecFunConfig) -> Result<f64> {
    cfg.validate()?;
    let terminates_at = nonpos_int(a);
    if let Some(k) = nonpos_int(b) {
        // (b)_n hits zero at n = k + 1; safe only if the series stops first.
        match terminates_at {
            Some(n) if n <= k => {}
            _ => return Err(Error::Pole { arg: b }),
        }
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z < 0.0 && a > 0.0 {
        return Ok(exp(z) * kummer_series(b - a, b, -z, cfg)?);
    }
    kummer_series(a, b, z, cfg)
}

fn kummer_series(a: f64, b: f64, z: f64, cfg: &SpecFunConfig) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small_streak = 0;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        term *= (a + nf) * z / ((b + nf) * (nf + 1.0));
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if fabs(term) <= cfg.series_tol * fabs(sum) {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence {
        max_terms: cfg.max_terms,
    })
}

/// Scaled Hermite polynomial H_n(x, t) = t^(n/2) He_n(x / sqrt(t)).
///
/// Evaluated as the explicit finite sum over j of
/// (-1)^j n!/(2^j (n-2j)! j!) t^j x^(n-2j), valid for any t >= 0
/// (at t = 0 it collapses to x^n).
pub fn hermite(n: usize, x: f64, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    let mut coef = 1.0;
    let mut sum = ipow(x, n);
    for j in 1..=n / 2 {
        let m = (n - 2 * j) as f64;
        coef *= -(m + 2.0) * (m + 1.0) * t / (2.0 * j as f64);
        sum += coef * ipow(x, n - 2 * j);
    }
    sum
}

fn ipow(x: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    let mut base = x;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// e^{z^2/4} U(-alpha-1/2, z) through the two-Kummer-series representation.
///
/// The reciprocal-gamma coefficients keep the expression finite at every
/// integer order: each gamma pole is cancelled by the cos/sin zero of the
/// trigonometric prefactor, and 1/Gamma realises exactly that limit.
fn bracket_series(alpha: f64, z: f64, cfg: &SpecFunConfig) -> Result<f64> {
    let w = 0.5 * z * z;
    let c_even = recip_gamma(0.5 * (1.0 - alpha));
    let c_odd = recip_gamma(-0.5 * alpha);
    let even = if c_even != 0.0 {
        c_even * kummer_1f1(-0.5 * alpha, 0.5, w, cfg)?
    } else {
        0.0
    };
    let odd = if c_odd != 0.0 && z != 0.0 {
        c_odd * kummer_1f1(0.5 * (1.0 - alpha), 1.5, w, cfg)?
    } else {
        0.0
    };
    Ok(SQRT_PI * pow(2.0, 0.5 * alpha) * (even - SQRT_2 * z * odd))
}

/// e^{z^2/4} U(a, z) from the large-z expansion
/// z^{-a-1/2} sum_s (-1)^s (a+1/2)_{2s} / (s! (2 z^2)^s), valid z > 0.
///
/// Terminates exactly when -a-1/2 is a nonnegative integer; otherwise the
/// partial sums are truncated at the smallest term.
fn scaled_asym_pos(a: f64, z: f64, max_terms: usize) -> f64 {
    let inv = 1.0 / (2.0 * z * z);
    let mut sum = 1.0;
    let mut term = 1.0;
    for s in 0..max_terms {
        let sf = s as f64;
        let next = -term * (a + 0.5 + 2.0 * sf) * (a + 1.5 + 2.0 * sf) * inv / (sf + 1.0);
        if next == 0.0 {
            break;
        }
        if fabs(next) >= fabs(term) && s > 0 {
            break;
        }
        sum += next;
        term = next;
        if fabs(next) <= 1e-17 * fabs(sum) {
            break;
        }
    }
    pow(z, -a - 0.5) * sum
}

/// Dominant component of e^{z^2/4} D_alpha(z) as z -> -inf:
/// sqrt(2 pi)/Gamma(-alpha) e^{z^2/2} |z|^{-alpha-1} F(z), with
/// F = sum_s (alpha+1)_{2s} / (s! (2 z^2)^s). Returns (sign, ln magnitude).
fn scaled_neg_log(alpha: f64, z: f64, max_terms: usize) -> Result<(f64, f64)> {
    let rg = recip_gamma(-alpha);
    if rg == 0.0 {
        return Err(Error::Domain(
            "no growing branch at integer order; use the Hermite form",
        ));
    }
    let inv = 1.0 / (2.0 * z * z);
    let mut f_sum = 1.0;
    let mut term = 1.0;
    for s in 0..max_terms {
        let sf = s as f64;
        let next = term * (alpha + 1.0 + 2.0 * sf) * (alpha + 2.0 + 2.0 * sf) * inv / (sf + 1.0);
        if fabs(next) >= fabs(term) && s > 0 {
            break;
        }
        f_sum += next;
        term = next;
        if fabs(next) <= 1e-17 * fabs(f_sum) {
            break;
        }
    }
    let magnitude =
        0.5 * z * z + log(sqrt(2.0 * PI) * fabs(rg) * fabs(f_sum)) - (alpha + 1.0) * log(fabs(z));
    let sign = if rg * f_sum >= 0.0 { 1.0 } else { -1.0 };
    Ok((sign, magnitude))
}

/// Scaled integral seed: e^{z^2/4} U(-nu-1/2, z) for nu < 0, computed from
/// the half-line integral representation (no cancellation, any z).
fn scaled_integral_seed(nu: f64, z: f64) -> f64 {
    let gamma_par = -nu - 0.5;
    debug_assert!(gamma_par > -0.5);
    let p = gamma_par - 0.5;
    let f = |tau: f64| pow(tau, p) * exp(-0.5 * tau * tau - z * tau);
    let tau_max = if z >= 0.0 {
        -z + sqrt(z * z + 152.0)
    } else {
        -z + sqrt(152.0)
    } + 2.0;
    let head_end = tau_max.min(1.0);
    let mut val = tanh_sinh(f, 0.0, head_end, 1e-13);
    if tau_max > head_end {
        let rule = GaussLegendre::new(32);
        val += rule.integrate_panels(&linear_breaks(head_end, tau_max, 0.75), f);
    }
    val / tgamma(gamma_par + 0.5)
}

/// Middle-region evaluation for non-integer orders: integral seeds at
/// negative order, then the recurrence D_{nu+1}(z) = z D_nu(z) - nu D_{nu-1}(z)
/// (which the e^{z^2/4}-scaled values satisfy as well) stepped upward. The
/// upward direction is stable here: the subtraction loses at most
/// ~nu/z^2 < 1/4 of a digit per step for z above `SERIES_POS_LIMIT`.
fn scaled_via_integral(alpha: f64, z: f64) -> f64 {
    let steps_f = libm::ceil(alpha + 0.5);
    let steps = if steps_f > 0.0 { steps_f as usize } else { 0 };
    let nu0 = alpha - steps as f64;
    let seed = scaled_integral_seed(nu0, z);
    if steps == 0 {
        return seed;
    }
    let mut prev = scaled_integral_seed(nu0 - 1.0, z);
    let mut cur = seed;
    let mut nu = nu0;
    for _ in 0..steps {
        let next = z * cur - nu * prev;
        prev = cur;
        cur = next;
        nu += 1.0;
    }
    cur
}

/// e^{z^2/4} D_alpha(z), the exponential-free core of the parabolic cylinder
/// function. This is the quantity H_alpha(x, t)/t^(alpha/2) at z = x/sqrt(t).
///
/// Accuracy is engineered for moderate orders (roughly |alpha| <= 6, where
/// all branch floors sit at or below ~1e-12 relative); larger orders push
/// both the asymptotic branch and the order recurrence outside their
/// comfortable regimes and may need a custom config.
pub fn pcf_d_expscaled(alpha: f64, z: f64, cfg: &SpecFunConfig) -> Result<f64> {
    cfg.validate()?;
    if z >= cfg.asym_switch_z {
        return Ok(scaled_asym_pos(-alpha - 0.5, z, cfg.asym_terms));
    }
    let exact_int = alpha >= 0.0 && alpha == round(alpha);
    if exact_int {
        return bracket_series(alpha, z, cfg);
    }
    if z > SERIES_POS_LIMIT {
        return Ok(scaled_via_integral(alpha, z));
    }
    if z <= -cfg.asym_switch_z {
        // Dominant-branch expansion; the recessive component is smaller by
        // e^{-z^2/2} and already invisible at the switch.
        let (sign, ln_mag) = scaled_neg_log(alpha, z, cfg.asym_terms.max(48))?;
        if ln_mag > 708.0 {
            return Err(Error::Overflow("pcf_d_expscaled"));
        }
        return Ok(sign * exp(ln_mag));
    }
    bracket_series(alpha, z, cfg)
}

/// Parabolic cylinder function U(a, z) for real order and argument.
pub fn pcf_u(a: f64, z: f64, cfg: &SpecFunConfig) -> Result<f64> {
    let alpha = -a - 0.5;
    let scaled = pcf_d_expscaled(alpha, z, cfg)?;
    let val = scaled * exp(-0.25 * z * z);
    if val.is_finite() {
        Ok(val)
    } else if scaled.is_finite() {
        // e^{-z^2/4} underflowed while the scaled part stayed finite.
        Ok(0.0)
    } else {
        Err(Error::Overflow("pcf_u"))
    }
}

/// Parabolic cylinder function D_alpha(z) = U(-alpha - 1/2, z).
pub fn pcf_d(alpha: f64, z: f64, cfg: &SpecFunConfig) -> Result<f64> {
    pcf_u(PcfOrder::from_alpha(alpha).a, z, cfg)
}

/// (sign, ln magnitude) of e^{z^2/4} D_alpha(z), defined for |z| beyond the
/// floating-point range of the direct evaluation.
pub(crate) fn pcf_d_expscaled_log(alpha: f64, z: f64, cfg: &SpecFunConfig) -> Result<(f64, f64)> {
    if z <= -cfg.asym_switch_z {
        if let Some(n) = nonneg_int_window(alpha, 1e-9) {
            // Polynomial case: |He_n(z)| e^{z^2/4} never overflows its log.
            let h = hermite(n, z, 1.0);
            let sign = if h >= 0.0 { 1.0 } else { -1.0 };
            return Ok((sign, log(fabs(h))));
        }
        return scaled_neg_log(alpha, z, cfg.asym_terms.max(48));
    }
    let v = pcf_d_expscaled(alpha, z, cfg)?;
    let sign = if v >= 0.0 { 1.0 } else { -1.0 };
    Ok((sign, log(fabs(v))))
}

/// U(gamma, z) through its half-line integral representation
/// `e^{-z^2/4}/Gamma(gamma+1/2) int_0^inf tau^(gamma-1/2) e^(-tau^2/2 - z tau) dtau`,
/// valid for gamma > -1/2. Independent of the series/asymptotic evaluation
/// path, which makes it the cross-check oracle for [`pcf_u`].
pub fn pcf_u_integral(gamma_par: f64, z: f64, grid: &QuadratureGrid) -> Result<f64> {
    if !(gamma_par > -0.5) {
        return Err(Error::Domain("pcf_u_integral requires gamma > -1/2"));
    }
    let g = tgamma(gamma_par + 0.5);
    let p = gamma_par - 0.5;
    let f = |tau: f64| pow(tau, p) * exp(-0.5 * tau * tau - z * tau);
    // Integrand peaks at tau* = max(0, -z); carry the integration out to
    // where the exponent has dropped by ~76 relative to the peak.
    let tau_max = if z >= 0.0 {
        -z + sqrt(z * z + 152.0)
    } else {
        -z + sqrt(152.0)
    } + 2.0;
    let head_end = tau_max.min(1.0);
    let mut val = tanh_sinh(f, 0.0, head_end, 1e-13);
    if tau_max > head_end {
        let breaks = linear_breaks(head_end, tau_max, 0.75);
        val += grid.integrate_panels(&breaks, f);
    }
    Ok(val * exp(-0.25 * z * z) / g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const CFG: SpecFunConfig = SpecFunConfig {
        series_tol: 1e-14,
        max_terms: 500,
        asym_switch_z: 8.0,
        asym_terms: 10,
    };

    #[test]
    fn kummer_empty_sum_is_one() {
        assert_eq!(kummer_1f1(3.2, 0.7, 0.0, &CFG).unwrap(), 1.0);
    }

    #[test]
    fn kummer_exponential_identity() {
        // 1F1(1, 1, z) = e^z
        assert_relative_eq!(
            kummer_1f1(1.0, 1.0, 1.0, &CFG).unwrap(),
            core::f64::consts::E,
            max_relative = 1e-14
        );
    }

    #[test]
    fn kummer_terminating_series() {
        // a = -1: 1 - z/b
        assert_relative_eq!(
            kummer_1f1(-1.0, 0.5, 0.3, &CFG).unwrap(),
            0.4,
            max_relative = 1e-15
        );
    }

    #[test]
    fn kummer_pole_in_denominator() {
        assert_eq!(
            kummer_1f1(0.5, -2.0, 1.0, &CFG),
            Err(Error::Pole { arg: -2.0 })
        );
        // terminating numerator protects against the pole: a = -1 stops at n = 1,
        // (b)_1 = -2 is still nonzero
        assert!(kummer_1f1(-1.0, -2.0, 1.0, &CFG).is_ok());
        // but a = -3 would walk through (b)_3 = 0
        assert!(kummer_1f1(-3.0, -2.0, 1.0, &CFG).is_err());
    }

    #[test]
    fn kummer_transform_matches_series_moderate_z() {
        // At mildly negative z both routes are accurate; they must agree.
        let direct = kummer_series(0.8, 1.7, -3.0, &CFG).unwrap();
        let transformed = kummer_1f1(0.8, 1.7, -3.0, &CFG).unwrap();
        assert_relative_eq!(direct, transformed, max_relative = 1e-11);
    }

    #[test]
    fn digamma_reference_points() {
        assert_relative_eq!(digamma(1.0).unwrap(), -EULER_GAMMA, max_relative = 1e-13);
        assert_relative_eq!(
            digamma(2.0).unwrap(),
            1.0 - EULER_GAMMA,
            max_relative = 1e-13
        );
        let ln2 = core::f64::consts::LN_2;
        assert_relative_eq!(
            digamma(0.5).unwrap(),
            -EULER_GAMMA - 2.0 * ln2,
            max_relative = 1e-13
        );
    }

    #[test]
    fn digamma_shift_recurrence() {
        let mut z = 0.1;
        while z < 50.0 {
            let lhs = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z;
            assert!(
                fabs(lhs) <= 1e-12 * (1.0 + fabs(digamma(z).unwrap())),
                "recurrence residual {lhs:e} at z = {z}"
            );
            z += 0.73;
        }
    }

    #[test]
    fn digamma_pole_rejected() {
        assert!(digamma(0.0).is_err());
        assert!(digamma(-3.0).is_err());
        // negative non-integer goes through reflection
        assert!(digamma(-0.25).unwrap().is_finite());
    }

    #[test]
    fn gamma_matches_known_values() {
        assert_relative_eq!(gamma(0.5).unwrap(), SQRT_PI, max_relative = 1e-14);
        assert_relative_eq!(gamma(5.0).unwrap(), 24.0, max_relative = 1e-14);
        assert!(gamma(-2.0).is_err());
    }

    #[test]
    fn hermite_reference_values() {
        assert_eq!(hermite(0, 7.3, 2.1), 1.0);
        // H_2(x, t) = x^2 - t
        assert_relative_eq!(hermite(2, 1.5, 0.25), 2.0, max_relative = 1e-15);
        // H_3(x, 1) = x^3 - 3x at x = 2
        assert_relative_eq!(hermite(3, 2.0, 1.0), 2.0, max_relative = 1e-15);
        // t = 0 collapses to x^n
        assert_eq!(hermite(4, 1.5, 0.0), 1.5f64.powi(4));
    }

    #[test]
    fn pcf_u_gaussian_cases() {
        // alpha = 0: D_0(z) = e^{-z^2/4}, i.e. U(-1/2, z)
        let z = 1.3;
        assert_relative_eq!(
            pcf_u(-0.5, z, &CFG).unwrap(),
            exp(-0.25 * z * z),
            max_relative = 1e-13
        );
        // alpha = 1: D_1(z) = z e^{-z^2/4}, i.e. U(-3/2, z)
        assert_relative_eq!(
            pcf_u(-1.5, 2.0, &CFG).unwrap(),
            2.0 * exp(-1.0),
            max_relative = 1e-13
        );
    }

    #[test]
    fn pcf_d_reference_values() {
        assert_relative_eq!(
            pcf_d(0.0, 2.0, &CFG).unwrap(),
            exp(-1.0),
            max_relative = 1e-13
        );
        assert_eq!(pcf_d(1.0, 0.0, &CFG).unwrap(), 0.0);
        // At z = 0 only the even series term survives:
        // D_alpha(0) = (1/sqrt(pi)) 2^(alpha/2) cos(pi alpha/2) Gamma((alpha+1)/2)
        let alpha = 0.5;
        let expect =
            pow(2.0, 0.5 * alpha) / SQRT_PI * cos_pi_half(alpha) * tgamma(0.5 * (alpha + 1.0));
        assert_relative_eq!(
            pcf_d(alpha, 0.0, &CFG).unwrap(),
            expect,
            max_relative = 1e-13
        );
    }

    fn cos_pi_half(alpha: f64) -> f64 {
        libm::cos(0.5 * PI * alpha)
    }

    #[test]
    fn pcf_u_matches_integral_oracle() {
        let grid = QuadratureGrid::finite_panel(32);
        for gamma_par in [0.0, 0.5, 1.5, 3.0] {
            let mut z = -2.0;
            while z <= 6.0 {
                let by_series = pcf_u(gamma_par, z, &CFG).unwrap();
                let by_integral = pcf_u_integral(gamma_par, z, &grid).unwrap();
                assert!(
                    fabs(by_series - by_integral) <= 1e-9 * (1.0 + fabs(by_series)),
                    "gamma={gamma_par} z={z}: {by_series:e} vs {by_integral:e}"
                );
                z += 0.5;
            }
        }
    }

    #[test]
    fn pcf_u_integral_closed_form_at_zero() {
        // gamma = 1/2, z = 0: integral reduces to int_0^inf e^{-tau^2/2} = sqrt(pi/2)
        let grid = QuadratureGrid::finite_panel(32);
        assert_relative_eq!(
            pcf_u_integral(0.5, 0.0, &grid).unwrap(),
            sqrt(PI / 2.0),
            max_relative = 1e-12
        );
    }

    #[test]
    fn pcf_u_integral_cross_checks_large_z() {
        let grid = QuadratureGrid::finite_panel(32);
        for (gamma_par, z) in [(0.5, 3.0), (1.5, 1.0), (0.5, 10.0)] {
            let a = pcf_u(gamma_par, z, &CFG).unwrap();
            let b = pcf_u_integral(gamma_par, z, &grid).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-10);
        }
    }

    #[test]
    fn pcf_u_integral_domain_error() {
        let grid = QuadratureGrid::finite_panel(32);
        assert!(pcf_u_integral(-0.6, 1.0, &grid).is_err());
    }

    #[test]
    fn branch_continuity_at_the_switch() {
        // Evaluate the same point through both branches: a config whose switch
        // sits below z routes to the asymptotic expansion, one above routes to
        // the integral representation. The stitch must close to 1e-8 relative.
        let z = CFG.asym_switch_z;
        let via_asym = CFG;
        let via_integral = SpecFunConfig {
            asym_switch_z: z + 0.1,
            ..CFG
        };
        for alpha in [-1.3, -0.4, 0.6, 1.7, 3.2] {
            let a = -alpha - 0.5;
            let lo = pcf_u(a, z, &via_integral).unwrap();
            let hi = pcf_u(a, z, &via_asym).unwrap();
            assert!(
                fabs(lo - hi) <= 1e-8 * fabs(lo),
                "alpha={alpha}: {lo:e} vs {hi:e}, rel {:e}",
                fabs(lo - hi) / fabs(lo)
            );
        }
        // And the function itself has no jump across the seam beyond its own
        // local variation (slope of ln U is about -z/2 - (a+1/2)/z).
        for alpha in [-1.3, 0.6, 3.2] {
            let a = -alpha - 0.5;
            let lo = pcf_u(a, z - 1e-6, &CFG).unwrap();
            let hi = pcf_u(a, z + 1e-6, &CFG).unwrap();
            let slope = 0.5 * z + (a + 0.5) / z;
            let allowed = slope * 2e-6 * 1.01 + 1e-8;
            assert!(
                fabs(hi - lo) / fabs(lo) <= allowed,
                "seam jump alpha={alpha}: rel {:e}",
                fabs(hi - lo) / fabs(lo)
            );
        }
    }

    #[test]
    fn integer_orders_terminate_on_both_branches() {
        // He_4(z) e^{-z^2/4} from both sides of the switch against the exact polynomial
        for z in [2.0_f64, 5.0, 6.0, 9.5] {
            let he4 = hermite(4, z, 1.0);
            let d4 = pcf_d(4.0, z, &CFG).unwrap();
            assert_relative_eq!(d4, he4 * exp(-0.25 * z * z), max_relative = 1e-12);
        }
    }

    #[test]
    fn deep_negative_argument_series_vs_expansion() {
        // z = -10 non-integer order: the series terms add constructively, so
        // the two-series form stays accurate and must match the dominant-
        // branch expansion that the default config routes to.
        let wide_series = SpecFunConfig {
            asym_switch_z: 15.0,
            max_terms: 2000,
            ..CFG
        };
        for alpha in [0.7, -1.6, 2.3] {
            let z = -10.0;
            let by_series = pcf_d_expscaled(alpha, z, &wide_series).unwrap();
            let by_expansion = pcf_d_expscaled(alpha, z, &CFG).unwrap();
            assert_relative_eq!(by_series, by_expansion, max_relative = 1e-11);
        }
    }

    #[test]
    fn scaled_log_matches_value_form_in_overlap() {
        for alpha in [0.5_f64, 2.5, -1.3] {
            for z in [6.0_f64, 12.0, 20.0, -8.0, -15.0] {
                let v = pcf_d_expscaled(alpha, z, &CFG).unwrap();
                let (s, l) = pcf_d_expscaled_log(alpha, z, &CFG).unwrap();
                assert_eq!(s, if v >= 0.0 { 1.0 } else { -1.0 }, "alpha={alpha} z={z}");
                assert!(
                    fabs(l - log(fabs(v))) < 2e-5 * (1.0 + fabs(log(fabs(v)))),
                    "alpha={alpha} z={z}: log {l} vs {}",
                    log(fabs(v))
                );
            }
        }
    }
}
