//! The Appell integral transform taken with respect to the Wiener process:
//! `G |-> int_0^inf L^{-1}{G}(u) e^{-u y - u^2 t/2} du`, whose action sends
//! the power y^alpha to H_alpha(y, t).
//!
//! Negative powers have a regular inverse Laplace transform and are computed
//! by quadrature. Nonnegative integer powers invert to derivatives of the
//! delta functional and collapse to the Hermite recurrence at u = 0; positive
//! non-integer powers invert to a Caputo derivative of the delta, whose
//! action is carried out in closed form through the parabolic cylinder
//! function rather than by any numerical delta approximation.

use libm::{exp, pow, sqrt, tgamma};

use crate::error::{Error, Result};
use crate::fraccalc::{Decay, KernelFn};
use crate::quad::{linear_breaks, tanh_sinh, QuadratureGrid};
use crate::specfun::{nonneg_int_window, pcf_d_expscaled, SpecFunConfig};
use crate::stochproc::BivariateNormalParams;

/// Classification of the inverse Laplace transform of y^alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AppellKernel {
    /// alpha = -beta < 0: regular kernel u^(beta-1)/Gamma(beta).
    PowerNegative { beta: f64 },
    /// alpha = n >= 0 integer: n-th derivative of the delta functional.
    PowerInteger { n: usize },
    /// alpha > 0 non-integer: Caputo derivative of the delta functional.
    PowerPositiveNonInteger { alpha: f64 },
}

impl AppellKernel {
    pub fn classify(alpha: f64) -> Self {
        if let Some(n) = nonneg_int_window(alpha, 1e-9) {
            AppellKernel::PowerInteger { n }
        } else if alpha < 0.0 {
            AppellKernel::PowerNegative { beta: -alpha }
        } else {
            AppellKernel::PowerPositiveNonInteger { alpha }
        }
    }
}

/// Transform of a regular kernel g:
/// `int_0^inf g(u) e^{-u x - u^2 t / 2} du`.
pub fn appell_wiener_generic(g: &KernelFn, x: f64, t: f64, grid: &QuadratureGrid) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("appell transform requires t > 0"));
    }
    // Truncate where the combined exponent of the kernel's decay bound and
    // the weight has dropped by 170; valid for either sign of x, and the
    // weight's own u^2 term keeps the window finite even for kernels that
    // declare a negligible decay rate.
    let u_max = match g.decay {
        Decay::Gaussian { rate } => {
            let r = rate + 0.5 * t;
            (-x + sqrt(x * x + 680.0 * r)) / (2.0 * r)
        }
        Decay::Exponential { rate } => {
            let c = rate + x;
            (-c + sqrt(c * c + 340.0 * t)) / t
        }
    };
    let integrand = |u: f64| g.eval(u) * exp(-u * x - 0.5 * u * u * t);
    Ok(grid.integrate_panels(&linear_breaks(0.0, u_max, panel_width(u_max)), integrand))
}

fn panel_width(u_max: f64) -> f64 {
    (u_max / 16.0).clamp(0.125, 2.0)
}

/// The transform of y^alpha, dispatched over the three kernel classes.
/// Equal to H_alpha(x, t) in every branch.
pub fn appell_power(alpha: f64, x: f64, t: f64, grid: &QuadratureGrid) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("appell transform requires t > 0"));
    }
    match AppellKernel::classify(alpha) {
        AppellKernel::PowerNegative { beta } => {
            // (1/Gamma(beta)) int_0^inf u^(beta-1) e^{-u x - u^2 t/2} du
            let integrand = |u: f64| pow(u, beta - 1.0) * exp(-u * x - 0.5 * u * u * t);
            let u_max = (-x + sqrt(x * x + 340.0 * t)) / t;
            let head_end = u_max.min(1.0);
            let mut val = tanh_sinh(integrand, 0.0, head_end, 1e-13);
            if u_max > head_end {
                val += grid.integrate_panels(
                    &linear_breaks(head_end, u_max, panel_width(u_max)),
                    integrand,
                );
            }
            Ok(val / tgamma(beta))
        }
        AppellKernel::PowerInteger { n } => {
            // <delta^(n), e^{-ux - u^2 t/2}> = (-1)^n d^n/du^n ... |_{u=0},
            // generated by the recurrence H_{k+1} = x H_k - k t H_{k-1}
            Ok(hermite_by_recurrence(n, x, t))
        }
        AppellKernel::PowerPositiveNonInteger { alpha } => {
            // The m-th u-derivative of the fractional tail integral of the
            // weight collapses, through the derivative rule for
            // e^{-z^2/4} D_a(z), to t^(alpha/2) e^{x^2/4t} D_alpha(x/sqrt(t)).
            let cfg = SpecFunConfig::default();
            let z = x / sqrt(t);
            let scaled = pcf_d_expscaled(alpha, z, &cfg)?;
            let val = pow(t, 0.5 * alpha) * scaled;
            if val.is_finite() {
                Ok(val)
            } else {
                Err(Error::Overflow("appell_power"))
            }
        }
    }
}

/// H_n(x, t) by the three-term recurrence H_{k+1} = x H_k - k t H_{k-1};
/// a second route besides the explicit polynomial sum.
fn hermite_by_recurrence(n: usize, x: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let next = x * cur - k as f64 * t * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Moment generating function of the bivariate normal pair (W_t, W_s):
/// `E[e^{u W_t + v W_s}] = e^{(u^2 t + 2 u v rho sqrt(t s) + v^2 s)/2}`.
pub fn mgf_bivariate(u: f64, v: f64, params: &BivariateNormalParams) -> f64 {
    let (s, t, rho) = (params.s, params.t, params.rho);
    exp(0.5 * (u * u * t + 2.0 * u * v * rho * sqrt(t * s) + v * v * s))
}
