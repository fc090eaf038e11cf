//! The scaled parabolic cylinder function
//! `H_alpha(x, t) = t^(alpha/2) e^(x^2/4t) D_alpha(x/sqrt(t))`:
//! evaluation, derivative recurrences, heat-equation and ODE residuals, and
//! the fractional-derivative representation cross-check.
//!
//! `H_n(x, t)` coincides with the scaled Hermite polynomial for nonnegative
//! integer n, and `H_alpha(x, t) -> x^alpha` as t -> 0 for x > 0.

use alloc::boxed::Box;
use libm::{exp, fabs, log, pow, sqrt};

use crate::error::{Error, Result};
use crate::fraccalc::{self, FracOrder, KernelFn};
use crate::quad::QuadratureGrid;
use crate::specfun::{
    hermite, nonneg_int_window, pcf_d, pcf_d_expscaled, pcf_d_expscaled_log, SpecFunConfig,
};

/// Orders within this window of a nonnegative integer dispatch to the exact
/// Hermite-polynomial branch.
pub const INTEGER_WINDOW: f64 = 1e-9;

/// One member of the function family: an order alpha at a fixed time t > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PncfSpec {
    pub alpha: f64,
    pub t: f64,
}

impl PncfSpec {
    pub fn new(alpha: f64, t: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain("alpha must be finite"));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain("t must be positive and finite"));
        }
        Ok(PncfSpec { alpha, t })
    }
}

/// Evaluate H_alpha(x, t).
///
/// Nonnegative integer orders (within [`INTEGER_WINDOW`]) go through the
/// exact polynomial; everything else pairs the e^{x^2/4t} prefactor with the
/// e^{-z^2/4} inside D_alpha, so only the final magnitude can overflow.
pub fn eval_h(spec: &PncfSpec, x: f64) -> Result<f64> {
    if let Some(n) = nonneg_int_window(spec.alpha, INTEGER_WINDOW) {
        return Ok(hermite(n, x, spec.t));
    }
    eval_h_via_pcf(spec, x)
}

/// Evaluate H through the parabolic-cylinder path even at integer orders.
/// Used to cross-check the polynomial branch against the 1F1/asymptotic one.
pub fn eval_h_via_pcf(spec: &PncfSpec, x: f64) -> Result<f64> {
    let cfg = SpecFunConfig::default();
    let z = x / sqrt(spec.t);
    let scaled = pcf_d_expscaled(spec.alpha, z, &cfg)?;
    let val = pow(spec.t, 0.5 * spec.alpha) * scaled;
    if val.is_finite() {
        Ok(val)
    } else {
        Err(Error::Overflow("eval_h"))
    }
}

/// Log-scaled evaluation: returns (sign, ln |H_alpha(x, t)|).
///
/// Defined well beyond the direct floating-point range; the only genuine
/// growth is the e^{x^2/2t} branch at very negative x for non-integer order.
pub fn eval_h_log(spec: &PncfSpec, x: f64) -> Result<(f64, f64)> {
    let cfg = SpecFunConfig::default();
    if let Some(n) = nonneg_int_window(spec.alpha, INTEGER_WINDOW) {
        let v = hermite(n, x, spec.t);
        let sign = if v >= 0.0 { 1.0 } else { -1.0 };
        return Ok((sign, log(fabs(v))));
    }
    let z = x / sqrt(spec.t);
    let (sign, ln_scaled) = pcf_d_expscaled_log(spec.alpha, z, &cfg)?;
    Ok((sign, 0.5 * spec.alpha * log(spec.t) + ln_scaled))
}

/// The t -> 0 limit of H_alpha(x, t): x^alpha for x > 0, 0 at x = 0 when
/// alpha > 0, and the plain power x^n at integer orders.
pub fn eval_h_limit0(alpha: f64, x: f64) -> Result<f64> {
    if let Some(n) = nonneg_int_window(alpha, INTEGER_WINDOW) {
        return Ok(hermite(n, x, 0.0));
    }
    if x > 0.0 {
        Ok(pow(x, alpha))
    } else if x == 0.0 && alpha > 0.0 {
        Ok(0.0)
    } else {
        Err(Error::Domain(
            "H_alpha(x, 0) undefined for x < 0 (or x = 0 with alpha <= 0) at non-integer order",
        ))
    }
}

/// First derivatives: d/dx H_alpha = alpha H_{alpha-1} and
/// d/dt H_alpha = -alpha(alpha-1)/2 H_{alpha-2}.
pub fn derivatives_h(spec: &PncfSpec, x: f64) -> Result<(f64, f64)> {
    let d_dx = if spec.alpha == 0.0 {
        0.0
    } else {
        spec.alpha
            * eval_h(
                &PncfSpec {
                    alpha: spec.alpha - 1.0,
                    ..*spec
                },
                x,
            )?
    };
    let c = -0.5 * spec.alpha * (spec.alpha - 1.0);
    let d_dt = if c == 0.0 {
        0.0
    } else {
        c * eval_h(
            &PncfSpec {
                alpha: spec.alpha - 2.0,
                ..*spec
            },
            x,
        )?
    };
    Ok((d_dx, d_dt))
}

/// Residual of the backward-heat equation u_t + u_xx/2 = 0, with u_t from
/// the derivative recurrence and u_xx = alpha(alpha-1) H_{alpha-2}.
/// Analytically zero; the returned value is pure floating-point noise.
pub fn heat_residual(spec: &PncfSpec, x: f64) -> Result<f64> {
    let (_, d_dt) = derivatives_h(spec, x)?;
    let c = spec.alpha * (spec.alpha - 1.0);
    let u_xx = if c == 0.0 {
        0.0
    } else {
        c * eval_h(
            &PncfSpec {
                alpha: spec.alpha - 2.0,
                ..*spec
            },
            x,
        )?
    };
    Ok(d_dt + 0.5 * u_xx)
}

/// Residual of t f'' + (1/2 - x^2/(4t)) f = -alpha f for
/// f(x) = D_alpha(x/sqrt(t)), with f'' by central differences
/// (step 1e-4 sqrt(t)). Analytically zero.
pub fn ode_residual_d(alpha: f64, t: f64, x: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("t must be positive"));
    }
    let cfg = SpecFunConfig::default();
    let rt = sqrt(t);
    let h = 1e-4 * rt;
    let f = |x: f64| pcf_d(alpha, x / rt, &cfg);
    let fm = f(x - h)?;
    let f0 = f(x)?;
    let fp = f(x + h)?;
    let fxx = (fp - 2.0 * f0 + fm) / (h * h);
    Ok(t * fxx + (0.5 - x * x / (4.0 * t)) * f0 + alpha * f0)
}

/// Eigenvalue residual t u'' - x u' + alpha u for u(x) = H_alpha(x, t) at
/// fixed t, with both derivatives by central differences (step h).
pub fn eigen_residual(spec: &PncfSpec, x: f64, h: f64) -> Result<f64> {
    let um = eval_h(spec, x - h)?;
    let u0 = eval_h(spec, x)?;
    let up = eval_h(spec, x + h)?;
    let ux = (up - um) / (2.0 * h);
    let uxx = (up - 2.0 * u0 + um) / (h * h);
    Ok(spec.t * uxx - x * ux + spec.alpha * u0)
}

/// Cross-check of the fractional-derivative representation
/// `H_alpha(x, t) = t^alpha e^{x^2/2t} (D_-^alpha e^{-y^2/2t})(x)` for
/// non-integer alpha > 0 and x > 0. Returns (direct, via fractional
/// derivative); the two agree to quadrature accuracy.
pub fn liouville_rep_check(
    alpha: f64,
    t: f64,
    x: f64,
    grid: &QuadratureGrid,
) -> Result<(f64, f64)> {
    if !(alpha > 0.0) || nonneg_int_window(alpha, INTEGER_WINDOW).is_some() {
        return Err(Error::Domain(
            "representation check requires non-integer alpha > 0",
        ));
    }
    if !(x > 0.0) || !(t > 0.0) {
        return Err(Error::Domain("representation check requires x > 0, t > 0"));
    }
    let spec = PncfSpec::new(alpha, t)?;
    let lhs = eval_h(&spec, x)?;

    let order = FracOrder::new(alpha)?;
    let kernel = gaussian_kernel(t, order.m);
    let frac = fraccalc::fracderiv_minus(order, &kernel, x, grid)?;
    let rhs = pow(t, alpha) * exp(x * x / (2.0 * t)) * frac;
    Ok((lhs, rhs))
}

/// e^{-y^2/2t} with its derivative tower
/// d^k/dy^k e^{-y^2/2t} = (-1/t)^k H_k(y, t) e^{-y^2/2t}.
pub(crate) fn gaussian_kernel(t: f64, orders: usize) -> KernelFn {
    let mut kernel =
        KernelFn::gaussian_decay(Box::new(move |y: f64| exp(-y * y / (2.0 * t))), 0.5 / t);
    for k in 1..=orders {
        let scale = pow(-1.0 / t, k as f64);
        kernel.push_derivative(Box::new(move |y: f64| {
            scale * hermite(k, y, t) * exp(-y * y / (2.0 * t))
        }));
    }
    kernel
}
