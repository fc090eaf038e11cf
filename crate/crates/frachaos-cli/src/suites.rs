//! The verification campaign: each suite checks a family of identities at
//! pinned tolerances and returns claim rows. Suite functions are pure given
//! the seed, so repeated runs produce identical output.

use frachaos_core::chaos;
use frachaos_core::fraccalc::{
    expgauss_fracint_closed, fracint_minus, gaussian_fracint_closed, FracOrder, KernelFn,
};
use frachaos_core::ortho;
use frachaos_core::pncf::{self, PncfSpec};
use frachaos_core::quad::{linear_breaks, QuadratureGrid, DEFAULT_NODES};
use frachaos_core::specfun::hermite;
use frachaos_core::stochproc::{self, BivariateNormalParams};
use libm::{exp, log, pow, sqrt, tgamma};

use crate::output::Claim;

/// All suite names, in canonical (sorted) order.
pub const SUITE_NAMES: [&str; 8] = [
    "appell",
    "chaos",
    "covariance",
    "ito",
    "martingale",
    "ortho",
    "pde",
    "selfsim",
];

/// Relative difference with a 0/0 = 0 convention.
fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / b.abs().max(1e-300)
}

fn panel_grid() -> QuadratureGrid {
    QuadratureGrid::finite_panel(32)
}

/// Run one suite by name.
pub fn run_suite(name: &str, seed: u64) -> Option<Vec<Claim>> {
    match name {
        "pde" => Some(suite_pde()),
        "ortho" => Some(suite_ortho()),
        "appell" => Some(suite_appell()),
        "martingale" => Some(suite_martingale(seed)),
        "covariance" => Some(suite_covariance()),
        "ito" => Some(suite_ito(seed)),
        "selfsim" => Some(suite_selfsim(seed)),
        "chaos" => Some(suite_chaos()),
        _ => None,
    }
}

/// Deterministic function identities: integer-order reduction, the t -> 0
/// limit, heat/ODE residuals, derivative recurrences, the fractional-
/// derivative representation, and the Gaussian closed forms.
pub fn suite_pde() -> Vec<Claim> {
    let mut rows = Vec::new();

    // integer-order reduction: parabolic-cylinder route vs polynomial route
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for n in 0..=10usize {
        for i in 0..21 {
            let x = -5.0 + 0.5 * i as f64;
            for t in [0.25, 1.0, 4.0] {
                let spec = PncfSpec::new(n as f64, t).unwrap();
                let poly = pncf::eval_h(&spec, x).unwrap();
                let pcf = pncf::eval_h_via_pcf(&spec, x).unwrap();
                let r = rel(pcf, poly);
                if r > worst {
                    worst = r;
                    worst_at = format!("n={n};x={x};t={t}");
                }
            }
        }
    }
    rows.push(Claim::check(
        "pde",
        "integer-reduction",
        format!("n=0..10;x=21pts[-5..5];t=0.25|1|4;worst={worst_at}"),
        worst,
        0.0,
        1e-10,
        worst <= 1e-10,
    ));

    // t -> 0 limit: H_alpha(x, 1e-6) ~ x^alpha
    let mut worst = 0.0f64;
    for alpha in [0.5, 1.5, 2.5] {
        for x in [0.5, 1.0, 2.0, 3.0] {
            let spec = PncfSpec::new(alpha, 1e-6).unwrap();
            let h = pncf::eval_h(&spec, x).unwrap();
            worst = worst.max((h - pow(x, alpha)).abs() / pow(x, alpha));
        }
    }
    rows.push(Claim::check(
        "pde",
        "limit-t0",
        "alpha=0.5|1.5|2.5;x=0.5|1|2|3;t=1e-6",
        worst,
        0.0,
        1e-3,
        worst <= 1e-3,
    ));

    // heat-equation and ODE residuals over the standard grid
    let alphas = [-0.5, 0.0, 0.5, 0.7, 1.3, 2.0, 2.5, 3.5];
    let xs = [-2.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0];
    let ts = [0.5, 1.0, 2.0, 4.0];
    let mut worst_heat = 0.0f64;
    let mut worst_ode = 0.0f64;
    for &alpha in &alphas {
        for &x in &xs {
            for &t in &ts {
                let spec = PncfSpec::new(alpha, t).unwrap();
                let r = pncf::heat_residual(&spec, x).unwrap();
                let scale = 1.0
                    + pncf::eval_h(
                        &PncfSpec {
                            alpha: alpha - 2.0,
                            t,
                        },
                        x,
                    )
                    .unwrap()
                    .abs();
                worst_heat = worst_heat.max(r.abs() / scale);
                let cfg = frachaos_core::SpecFunConfig::default();
                let f0 = frachaos_core::specfun::pcf_d(alpha, x / sqrt(t), &cfg).unwrap();
                let r = pncf::ode_residual_d(alpha, t, x).unwrap();
                worst_ode = worst_ode.max(r.abs() / (1.0 + f0.abs()));
            }
        }
    }
    rows.push(Claim::check(
        "pde",
        "heat-residual",
        "alpha grid;x in [-2..3];t in [0.5..4]",
        worst_heat,
        0.0,
        1e-6,
        worst_heat <= 1e-6,
    ));
    rows.push(Claim::check(
        "pde",
        "ode-residual",
        "alpha grid;x in [-2..3];t in [0.5..4]",
        worst_ode,
        0.0,
        1e-6,
        worst_ode <= 1e-6,
    ));

    // derivative recurrences vs central differences
    let mut worst_dx = 0.0f64;
    let mut worst_dt = 0.0f64;
    for alpha in [0.5, 1.7, 3.2] {
        for x in [-2.0, -1.0, 0.5, 1.5, 3.0] {
            for t in [0.25, 0.5, 1.0, 2.0, 4.0] {
                let spec = PncfSpec::new(alpha, t).unwrap();
                let (dx, dt) = pncf::derivatives_h(&spec, x).unwrap();
                let h = 1e-5 * sqrt(t);
                let fd_x = (pncf::eval_h(&spec, x + h).unwrap()
                    - pncf::eval_h(&spec, x - h).unwrap())
                    / (2.0 * h);
                let ht = 1e-5 * t;
                let sp = PncfSpec::new(alpha, t + ht).unwrap();
                let sm = PncfSpec::new(alpha, t - ht).unwrap();
                let fd_t =
                    (pncf::eval_h(&sp, x).unwrap() - pncf::eval_h(&sm, x).unwrap()) / (2.0 * ht);
                worst_dx = worst_dx.max((dx - fd_x).abs() / (1.0 + dx.abs()));
                worst_dt = worst_dt.max((dt - fd_t).abs() / (1.0 + dt.abs()));
            }
        }
    }
    rows.push(Claim::check(
        "pde",
        "derivative-dx",
        "alpha=0.5|1.7|3.2;5x5 x-t grid",
        worst_dx,
        0.0,
        1e-6,
        worst_dx <= 1e-6,
    ));
    rows.push(Claim::check(
        "pde",
        "derivative-dt",
        "alpha=0.5|1.7|3.2;5x5 x-t grid",
        worst_dt,
        0.0,
        1e-6,
        worst_dt <= 1e-6,
    ));

    // fractional-derivative representation of H_alpha
    let grid = panel_grid();
    let mut worst = 0.0f64;
    for alpha in [0.5, 1.5, 2.5] {
        for x in [0.5, 1.0, 2.0] {
            for t in [1.0, 2.0] {
                let (lhs, rhs) = pncf::liouville_rep_check(alpha, t, x, &grid).unwrap();
                worst = worst.max((lhs - rhs).abs() / (1.0 + lhs.abs()));
            }
        }
    }
    rows.push(Claim::check(
        "pde",
        "liouville-representation",
        "alpha=0.5|1.5|2.5;x=0.5|1|2;t=1|2",
        worst,
        0.0,
        1e-6,
        worst <= 1e-6,
    ));

    // Gaussian closed forms vs direct fractional-integral quadrature
    let mut worst1 = 0.0f64;
    let mut worst2 = 0.0f64;
    for beta in [0.25, 0.5, 1.0, 1.5, 2.75] {
        for t in [0.5, 1.0, 2.0] {
            for xi in [0.0, 0.5, 1.0, 2.0] {
                let k = KernelFn::gaussian_decay(
                    Box::new(move |y: f64| exp(-y * y / (2.0 * t))),
                    0.5 / t,
                );
                let direct = fracint_minus(FracOrder::new(beta).unwrap(), &k, xi, &grid).unwrap();
                let closed = gaussian_fracint_closed(beta, t, xi).unwrap();
                worst1 = worst1.max((direct - closed).abs() / (1.0 + closed.abs()));
            }
            for (x, xi) in [(0.3, 1.0), (1.0, 0.5), (0.0, 0.0)] {
                let ek = KernelFn::gaussian_decay(
                    Box::new(move |y: f64| exp(-x * y - 0.5 * t * y * y)),
                    0.5 * t,
                );
                let direct = fracint_minus(FracOrder::new(beta).unwrap(), &ek, xi, &grid).unwrap();
                let closed = expgauss_fracint_closed(beta, t, x, xi).unwrap();
                worst2 = worst2.max((direct - closed).abs() / (1.0 + closed.abs()));
            }
        }
    }
    rows.push(Claim::check(
        "pde",
        "closed-form-li1",
        "beta=0.25|0.5|1|1.5|2.75;t=0.5|1|2;xi=0|0.5|1|2",
        worst1,
        0.0,
        1e-8,
        worst1 <= 1e-8,
    ));
    rows.push(Claim::check(
        "pde",
        "closed-form-li2",
        "beta grid;x-xi=0.3-1|1-0.5|0-0",
        worst2,
        0.0,
        1e-8,
        worst2 <= 1e-8,
    ));
    rows
}

/// Orthogonality machinery: the conjugate-pair root, the realized inner
/// product, the off-diagonal scaling audit, and the classical baseline.
pub fn suite_ortho() -> Vec<Claim> {
    let mut rows = Vec::new();
    let t = 1.0;

    let roots = ortho::find_conjugate_roots(3.05, 3.95, 0.01, 1e-10, true);
    let root = roots.first().copied().unwrap_or(f64::NAN);
    rows.push(Claim::check(
        "ortho",
        "conjugate-root-count",
        "range=3.05..3.95;step=0.01",
        roots.len() as f64,
        1.0,
        0.0,
        roots.len() == 1,
    ));
    let a_at_root = ortho::a_conjugate(root).map(f64::abs).unwrap_or(f64::NAN);
    rows.push(Claim::check(
        "ortho",
        "conjugate-root-a-value",
        format!("root={root:.12}"),
        a_at_root,
        0.0,
        1e-10,
        a_at_root <= 1e-10,
    ));

    // realized orthogonality of the pair (root, 1 - root)
    let grid = QuadratureGrid::half_line_gaussian(t, DEFAULT_NODES).unwrap();
    let (ak, am) = (root, 1.0 - root);
    let sk = PncfSpec::new(ak, t).unwrap();
    let sm = PncfSpec::new(am, t).unwrap();
    let inner = ortho::weighted_inner(
        |x| pncf::eval_h(&sk, x).unwrap(),
        |x| pncf::eval_h(&sm, x).unwrap(),
        t,
        &grid,
    )
    .unwrap();
    let scale =
        sqrt(ortho::norm_sq_h(ak, t, &grid).unwrap() * ortho::norm_sq_h(am, t, &grid).unwrap());
    rows.push(Claim::check(
        "ortho",
        "pair-inner-product",
        format!("pair={ak:.6}|{am:.6};t={t}"),
        inner.abs(),
        0.0,
        1e-7 * scale,
        inner.abs() <= 1e-7 * scale,
    ));

    // a_conjugate against the direct gamma expression
    let mut worst = 0.0f64;
    for alpha in [0.3, 0.7, 1.2, 1.8, 3.1, 3.8] {
        let r = rel(
            ortho::a_conjugate(alpha).unwrap(),
            ortho::a_fn(alpha, 1.0 - alpha).unwrap(),
        );
        worst = worst.max(r);
    }
    rows.push(Claim::check(
        "ortho",
        "a-consistency",
        "alpha sampled in 0..1|1..2|3..4",
        worst,
        0.0,
        1e-10,
        worst <= 1e-10,
    ));

    // off-diagonal scaling: quadrature lhs scales exactly as sqrt(t)
    let pg = panel_grid();
    let (lhs1, rhs1) = ortho::cross_check_l01(0.3, 0.6, 1.0, &pg).unwrap();
    let (lhs4, _) = ortho::cross_check_l01(0.3, 0.6, 4.0, &pg).unwrap();
    let ratio = lhs4 / lhs1;
    rows.push(Claim::check(
        "ortho",
        "l01-sqrt-t-scaling",
        "pair=0.3|0.6;t=1 vs t=4",
        ratio,
        2.0,
        1e-6,
        (ratio - 2.0).abs() <= 1e-6,
    ));
    let measured_exponent = log(lhs4 / lhs1) / log(4.0);
    rows.push(Claim::report(
        "ortho",
        "l01-measured-t-exponent",
        "printed closed form carries t^1",
        measured_exponent,
        1.0,
    ));
    rows.push(Claim::check(
        "ortho",
        "l01-constant-at-unit-time",
        "pair=0.3|0.6;t=1",
        rel(lhs1, rhs1),
        0.0,
        1e-8,
        rel(lhs1, rhs1) <= 1e-8,
    ));

    // diagonal norm audit: measured t-exponent vs the printed candidate
    let audit1 = ortho::norm_sq_audit(0.5, 1.0, &grid).unwrap();
    let grid4 = QuadratureGrid::half_line_gaussian(4.0, DEFAULT_NODES).unwrap();
    let audit4 = ortho::norm_sq_audit(0.5, 4.0, &grid4).unwrap();
    rows.push(Claim::check(
        "ortho",
        "norm-constant-at-unit-time",
        "alpha=0.5;t=1",
        rel(audit1.quadrature, audit1.closed_form_candidate),
        0.0,
        1e-9,
        rel(audit1.quadrature, audit1.closed_form_candidate) <= 1e-9,
    ));
    rows.push(Claim::report(
        "ortho",
        "norm-measured-t-exponent",
        "alpha=0.5;printed candidate carries t^(1+alpha)=t^1.5",
        log(audit4.quadrature / audit1.quadrature) / log(4.0),
        0.5 + 0.5,
    ));

    // classical full-line orthogonality of the Hermite basis
    let full = QuadratureGrid::full_line_gaussian(1.0, 2 * DEFAULT_NODES).unwrap();
    let norm = sqrt(2.0 * core::f64::consts::PI);
    let mut worst = 0.0f64;
    for n in 0..=8usize {
        for k in 0..=8usize {
            let val = full.sum(|x| hermite(n, x, 1.0) * hermite(k, x, 1.0)) / norm;
            let expect = if n == k { tgamma(n as f64 + 1.0) } else { 0.0 };
            worst = worst.max((val - expect).abs() / (1.0 + expect.abs()));
        }
    }
    rows.push(Claim::check(
        "ortho",
        "classical-orthogonality",
        "n|k<=8;t=1",
        worst,
        0.0,
        1e-10,
        worst <= 1e-10,
    ));
    rows
}

/// Appell-transform identity across all three kernel branches, plus the
/// bivariate MGF consistency check.
pub fn suite_appell() -> Vec<Claim> {
    use frachaos_core::appell;
    let mut rows = Vec::new();
    let grid = panel_grid();
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for alpha in [-2.5, -1.0, -0.3, 0.0, 1.0, 2.0, 0.5, 1.7, 3.2] {
        for x in [0.5, 1.0, 2.0] {
            for t in [0.5, 1.0, 2.0] {
                let lhs = appell::appell_power(alpha, x, t, &grid).unwrap();
                let spec = PncfSpec::new(alpha, t).unwrap();
                let rhs = pncf::eval_h(&spec, x).unwrap();
                let r = (lhs - rhs).abs() / rhs.abs().max(1e-30);
                if r > worst {
                    worst = r;
                    worst_at = format!("alpha={alpha};x={x};t={t}");
                }
            }
        }
    }
    rows.push(Claim::check(
        "appell",
        "transform-identity",
        format!("9x3x3 grid;worst={worst_at}"),
        worst,
        0.0,
        1e-8,
        worst <= 1e-8,
    ));

    // MGF of (W_t, W_s) against factorized Gaussian quadrature
    let (s, t) = (0.5, 2.0);
    let p = BivariateNormalParams::new(s, t).unwrap();
    let gs = QuadratureGrid::full_line_gaussian(s, 2 * DEFAULT_NODES).unwrap();
    let gd = QuadratureGrid::full_line_gaussian(t - s, 2 * DEFAULT_NODES).unwrap();
    let norm_s = sqrt(2.0 * core::f64::consts::PI * s);
    let norm_d = sqrt(2.0 * core::f64::consts::PI * (t - s));
    let mut worst = 0.0f64;
    for u in [-2.0, -0.5, 1.0, 2.0] {
        for v in [-2.0, 0.5, 2.0] {
            let quad = gs.sum(|y| exp((u + v) * y)) / norm_s * gd.sum(|d| exp(u * d)) / norm_d;
            worst = worst.max(rel(appell::mgf_bivariate(u, v, &p), quad));
        }
    }
    rows.push(Claim::check(
        "appell",
        "mgf-consistency",
        "s=0.5;t=2;abs u|v<=2",
        worst,
        0.0,
        1e-8,
        worst <= 1e-8,
    ));
    rows
}

/// Martingale property: the deterministic conditional-expectation identity
/// by quadrature, then Monte Carlo increments at n = 1e5.
pub fn suite_martingale(seed: u64) -> Vec<Claim> {
    let mut rows = Vec::new();
    let grid = panel_grid();
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for alpha in [0.5, 1.0, 1.5, 2.0, 3.0, 3.6] {
        for w in [-2.0, -1.0, 0.0, 1.0, 2.0, 3.0] {
            for (s, t) in [(0.25, 1.0), (0.5, 2.0)] {
                let (lhs, rhs) =
                    stochproc::conditional_expectation_check(alpha, w, s, t, &grid).unwrap();
                let r = (lhs - rhs).abs() / (1.0 + rhs.abs());
                if r > worst {
                    worst = r;
                    worst_at = format!("alpha={alpha};w={w};s={s};t={t}");
                }
            }
        }
    }
    rows.push(Claim::check(
        "martingale",
        "conditional-expectation",
        format!("6 alpha x 6 w x 2 s-t pairs;worst={worst_at}"),
        worst,
        0.0,
        1e-7,
        worst <= 1e-7,
    ));

    let ens = stochproc::simulate_wiener(100_000, &[0.0, 0.5, 1.0], seed).unwrap();
    for alpha in [0.5, 1.5, 2.5] {
        let est = stochproc::mc_martingale_test(alpha, &ens, 1, 2).unwrap();
        let sigmas = est.mean.abs() / est.std_error;
        rows.push(Claim::check(
            "martingale",
            format!("mc-increment-alpha{alpha}"),
            format!("n=100000;s=0.5;t=1;seed={seed}"),
            sigmas,
            0.0,
            4.0,
            sigmas <= 4.0,
        ));
        let lvl = stochproc::mc_level_test(alpha, &ens, 2).unwrap();
        let sigmas = lvl.mean.abs() / lvl.std_error;
        rows.push(Claim::check(
            "martingale",
            format!("mc-level-alpha{alpha}"),
            format!("n=100000;t=1;seed={seed}"),
            sigmas,
            0.0,
            4.0,
            sigmas <= 4.0,
        ));
        // attribution for the non-integer orders: the zero mean is carried by
        // the far left tail; a window-truncated mean matches the analytic
        // tail formula -window^(-alpha)/(alpha Gamma(-alpha)), which is what
        // a finite sample (window ~ observed range) is biased toward.
        if alpha != libm::round(alpha) {
            let wmean = stochproc::mean_quadrature(alpha, 1.0, &grid).unwrap();
            let window = stochproc::MOMENT_WINDOW_SIGMA;
            let tail_formula = -pow(window, -alpha) / (alpha * tgamma(-alpha));
            rows.push(Claim::report(
                "martingale",
                format!("truncated-level-mean-alpha{alpha}"),
                format!("window={window}sigma;t=1;tail formula as target"),
                wmean,
                tail_formula,
            ));
        }
    }
    rows
}

/// Covariance and correlation quadratures. Integer orders are checked
/// against (s/t)^(alpha/2) and the n! s^n oracle; the non-integer order 0.5
/// is evaluated as specified even though its defining integrals diverge
/// (H_alpha grows like e^{x^2/2t} on the far left for non-integer order), so
/// those rows are expected to fail and are flagged, never hidden. A window-
/// sensitivity report quantifies the divergence.
pub fn suite_covariance() -> Vec<Claim> {
    let mut rows = Vec::new();
    let grid = QuadratureGrid::finite_panel(24);
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        for (s, t) in [(0.25, 1.0), (1.0, 4.0)] {
            let p = BivariateNormalParams::new(s, t).unwrap();
            let corr = stochproc::correlation_test(alpha, &p, &grid).unwrap();
            let target = pow(s / t, 0.5 * alpha);
            let r = rel(corr, target);
            rows.push(Claim::check(
                "covariance",
                format!("correlation-alpha{alpha}"),
                format!("s={s};t={t};window={}sigma", stochproc::MOMENT_WINDOW_SIGMA),
                corr,
                target,
                1e-6,
                r <= 1e-6,
            ));
        }
    }

    // covariance constant: n! s^n at integer orders, reported for all
    for alpha in [1.0, 2.0, 3.0, 0.5] {
        let (s, t) = (0.5, 1.0);
        let p = BivariateNormalParams::new(s, t).unwrap();
        let cov = stochproc::covariance_quadrature(alpha, &p, &grid).unwrap();
        rows.push(Claim::report(
            "covariance",
            format!("covariance-constant-alpha{alpha}"),
            format!(
                "s={s};t={t};measured cov/s^alpha;gamma(alpha+1)={}",
                tgamma(alpha + 1.0)
            ),
            cov / pow(s, alpha),
            tgamma(alpha + 1.0),
        ));
    }

    // the alpha = 2 covariance must reproduce the Gaussian-moment oracle 2 s^2
    let p = BivariateNormalParams::new(0.5, 1.0).unwrap();
    let cov = stochproc::covariance_quadrature(2.0, &p, &grid).unwrap();
    rows.push(Claim::check(
        "covariance",
        "covariance-oracle-alpha2",
        "s=0.5;t=1;oracle 2s^2 from Gaussian moments",
        cov,
        0.5,
        1e-6,
        rel(cov, 0.5) <= 1e-6,
    ));

    // divergence demonstration: the non-integer second moment grows with the
    // truncation window instead of stabilizing
    let narrow = {
        let spec = PncfSpec::new(0.5, 1.0).unwrap();
        let breaks = linear_breaks(-6.0, 6.0, 0.4);
        grid.integrate_panels(&breaks, |y: f64| {
            let h = pncf::eval_h(&spec, y).unwrap();
            h * h * exp(-0.5 * y * y)
        }) / sqrt(2.0 * core::f64::consts::PI)
    };
    let wide = stochproc::variance_quadrature(0.5, 1.0, &grid).unwrap();
    rows.push(Claim::report(
        "covariance",
        "second-moment-window-sensitivity-alpha0.5",
        "t=1;8-sigma window over 6-sigma window; grows without bound",
        wide / narrow,
        1.0,
    ));
    rows
}

/// Ito identity by Euler-Maruyama: exactness scale at alpha = 2 and the
/// measured strong order 1/2 at alpha in {1.5, 3}.
pub fn suite_ito(seed: u64) -> Vec<Claim> {
    let mut rows = Vec::new();
    let steps = 1000;
    let t_end = 1.0;
    let ens =
        stochproc::simulate_wiener(500, &stochproc::uniform_times(t_end, steps), seed).unwrap();
    let est = stochproc::ito_euler_check(2.0, &ens).unwrap();
    let dt = t_end / steps as f64;
    let bound = 3.0 * sqrt(dt) * sqrt(2.0 * t_end);
    rows.push(Claim::check(
        "ito",
        "euler-endpoint-alpha2",
        format!("paths=500;steps={steps};seed={seed}"),
        est.mean,
        0.0,
        bound,
        est.mean <= bound,
    ));
    for alpha in [1.5, 3.0] {
        // coarse grid already satisfies dt <= 1e-3 t_end; refine 4x on the
        // same Brownian paths. The mean absolute error is heavy-tailed for
        // fractional integrand orders, so the path count is sized for a
        // stable order estimate.
        let so = stochproc::ito_strong_order(alpha, 3000, t_end, 1000, 4, seed).unwrap();
        rows.push(Claim::check(
            "ito",
            format!("strong-order-alpha{alpha}"),
            format!(
                "paths=3000;coarse=1000;refine=4;seed={seed};errors={:.3e}->{:.3e}",
                so.error_coarse, so.error_fine
            ),
            so.order,
            0.5,
            0.15,
            so.order >= 0.35 && so.order <= 0.65,
        ));
    }
    rows
}

/// Self-similarity in law via 100 seeded repetitions of the two-sample KS
/// test at n = 1e4; the claim is a meta-test on the p-value distribution.
pub fn suite_selfsim(seed: u64) -> Vec<Claim> {
    let mut rows = Vec::new();
    for (alpha, c) in [(1.0, 9.0), (2.0, 4.0), (0.7, 2.0)] {
        let mut good = 0usize;
        for rep in 0..100u64 {
            let rep_seed = stochproc::sub_seed(seed, 1000 + rep);
            let (_, p) = stochproc::self_similarity_ks(alpha, c, 1.0, 10_000, rep_seed).unwrap();
            if p > 0.01 {
                good += 1;
            }
        }
        rows.push(Claim::check(
            "selfsim",
            format!("ks-meta-alpha{alpha}-c{c}"),
            format!("n=10000;reps=100;p>0.01;seed={seed}"),
            good as f64,
            100.0,
            5.0,
            good >= 95,
        ));
    }
    rows
}

/// Chaos expansions: the polynomial expansion of x^2 and the fractional
/// projection of a basis element.
pub fn suite_chaos() -> Vec<Claim> {
    let mut rows = Vec::new();
    let t = 1.0;
    let full = QuadratureGrid::full_line_gaussian(t, 2 * DEFAULT_NODES).unwrap();
    let exp_poly = chaos::expand_polynomial(|x| x * x, 4, t, &full).unwrap();
    let expect = [1.0, 0.0, 1.0, 0.0, 0.0];
    let worst = exp_poly
        .coefficients
        .iter()
        .zip(expect)
        .map(|(c, e)| (c - e).abs())
        .fold(0.0f64, f64::max);
    rows.push(Claim::check(
        "chaos",
        "polynomial-x2-coefficients",
        "g=x^2;t=1;degree=4;target=1|0|1|0|0",
        worst,
        0.0,
        1e-10,
        worst <= 1e-10,
    ));

    let residual = chaos::residual_norm(|x| x * x, &exp_poly, &full).unwrap();
    rows.push(Claim::report(
        "chaos",
        "polynomial-x2-residual",
        "exact finite expansion; quadrature-noise scale",
        residual,
        0.0,
    ));

    let half = QuadratureGrid::half_line_gaussian(t, DEFAULT_NODES).unwrap();
    let roots = ortho::find_conjugate_roots(3.05, 3.95, 0.01, 1e-10, true);
    let set = ortho::AlphaSet::conjugate_pair(roots[0], t, 1e-8).unwrap();
    let spec = PncfSpec::new(set.alphas()[0], t).unwrap();
    let exp_frac =
        chaos::expand_fractional(|x| pncf::eval_h(&spec, x).unwrap(), &set, t, &half).unwrap();
    let worst = (exp_frac.coefficients[0] - 1.0)
        .abs()
        .max(exp_frac.coefficients[1].abs());
    rows.push(Claim::check(
        "chaos",
        "fractional-basis-projection",
        format!(
            "pair={:.6}|{:.6};t=1;target=1|0",
            set.alphas()[0],
            set.alphas()[1]
        ),
        worst,
        0.0,
        1e-7,
        worst <= 1e-7,
    ));

    let res = chaos::residual_norm(|x| pncf::eval_h(&spec, x).unwrap(), &exp_frac, &half).unwrap();
    rows.push(Claim::report(
        "chaos",
        "fractional-basis-residual",
        "projection of a basis element",
        res,
        0.0,
    ));
    rows
}
