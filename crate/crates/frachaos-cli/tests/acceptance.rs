//! Acceptance suite: one test per acceptance criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see every line).
//!
//! Criteria 10 and 11 contain sub-cases whose defining integrals or
//! estimators do not exist for non-integer order (the second moment of
//! H_alpha(W_t, t) is infinite because H_alpha grows like e^{x^2/2t} as
//! x -> -inf). Those sub-cases are asserted exactly as stated and fail
//! honestly; the suite output carries the quantitative attribution.

use std::sync::OnceLock;

use frachaos_cli::output::{Claim, ClaimKind};
use frachaos_cli::suites;

const SEED: u64 = 42;

fn pde() -> &'static [Claim] {
    static CELL: OnceLock<Vec<Claim>> = OnceLock::new();
    CELL.get_or_init(suites::suite_pde)
}

fn ortho() -> &'static [Claim] {
    static CELL: OnceLock<Vec<Claim>> = OnceLock::new();
    CELL.get_or_init(suites::suite_ortho)
}

fn appell() -> &'static [Claim] {
    static CELL: OnceLock<Vec<Claim>> = OnceLock::new();
    CELL.get_or_init(suites::suite_appell)
}

fn martingale() -> &'static [Claim] {
    static CELL: OnceLock<Vec<Claim>> = OnceLock::new();
    CELL.get_or_init(|| suites::suite_martingale(SEED))
}

fn covariance() -> &'static [Claim] {
    static CELL: OnceLock<Vec<Claim>> = OnceLock::new();
    CELL.get_or_init(suites::suite_covariance)
}

fn ito() -> &'static [Claim] {
    static CELL: OnceLock<Vec<Claim>> = OnceLock::new();
    CELL.get_or_init(|| suites::suite_ito(SEED))
}

fn selfsim() -> &'static [Claim] {
    static CELL: OnceLock<Vec<Claim>> = OnceLock::new();
    CELL.get_or_init(|| suites::suite_selfsim(SEED))
}

fn chaos() -> &'static [Claim] {
    static CELL: OnceLock<Vec<Claim>> = OnceLock::new();
    CELL.get_or_init(suites::suite_chaos)
}

fn find<'a>(rows: &'a [Claim], name: &str) -> Vec<&'a Claim> {
    rows.iter().filter(|c| c.name.starts_with(name)).collect()
}

fn assert_all_pass(criterion: &str, claims: &[&Claim]) {
    assert!(!claims.is_empty(), "{criterion}: no matching claims");
    let ok = claims.iter().all(|c| c.pass);
    println!(
        "acceptance {criterion}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    for c in claims {
        println!(
            "    {} [{}] measured={:e} target={:e} tol={:e} pass={}",
            c.name, c.params, c.measured, c.target, c.tolerance, c.pass
        );
    }
    assert!(ok, "{criterion} failed");
}

#[test]
fn criterion_01_integer_order_reduction() {
    assert_all_pass(
        "1 (integer-order reduction)",
        &find(pde(), "integer-reduction"),
    );
}

#[test]
fn criterion_02_small_time_limit() {
    assert_all_pass("2 (t->0 limit)", &find(pde(), "limit-t0"));
}

#[test]
fn criterion_03_heat_and_ode_residuals() {
    let mut claims = find(pde(), "heat-residual");
    claims.extend(find(pde(), "ode-residual"));
    assert_all_pass("3 (heat equation + ODE)", &claims);
}

#[test]
fn criterion_04_derivative_recurrences() {
    let mut claims = find(pde(), "derivative-dx");
    claims.extend(find(pde(), "derivative-dt"));
    assert_all_pass("4 (derivative recurrences)", &claims);
}

#[test]
fn criterion_05_fractional_derivative_representation() {
    assert_all_pass(
        "5 (Liouville representation)",
        &find(pde(), "liouville-representation"),
    );
}

#[test]
fn criterion_06_gaussian_closed_forms() {
    let mut claims = find(pde(), "closed-form-li1");
    claims.extend(find(pde(), "closed-form-li2"));
    assert_all_pass("6 (closed forms vs quadrature)", &claims);
}

#[test]
fn criterion_07_orthogonality_of_the_conjugate_pair() {
    let mut claims = find(ortho(), "conjugate-root-count");
    claims.extend(find(ortho(), "conjugate-root-a-value"));
    claims.extend(find(ortho(), "pair-inner-product"));
    assert_all_pass("7 (conjugate-pair orthogonality)", &claims);
}

#[test]
fn criterion_08_offdiagonal_scaling_audit() {
    let claims = find(ortho(), "l01-sqrt-t-scaling");
    assert_all_pass("8 (sqrt(t) scaling)", &claims);
    // the audit must also REPORT the measured exponent against the printed
    // factor t (exponent 1): the quadrature decides 1/2
    let report = &find(ortho(), "l01-measured-t-exponent")[0];
    println!(
        "    measured t-exponent = {:.9} (printed closed form uses exponent {:.1})",
        report.measured, report.target
    );
    assert!((report.measured - 0.5).abs() < 1e-6);
    assert!(
        (report.measured - report.target).abs() > 0.4,
        "audit must show the gap"
    );
}

#[test]
fn criterion_09_appell_transform_identity() {
    assert_all_pass(
        "9 (Appell transform = H)",
        &find(appell(), "transform-identity"),
    );
}

#[test]
fn criterion_10_martingale() {
    let mut claims = find(martingale(), "conditional-expectation");
    claims.extend(find(martingale(), "mc-increment"));
    claims.extend(find(martingale(), "mc-level"));
    for c in find(martingale(), "truncated-level-mean") {
        println!(
            "    attribution {}: window mean {:+.6e} vs analytic tail formula {:+.6e}",
            c.name, c.measured, c.target
        );
    }
    // The mc-level-alpha0.5 sub-case fails deterministically: the zero mean
    // of H_(1/2)(W_1, 1) is carried by W below about -5 (probability ~3e-7,
    // magnitude ~e^{W^2/2}), which n = 1e5 samples never reach, so the
    // sample mean sits ~14 standard errors high. The attribution rows above
    // show the truncated mean matching the analytic tail formula.
    assert_all_pass("10 (martingale: quadrature identity + MC)", &claims);
}

#[test]
fn criterion_11_correlation_and_covariance_constant() {
    let mut claims = find(covariance(), "correlation-alpha");
    claims.extend(find(covariance(), "covariance-oracle-alpha2"));
    for c in find(covariance(), "covariance-constant") {
        println!(
            "    reported constant {}: measured {:.9e} (gamma(alpha+1) reading: {:.9e})",
            c.name, c.measured, c.target
        );
    }
    for c in find(covariance(), "second-moment-window-sensitivity") {
        println!(
            "    divergence demonstration {}: 8-sigma/6-sigma second moment = {:.3e}",
            c.name, c.measured
        );
    }
    // The alpha = 0.5 correlation sub-cases fail deterministically: for
    // non-integer order E[H^2] is a divergent integral (the integrand grows
    // like e^{x^2/2t} net of the density), so no quadrature window can
    // reproduce (s/t)^(alpha/2); the window-sensitivity report above shows
    // the divergence. Integer orders pass at 1e-6.
    assert_all_pass("11 (correlation + covariance constant)", &claims);
}

#[test]
fn criterion_12_ito_euler() {
    let mut claims = find(ito(), "euler-endpoint-alpha2");
    claims.extend(find(ito(), "strong-order"));
    assert_all_pass("12 (Ito/Euler strong order)", &claims);
}

#[test]
fn criterion_13_self_similarity() {
    assert_all_pass(
        "13 (self-similarity KS meta-test)",
        &find(selfsim(), "ks-meta"),
    );
}

#[test]
fn criterion_14_chaos_expansions() {
    let mut claims = find(chaos(), "polynomial-x2-coefficients");
    claims.extend(find(chaos(), "fractional-basis-projection"));
    assert_all_pass("14 (chaos expansions)", &claims);
}

#[test]
fn criterion_15_reproducibility() {
    let mut outs = Vec::new();
    for run in 0..2 {
        let mut path = std::env::temp_dir();
        path.push(format!(
            "frachaos-acceptance-{}-{run}.csv",
            std::process::id()
        ));
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_frachaos"))
            .args(["verify", "--seed", "42", "--out", path.to_str().unwrap()])
            .env("SOURCE_DATE_EPOCH", "1700000000")
            .env("FRACHAOS_THREADS", if run == 0 { "1" } else { "4" })
            .output()
            .expect("binary runs");
        // flagged claims exit 1; both runs must agree byte-for-byte anyway
        assert!(
            matches!(out.status.code(), Some(0) | Some(1)),
            "unexpected exit: {out:?}"
        );
        outs.push(std::fs::read(&path).unwrap());
        std::fs::remove_file(path).ok();
    }
    let ok = outs[0] == outs[1];
    println!(
        "acceptance 15 (reproducibility): {} ({} bytes)",
        if ok { "PASS" } else { "FAIL" },
        outs[0].len()
    );
    assert!(ok, "outputs differ between identically-seeded runs");
}
