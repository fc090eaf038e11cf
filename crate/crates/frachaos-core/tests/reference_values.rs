//! Frozen external reference values, generated against mpmath 1.3 at 40
//! digits with exact-binary f64 arguments. These exercise every evaluation
//! branch of the parabolic cylinder kernel (two-series region, integral
//! seeds with order recurrence, large-z asymptotics, deep negative axis)
//! plus digamma and Kummer 1F1.

use frachaos_core::pncf::{eval_h, PncfSpec};
use frachaos_core::specfun::{digamma, kummer_1f1, pcf_d, SpecFunConfig};

fn check(name: &str, got: f64, expect: f64, rtol: f64) {
    let rel = (got - expect).abs() / expect.abs().max(1e-300);
    assert!(
        rel <= rtol,
        "{name}: got {got:e}, reference {expect:e}, rel {rel:e} > {rtol:e}"
    );
}

#[rustfmt::skip]
const PCF_D: [(f64, f64, f64, f64); 20] = [
    (0.5, 0.0, 0.58136831701911858184, 1e-12),
    (0.5, 1.0, 0.84220324406983957449, 1e-12),
    (0.5, 3.7, 0.063306173995617129218, 5e-12),
    (0.5, -2.0, -0.90495566255418111750, 1e-12),
    (-1.3, 2.5, 0.053363232191362129770, 1e-12),
    (2.7, 3.9, 0.74675182252908066496, 5e-11),
    (-0.5, -5.0, 333.06327803075921082, 1e-12),
    (3.2, -7.0, 277.30675660890481358, 1e-12),
    (0.5, 4.5, 0.013506814348507801922, 1e-11),
    (0.5, 6.0, 0.00030331511862960705940, 1e-11),
    (0.5, 7.5, 2.1439426002272402020e-6, 1e-11),
    (3.2, 5.5, 0.10744710667036655824, 1e-11),
    (-0.7, 6.5, 6.8849119814734927542e-6, 1e-11),
    (1.7, 7.9, 5.5684265588343594039e-6, 1e-11),
    (0.5, 9.0, 4.8230324076077047140e-9, 1e-9),
    (3.2, 12.0, 6.4273976846212223699e-13, 1e-10),
    (-2.5, 15.0, 4.1918722014500917621e-28, 1e-10),
    (0.5, -10.0, -1641533270.7064640776, 1e-11),
    (2.3, -12.0, -2157997138854.1670756, 1e-11),
    (-1.6, -20.0, 4.5490794423298998495e44, 1e-11),
];

#[test]
fn parabolic_cylinder_d_against_external_reference() {
    let cfg = SpecFunConfig::default();
    for (alpha, z, expect, rtol) in PCF_D {
        let got = pcf_d(alpha, z, &cfg).unwrap();
        check(&format!("D_{alpha}({z})"), got, expect, rtol);
    }
}

#[test]
fn digamma_against_external_reference() {
    for (x, expect) in [
        (0.3, -3.5025242222001331249),
        (7.7, 1.9748820949131018437),
        (-2.3, 3.3173231575618227391),
        (47.0, 3.8394715810845718901),
    ] {
        check(&format!("psi({x})"), digamma(x).unwrap(), expect, 1e-12);
    }
}

#[test]
fn kummer_against_external_reference() {
    let cfg = SpecFunConfig::default();
    for (a, b, w, expect, rtol) in [
        (0.3, 1.7, 25.0, 251749741.53407385847, 1e-12),
        (-2.5, 0.7, -3.0, 28.296693529365375369, 1e-12),
        (1.25, 0.4, 12.5, 5715863.7555427679056, 1e-12),
    ] {
        check(
            &format!("1F1({a};{b};{w})"),
            kummer_1f1(a, b, w, &cfg).unwrap(),
            expect,
            rtol,
        );
    }
}

#[test]
fn scaled_function_against_external_reference() {
    for (alpha, t, x, expect, rtol) in [
        (0.5, 1.0, 2.0, 1.4516004057388607983, 1e-11),
        (1.7, 0.25, -1.5, 3.8310598682608728898, 1e-11),
        (3.601747473443165, 1.0, 4.0, 104.87497450918450741, 1e-10),
        (-2.6, 2.0, 0.7, 0.15982512105188652437, 1e-11),
        (0.5, 0.0001, 2.0, 1.4142179816869041665, 1e-10),
    ] {
        let spec = PncfSpec::new(alpha, t).unwrap();
        check(
            &format!("H_{alpha}({x},{t})"),
            eval_h(&spec, x).unwrap(),
            expect,
            rtol,
        );
    }
}

#[test]
fn orthogonality_constants_against_external_reference() {
    use frachaos_core::ortho;
    use frachaos_core::quad::{QuadratureGrid, DEFAULT_NODES};
    // frozen 30-digit quadratures of the defining integrals at t = 1
    let grid = QuadratureGrid::half_line_gaussian(1.0, DEFAULT_NODES).unwrap();
    check(
        "norm_sq(0.5, 1)",
        ortho::norm_sq_h(0.5, 1.0, &grid).unwrap(),
        1.262467148456343,
        1e-11,
    );
    let (lhs, rhs) = ortho::cross_check_l01(0.3, 0.6, 1.0, &QuadratureGrid::finite_panel(32)).unwrap();
    check("l01 quadrature (0.3, 0.6, 1)", lhs, 1.242162058857362, 1e-11);
    check("l01 closed form (0.3, 0.6, 1)", rhs, 1.242162058857362, 1e-11);
}
