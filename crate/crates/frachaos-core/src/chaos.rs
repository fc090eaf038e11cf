//! Chaos expansions of a function of a Wiener increment: the classical
//! polynomial expansion in scaled Hermite polynomials under the full-line
//! Gaussian density, and the fractional expansion in an orthogonal H_alpha
//! set under the half-line weight e^{-x^2/2t}.
//!
//! The two bases live on different domains with different weights; each
//! expansion and its residual norm use the inner product native to its
//! basis. Truncation quality is never assumed: [`residual_norm`] reports it.

use alloc::vec::Vec;
use libm::{fabs, pow, sqrt};

use crate::error::{Error, Result};
use crate::ortho::{self, AlphaSet};
use crate::pncf::{eval_h, PncfSpec};
use crate::quad::{GridKind, QuadratureGrid};
use crate::specfun::hermite;

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// A realized Wiener increment W(I) over an interval of measure m(I).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalIncrement {
    pub value: f64,
    pub measure: f64,
}

impl IntervalIncrement {
    pub fn new(value: f64, measure: f64) -> Result<Self> {
        if !(measure > 0.0) {
            return Err(Error::Domain("interval measure must be positive"));
        }
        Ok(IntervalIncrement { value, measure })
    }
}

/// Which basis an expansion is written in.
#[derive(Debug, Clone)]
pub enum Basis {
    Fractional(AlphaSet),
    Polynomial { max_degree: usize },
}

/// Coefficients of a truncated chaos expansion at time scale t.
#[derive(Debug, Clone)]
pub struct ChaosExpansion {
    pub t: f64,
    pub basis: Basis,
    pub coefficients: Vec<f64>,
}

impl ChaosExpansion {
    /// Number of basis elements.
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Evaluate the reconstruction at plain argument x (time scale t).
    pub fn eval(&self, x: f64) -> Result<f64> {
        let mut acc = 0.0;
        match &self.basis {
            Basis::Fractional(set) => {
                for (c, &alpha) in self.coefficients.iter().zip(set.alphas()) {
                    if *c != 0.0 {
                        let spec = PncfSpec::new(alpha, self.t)?;
                        acc += c * eval_h(&spec, x)?;
                    }
                }
            }
            Basis::Polynomial { .. } => {
                for (k, c) in self.coefficients.iter().enumerate() {
                    if *c != 0.0 {
                        acc += c * hermite(k, x, self.t);
                    }
                }
            }
        }
        Ok(acc)
    }
}

/// Project g onto an orthogonal fractional set:
/// `c_k = <g, H_{alpha_k}> / ||H_{alpha_k}||^2` under the half-line weight.
pub fn expand_fractional<G: Fn(f64) -> f64>(
    g: G,
    set: &AlphaSet,
    t: f64,
    grid: &QuadratureGrid,
) -> Result<ChaosExpansion> {
    if set.t != t {
        return Err(Error::GridMismatch("alpha set built for a different t"));
    }
    // re-assert the pairwise orthogonality invariant at the set's tolerance
    let mut worst = 0.0_f64;
    for (k, row) in set.pairwise_a().iter().enumerate() {
        for (m, v) in row.iter().enumerate() {
            if k != m {
                worst = worst.max(fabs(*v));
            }
        }
    }
    if worst > set.tol {
        return Err(Error::NotOrthogonal {
            worst,
            tol: set.tol,
        });
    }
    let mut coefficients = Vec::with_capacity(set.len());
    for &alpha in set.alphas() {
        let spec = PncfSpec::new(alpha, t)?;
        let inner = ortho::weighted_inner(&g, |x| eval_h(&spec, x).unwrap_or(f64::NAN), t, grid)?;
        let norm_sq = ortho::norm_sq_h(alpha, t, grid)?;
        coefficients.push(inner / norm_sq);
    }
    Ok(ChaosExpansion {
        t,
        basis: Basis::Fractional(set.clone()),
        coefficients,
    })
}

/// Expand g in scaled Hermite polynomials under the N(0, t) density:
/// `a_k = (1/(k! t^k)) int g(y) H_k(y, t) f(y) dy`.
pub fn expand_polynomial<G: Fn(f64) -> f64>(
    g: G,
    max_degree: usize,
    t: f64,
    grid: &QuadratureGrid,
) -> Result<ChaosExpansion> {
    if grid.kind != GridKind::FullLineGaussianWeight || grid.t != t {
        return Err(Error::GridMismatch(
            "full-line Gaussian-weight grid at matching t required",
        ));
    }
    let density_norm = SQRT_2PI * sqrt(t);
    let mut coefficients = Vec::with_capacity(max_degree + 1);
    let mut k_factorial = 1.0;
    for k in 0..=max_degree {
        if k > 1 {
            k_factorial *= k as f64;
        }
        let raw = grid.sum(|y| g(y) * hermite(k, y, t)) / density_norm;
        coefficients.push(raw / (k_factorial * pow(t, k as f64)));
    }
    Ok(ChaosExpansion {
        t,
        basis: Basis::Polynomial { max_degree },
        coefficients,
    })
}

/// Evaluate the expansion on a realized increment: H-terms see
/// (W(I), m(I)) in place of (x, t).
pub fn reconstruct(exp: &ChaosExpansion, inc: &IntervalIncrement) -> Result<f64> {
    let mut acc = 0.0;
    match &exp.basis {
        Basis::Fractional(set) => {
            for (c, &alpha) in exp.coefficients.iter().zip(set.alphas()) {
                if *c != 0.0 {
                    let spec = PncfSpec::new(alpha, inc.measure)?;
                    acc += c * eval_h(&spec, inc.value)?;
                }
            }
        }
        Basis::Polynomial { .. } => {
            for (k, c) in exp.coefficients.iter().enumerate() {
                if *c != 0.0 {
                    acc += c * hermite(k, inc.value, inc.measure);
                }
            }
        }
    }
    Ok(acc)
}

/// Weighted L2 distance between g and the reconstruction, in the norm native
/// to the expansion's basis: half-line weight e^{-x^2/2t} for fractional,
/// the N(0, t) density for polynomial.
pub fn residual_norm<G: Fn(f64) -> f64>(
    g: G,
    exp: &ChaosExpansion,
    grid: &QuadratureGrid,
) -> Result<f64> {
    let expected_kind = match &exp.basis {
        Basis::Fractional(_) => GridKind::HalfLineGaussianWeight,
        Basis::Polynomial { .. } => GridKind::FullLineGaussianWeight,
    };
    if grid.kind != expected_kind || grid.t != exp.t {
        return Err(Error::GridMismatch(
            "grid domain/scale must match the expansion basis",
        ));
    }
    let mut sq = grid.sum(|x| {
        let d = g(x) - exp.eval(x).unwrap_or(f64::NAN);
        d * d
    });
    if let Basis::Polynomial { .. } = exp.basis {
        sq /= SQRT_2PI * sqrt(exp.t);
    }
    // quadrature noise can push an exact-expansion residual a hair negative
    Ok(sqrt(sq.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ortho::find_conjugate_roots;
    use crate::quad::DEFAULT_NODES;
    use approx::assert_relative_eq;

    fn pair_set(t: f64) -> AlphaSet {
        let roots = find_conjugate_roots(3.05, 3.95, 0.01, 1e-10, true);
        AlphaSet::conjugate_pair(roots[0], t, 1e-8).unwrap()
    }

    fn half_grid(t: f64) -> QuadratureGrid {
        QuadratureGrid::half_line_gaussian(t, DEFAULT_NODES).unwrap()
    }

    fn full_grid(t: f64) -> QuadratureGrid {
        QuadratureGrid::full_line_gaussian(t, 2 * DEFAULT_NODES).unwrap()
    }

    #[test]
    fn fractional_projection_of_basis_element() {
        let t = 1.0;
        let set = pair_set(t);
        let alpha0 = set.alphas()[0];
        let spec = PncfSpec::new(alpha0, t).unwrap();
        let exp = expand_fractional(|x| eval_h(&spec, x).unwrap(), &set, t, &half_grid(t)).unwrap();
        assert!(
            fabs(exp.coefficients[0] - 1.0) <= 1e-7,
            "c0 = {}",
            exp.coefficients[0]
        );
        assert!(
            fabs(exp.coefficients[1]) <= 1e-7,
            "c1 = {}",
            exp.coefficients[1]
        );
    }

    #[test]
    fn fractional_projection_of_zero() {
        let t = 1.0;
        let set = pair_set(t);
        let exp = expand_fractional(|_| 0.0, &set, t, &half_grid(t)).unwrap();
        assert!(exp.coefficients.iter().all(|c| fabs(*c) < 1e-14));
    }

    #[test]
    fn fractional_linear_combination_recovered() {
        let t = 1.0;
        let set = pair_set(t);
        let (a0, a1) = (set.alphas()[0], set.alphas()[1]);
        let s0 = PncfSpec::new(a0, t).unwrap();
        let s1 = PncfSpec::new(a1, t).unwrap();
        let g = |x: f64| 3.0 * eval_h(&s0, x).unwrap() - 2.0 * eval_h(&s1, x).unwrap();
        let exp = expand_fractional(g, &set, t, &half_grid(t)).unwrap();
        assert!(fabs(exp.coefficients[0] - 3.0) <= 1e-6);
        assert!(fabs(exp.coefficients[1] + 2.0) <= 1e-6);
    }

    #[test]
    fn polynomial_expansion_of_x_squared() {
        // x^2 = H_2(x, t) + t H_0: a = (t, 0, 1, 0, 0) at t = 1 -> (1, 0, 1, 0, 0)
        let t = 1.0;
        let exp = expand_polynomial(|x| x * x, 4, t, &full_grid(t)).unwrap();
        let expect = [1.0, 0.0, 1.0, 0.0, 0.0];
        for (k, (c, e)) in exp.coefficients.iter().zip(expect).enumerate() {
            assert!(fabs(c - e) <= 1e-10, "a_{k} = {c} expected {e}");
        }
    }

    #[test]
    fn polynomial_expansion_of_basis_element() {
        let t = 0.5;
        let exp = expand_polynomial(|x| hermite(3, x, t), 5, t, &full_grid(t)).unwrap();
        for (k, c) in exp.coefficients.iter().enumerate() {
            let e = if k == 3 { 1.0 } else { 0.0 };
            assert!(fabs(c - e) <= 1e-10, "a_{k} = {c}");
        }
    }

    #[test]
    fn polynomial_expansion_of_constant() {
        let exp = expand_polynomial(|_| 1.0, 3, 1.0, &full_grid(1.0)).unwrap();
        assert!(fabs(exp.coefficients[0] - 1.0) <= 1e-12);
        assert!(exp.coefficients[1..].iter().all(|c| fabs(*c) < 1e-12));
    }

    #[test]
    fn reconstruct_polynomial_case() {
        // g(x) = x^2 at t = 1: reconstruct at x = 2 gives 4
        let t = 1.0;
        let exp = expand_polynomial(|x| x * x, 4, t, &full_grid(t)).unwrap();
        let inc = IntervalIncrement::new(2.0, 1.0).unwrap();
        assert_relative_eq!(reconstruct(&exp, &inc).unwrap(), 4.0, max_relative = 1e-10);
        // zero coefficients reconstruct to zero
        let zero = ChaosExpansion {
            t,
            basis: Basis::Polynomial { max_degree: 2 },
            coefficients: alloc::vec![0.0, 0.0, 0.0],
        };
        assert_eq!(reconstruct(&zero, &inc).unwrap(), 0.0);
    }

    #[test]
    fn reconstruct_single_fractional_term() {
        let t = 1.0;
        let set = pair_set(t);
        let alpha0 = set.alphas()[0];
        let exp = ChaosExpansion {
            t,
            basis: Basis::Fractional(set),
            coefficients: alloc::vec![1.0, 0.0],
        };
        let inc = IntervalIncrement::new(1.3, t).unwrap();
        let spec = PncfSpec::new(alpha0, t).unwrap();
        assert_relative_eq!(
            reconstruct(&exp, &inc).unwrap(),
            eval_h(&spec, 1.3).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn residual_of_exact_expansion_vanishes() {
        let t = 1.0;
        let exp = expand_polynomial(|x| x * x, 4, t, &full_grid(t)).unwrap();
        let r = residual_norm(|x| x * x, &exp, &full_grid(t)).unwrap();
        assert!(r <= 1e-9, "residual {r}");
    }

    #[test]
    fn residual_of_truncation_matches_parseval() {
        // degree-1 truncation of x^2 at t = 1 leaves the H_2 term:
        // residual^2 = 2! t^2 = 2 in the density norm
        let t = 1.0;
        let exp = expand_polynomial(|x| x * x, 1, t, &full_grid(t)).unwrap();
        let r = residual_norm(|x| x * x, &exp, &full_grid(t)).unwrap();
        assert_relative_eq!(r, sqrt(2.0), max_relative = 1e-9);
    }

    #[test]
    fn projection_idempotence() {
        let t = 1.0;
        let g = |x: f64| x * x * x - 2.0 * x + 0.5;
        let exp = expand_polynomial(g, 5, t, &full_grid(t)).unwrap();
        let again = expand_polynomial(|x| exp.eval(x).unwrap(), 5, t, &full_grid(t)).unwrap();
        for (a, b) in exp.coefficients.iter().zip(&again.coefficients) {
            assert!(fabs(a - b) <= 1e-8);
        }
    }

    #[test]
    fn parseval_equality_for_polynomials() {
        let t = 0.5;
        let g = |x: f64| x * x * x - x;
        let grid = full_grid(t);
        let exp = expand_polynomial(g, 4, t, &grid).unwrap();
        let mut lhs = 0.0;
        let mut k_factorial = 1.0;
        for (k, c) in exp.coefficients.iter().enumerate() {
            if k > 1 {
                k_factorial *= k as f64;
            }
            lhs += c * c * k_factorial * pow(t, k as f64);
        }
        let rhs = grid.sum(|y| g(y) * g(y)) / (SQRT_2PI * sqrt(t));
        assert_relative_eq!(lhs, rhs, max_relative = 1e-8);
    }

    #[test]
    fn gram_matrix_of_pair_is_diagonal() {
        let t = 1.0;
        let set = pair_set(t);
        let g = half_grid(t);
        let s0 = PncfSpec::new(set.alphas()[0], t).unwrap();
        let s1 = PncfSpec::new(set.alphas()[1], t).unwrap();
        let g00 = ortho::weighted_inner(
            |x| eval_h(&s0, x).unwrap(),
            |x| eval_h(&s0, x).unwrap(),
            t,
            &g,
        )
        .unwrap();
        let g11 = ortho::weighted_inner(
            |x| eval_h(&s1, x).unwrap(),
            |x| eval_h(&s1, x).unwrap(),
            t,
            &g,
        )
        .unwrap();
        let g01 = ortho::weighted_inner(
            |x| eval_h(&s0, x).unwrap(),
            |x| eval_h(&s1, x).unwrap(),
            t,
            &g,
        )
        .unwrap();
        assert!(fabs(g01) <= 1e-7 * sqrt(g00 * g11));
    }
}
