//! Numerical kernels for the scaled parabolic cylinder function
//! `H_alpha(x, t) = t^(alpha/2) e^(x^2/4t) D_alpha(x/sqrt(t))`, a real-order
//! extension of the time-scaled probabilists' Hermite polynomials, together
//! with the machinery built around it:
//!
//! - [`specfun`]: scalar kernels (Kummer 1F1, parabolic cylinder U and D,
//!   Hermite polynomials, gamma/digamma),
//! - [`pncf`]: evaluation, derivative recurrences, and PDE/ODE residuals of
//!   `H_alpha`,
//! - [`fraccalc`]: Liouville and Caputo fractional integrals/derivatives as
//!   numerical operators, with closed forms for Gaussian kernels,
//! - [`ortho`]: half-line Gaussian-weight orthogonality of `H_alpha`,
//!   admissible order search, and norm audits,
//! - [`chaos`]: fractional and polynomial chaos expansions of a function of a
//!   Wiener increment,
//! - [`appell`]: the Appell integral transform specialised to the Wiener
//!   process,
//! - [`stochproc`]: seeded Wiener ensembles and Monte Carlo / quadrature
//!   verification of martingale, covariance, self-similarity, and Ito
//!   integral identities.
//!
//! The crate is `no_std` (with `alloc`); all floating-point math goes through
//! `libm` so results are bit-identical across std and no_std builds.

#![cfg_attr(not(test), no_std)]
// negated range comparisons like `!(t > 0.0)` are deliberate: they reject
// NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod appell;
pub mod chaos;
pub mod error;
pub mod fraccalc;
pub mod ortho;
pub mod pncf;
pub mod quad;
pub mod specfun;
pub mod stochproc;

pub use error::{Error, Result};
pub use pncf::PncfSpec;
pub use quad::QuadratureGrid;
pub use specfun::SpecFunConfig;
