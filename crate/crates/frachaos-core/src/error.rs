//! Shared error type for the numerical kernels.

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Evaluation at a pole of the underlying function.
    #[error("argument {arg} is at a pole")]
    Pole { arg: f64 },
    /// A series or iteration failed to reach the requested tolerance.
    #[error("no convergence within {max_terms} terms")]
    NonConvergence { max_terms: usize },
    /// Input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(&'static str),
    /// The result exceeds the representable floating-point range.
    #[error("overflow in {0}")]
    Overflow(&'static str),
    /// Quadrature grid incompatible with the requested operation.
    #[error("grid mismatch: {0}")]
    GridMismatch(&'static str),
    /// An order set failed its pairwise orthogonality tolerance.
    #[error("order set not orthogonal: worst |A| = {worst:e} exceeds {tol:e}")]
    NotOrthogonal { worst: f64, tol: f64 },
    /// Kernel derivatives required but not supplied.
    #[error("kernel derivative of order {order} not supplied")]
    MissingDerivative { order: usize },
    /// Semi-infinite truncation bound too large relative to the result.
    #[error("truncation bound {bound:e} exceeds 1e-12 of |value| = {value:e}")]
    Truncation { value: f64, bound: f64 },
    /// Finite differencing could not reach the required accuracy.
    #[error("estimated finite-difference error {estimate:e} above 1e-5 (value {value:e})")]
    LowAccuracy { value: f64, estimate: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
