//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot invert the zero quaternion")]
    ZeroInverse,

    #[error("not a unit imaginary quaternion (|re| = {re_abs:.3e}, |norm - 1| = {norm_dev:.3e})")]
    NotImaginaryUnit { re_abs: f64, norm_dev: f64 },

    #[error("basis is not an alternating orthonormal triple")]
    BadBasis,

    #[error("point alpha = {alpha}, beta = {beta} lies outside the domain")]
    OutsideDomain { alpha: f64, beta: f64 },

    #[error("domain intersection is empty")]
    EmptyDomain,

    #[error("inner function of a real built-in must be slice-preserving")]
    NotSlicePreserving,

    #[error("operation requires a polynomial function")]
    PolynomialRequired,

    #[error("series truncation needs more than {cap} terms (sup bound {sup:.3e}, tol {tol:.3e})")]
    SeriesCap { cap: u32, sup: f64, tol: f64 },

    #[error("root finding did not converge after {0} iterations")]
    RootsDiverged(u32),

    #[error("root clustering could not reproduce the input coefficients")]
    ClusteringFailed,

    #[error("no square root in the slice-preserving functions: {0}")]
    NoSquareRoot(String),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("invalid expression: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
