//! Stem/slice function representation, the *-product, and evaluation.

mod domain;
mod function;
pub mod json;
mod poly;
mod stem;

pub use domain::{PlanarDomain, Rect};
pub(crate) use function::Expr;
pub use function::{
    representation_check, MuNuKind, RealKind, SeriesKind, SliceFunction, Tag, TrigKind,
};
pub use poly::QuaternionPolynomial;
pub use stem::{StemKahan, StemValue};

/// Pointwise stem product `(p + imath q)(p' + imath q')`.
pub fn stem_mul(u: StemValue, v: StemValue) -> StemValue {
    u * v
}

/// n-fold *-power of a polynomial; the empty product is 1.
pub fn poly_star_power(f: &QuaternionPolynomial, n: u32) -> QuaternionPolynomial {
    f.star_power(n)
}

/// *-product of two slice functions (coefficient convolution when both are
/// polynomials).
pub fn star_product(f: &SliceFunction, g: &SliceFunction) -> crate::error::Result<SliceFunction> {
    f.star(g)
}
