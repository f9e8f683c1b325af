//! Intrinsic scalar/vector calculus on slice functions.
//!
//! Every slice function splits as `f = f0 + f_v` with slice-preserving
//! scalar part `f0 = (f + f^c)/2` and vector part `f_v = (f - f^c)/2`. The
//! scalar product `<f, g>_* = (f * g^c)_0` and wedge
//! `f /\ g = (f*g - g*f)/2` recover a quaternion-style scalar-vector form
//! of the *-product and characterize commutation.

use crate::error::Result;
use crate::grid::{sup_distance, sup_norm, Grid};
use crate::quaternion::{Basis, Quaternion};
use crate::slicefn::{QuaternionPolynomial, SliceFunction};

/// Conjugate function: both stem components conjugated pointwise.
pub fn conjugate_fn(f: &SliceFunction) -> SliceFunction {
    f.conjugate()
}

/// Scalar part `(f + f^c)/2`; slice-preserving.
pub fn scalar_part(f: &SliceFunction) -> SliceFunction {
    match f.as_poly() {
        Some(p) => SliceFunction::from_poly(p.scalar_part()),
        None => f
            .add(&f.conjugate())
            .expect("domain of f intersects itself")
            .scale(0.5),
    }
}

/// Vector part `(f - f^c)/2`.
pub fn vector_part(f: &SliceFunction) -> SliceFunction {
    match f.as_poly() {
        Some(p) => SliceFunction::from_poly(p.vector_part()),
        None => f
            .sub(&f.conjugate())
            .expect("domain of f intersects itself")
            .scale(0.5),
    }
}

/// Symmetrized function `f^s = f * f^c`; always slice-preserving.
pub fn symmetrized(f: &SliceFunction) -> SliceFunction {
    f.star(&f.conjugate())
        .expect("domain of f intersects itself")
}

/// `<f, g>_* = (f * g^c)_0`; slice-preserving and symmetric in `f`, `g`.
pub fn star_scalar(f: &SliceFunction, g: &SliceFunction) -> Result<SliceFunction> {
    let prod = f.star(&g.conjugate())?;
    Ok(scalar_part(&prod))
}

/// Wedge `(f * g - g * f)/2`; antisymmetric, equals `f_v /\ g_v`.
pub fn star_wedge(f: &SliceFunction, g: &SliceFunction) -> Result<SliceFunction> {
    let fg = f.star(g)?;
    let gf = g.star(f)?;
    Ok(fg.sub(&gf)?.scale(0.5))
}

/// The four slice-preserving components of `f` in an alternating
/// orthonormal basis `(1, I, J, K)`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub f0: SliceFunction,
    pub f1: SliceFunction,
    pub f2: SliceFunction,
    pub f3: SliceFunction,
    pub basis: Basis,
}

impl Decomposition {
    /// `f0 + f1 I + f2 J + f3 K`.
    pub fn reconstruct(&self) -> Result<SliceFunction> {
        let mut acc = self.f0.clone();
        for (component, unit) in [
            (&self.f1, self.basis.i),
            (&self.f2, self.basis.j),
            (&self.f3, self.basis.k),
        ] {
            let term = component.star(&SliceFunction::constant(unit.as_quaternion()))?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

/// Unique decomposition `f = f0 + f1 I + f2 J + f3 K` with slice-preserving
/// components. The component along a unit `e` is the scalar part of
/// `f_v * (-e)`.
pub fn decompose(f: &SliceFunction, basis: Basis) -> Result<Decomposition> {
    let fv = vector_part(f);
    let component = |unit: Quaternion| -> Result<SliceFunction> {
        let prod = fv.star(&SliceFunction::constant(-unit))?;
        Ok(scalar_part(&prod))
    };
    Ok(Decomposition {
        f0: scalar_part(f),
        f1: component(basis.i.as_quaternion())?,
        f2: component(basis.j.as_quaternion())?,
        f3: component(basis.k.as_quaternion())?,
        basis,
    })
}

/// The *-product assembled from the scalar-vector formula
/// `f0 g0 - <f_v, g_v>_* + f0 g_v + g0 f_v + f_v /\ g_v`.
///
/// Exists to cross-validate the stem-level product; the two routes agree
/// within evaluation tolerance.
pub fn star_product_sv(f: &SliceFunction, g: &SliceFunction) -> Result<SliceFunction> {
    let f0 = scalar_part(f);
    let g0 = scalar_part(g);
    let fv = vector_part(f);
    let gv = vector_part(g);
    let inner = star_scalar(&fv, &gv)?;
    let wedge = star_wedge(&fv, &gv)?;
    f0.star(&g0)?
        .sub(&inner)?
        .add(&f0.star(&gv)?)?
        .add(&g0.star(&fv)?)?
        .add(&wedge)
}

/// How the linear-dependence witness of a commuting pair was resolved.
#[derive(Clone, Debug)]
pub enum Witness {
    /// Real-coefficient polynomials `(alpha, beta)`, not both zero, with
    /// `alpha f_v + beta g_v = 0`.
    Pair(QuaternionPolynomial, QuaternionPolynomial),
    /// Inputs are not polynomial; only the boolean is decided.
    Unavailable,
    /// Domain without real points: a vanishing symmetrized vector part does
    /// not force the vector part to vanish there, so no witness is claimed.
    Indeterminate,
}

#[derive(Clone, Debug)]
pub struct CommuteReport {
    pub commutes: bool,
    /// Sup of the wedge over the test grid (or max wedge coefficient for
    /// polynomials).
    pub wedge_residual: f64,
    pub witness: Option<Witness>,
}

/// Decides `f * g = g * f` by testing `f /\ g = 0`, and extracts
/// slice-preserving linear-dependence witnesses in the polynomial case.
pub fn commutes(
    f: &SliceFunction,
    g: &SliceFunction,
    grid: &Grid,
    tol: f64,
) -> Result<CommuteReport> {
    let wedge = star_wedge(f, g)?;
    let (residual, scale) = match wedge.as_poly() {
        Some(p) => {
            let fs = f.as_poly().map(|p| p.max_coeff_norm()).unwrap_or(1.0);
            let gs = g.as_poly().map(|p| p.max_coeff_norm()).unwrap_or(1.0);
            (p.max_coeff_norm(), fs * gs)
        }
        None => {
            let fs = sup_norm(f, grid)?;
            let gs = sup_norm(g, grid)?;
            (sup_norm(&wedge, grid)?, fs * gs)
        }
    };
    let is_zero = residual <= tol * (1.0 + scale);
    if !is_zero {
        return Ok(CommuteReport {
            commutes: false,
            wedge_residual: residual,
            witness: None,
        });
    }

    let witness = match (f.as_poly(), g.as_poly()) {
        (Some(fp), Some(gp)) => {
            let fv = fp.vector_part();
            let gv = gp.vector_part();
            let coeff_tol = tol * (1.0 + fp.max_coeff_norm().max(gp.max_coeff_norm()));
            witness_for_polys(&fv, &gv, coeff_tol)
        }
        _ => {
            let fv = vector_part(f);
            if !f.domain().contains_real() || !g.domain().contains_real() {
                if fv.is_zero_fn(tol)? {
                    Witness::Pair(QuaternionPolynomial::one(), QuaternionPolynomial::zero())
                } else {
                    Witness::Indeterminate
                }
            } else {
                Witness::Unavailable
            }
        }
    };
    Ok(CommuteReport {
        commutes: true,
        wedge_residual: residual,
        witness: Some(witness),
    })
}

/// Component of `v` along `axis` as a real-coefficient polynomial.
fn real_component(v: &QuaternionPolynomial, axis: Quaternion) -> QuaternionPolynomial {
    QuaternionPolynomial::new(
        v.coeffs()
            .iter()
            .map(|c| Quaternion::real(c.vec().dot(axis)))
            .collect(),
    )
}

/// The proportionality witness from the vanishing wedge: with `l` the first
/// canonical component where `f_v` does not vanish, `(g_l, -f_l)` satisfies
/// `g_l f_v - f_l g_v = 0`. Degenerate vector parts get `(1, 0)` / `(0, 1)`.
fn witness_for_polys(fv: &QuaternionPolynomial, gv: &QuaternionPolynomial, tol: f64) -> Witness {
    if fv.max_coeff_norm() <= tol {
        return Witness::Pair(QuaternionPolynomial::one(), QuaternionPolynomial::zero());
    }
    if gv.max_coeff_norm() <= tol {
        return Witness::Pair(QuaternionPolynomial::zero(), QuaternionPolynomial::one());
    }
    for axis in [Quaternion::I, Quaternion::J, Quaternion::K] {
        let fl = real_component(fv, axis);
        if fl.max_coeff_norm() > tol {
            let gl = real_component(gv, axis);
            return Witness::Pair(gl, fl.neg());
        }
    }
    // Unreachable for a nonzero vector part; kept total.
    Witness::Unavailable
}

/// Grid test that both stem components are real-valued.
pub fn is_slice_preserving(f: &SliceFunction, tol: f64) -> Result<bool> {
    f.is_slice_preserving(tol)
}

/// Grid test that both stem components take values in `C_J`.
pub fn is_cj_preserving(
    f: &SliceFunction,
    j: crate::quaternion::ImaginaryUnit,
    tol: f64,
) -> Result<bool> {
    f.is_cj_preserving(j, tol)
}

/// Sup distance between two functions on the grid circularization; the
/// working definition of "equal within tol" for identity checks.
pub fn grid_distance(f: &SliceFunction, g: &SliceFunction, grid: &Grid) -> Result<f64> {
    sup_distance(f, g, grid)
}
