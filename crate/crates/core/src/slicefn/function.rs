//! Slice functions and their stem-level evaluation.
//!
//! A [`SliceFunction`] pairs a conjugation-symmetric planar domain with an
//! expression whose stem `F = F1 + imath F2` can be evaluated at any
//! `(alpha, beta)` of the domain. Values at quaternion points come from the
//! slice formula `f(alpha + beta I) = F1 + I F2`. Polynomials are kept in
//! closed form so that sums, *-products and conjugates of polynomials stay
//! polynomials; everything else becomes a small expression tree evaluated
//! recursively.

use std::sync::Arc;

use num_complex::Complex64;

use crate::analytic;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::quaternion::{sphere_coords, ImaginaryUnit, Quaternion};
use crate::slicefn::domain::PlanarDomain;
use crate::slicefn::poly::QuaternionPolynomial;
use crate::slicefn::stem::{StemKahan, StemValue};
use crate::tol::TAU_EVAL;

/// Which complex entire function a composed built-in applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealKind {
    Exp,
    Sin,
    Cos,
}

impl RealKind {
    fn apply(self, z: Complex64) -> Complex64 {
        match self {
            RealKind::Exp => z.exp(),
            RealKind::Sin => z.sin(),
            RealKind::Cos => z.cos(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RealKind::Exp => "exp",
            RealKind::Sin => "sin",
            RealKind::Cos => "cos",
        }
    }
}

/// Which truncated *-power series a series evaluator sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Exp,
    Cos,
    Sin,
}

/// Closed-form trigonometric evaluators (scalar/vector split).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuNuKind {
    Mu,
    Nu,
}

/// Coarse classification of the representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    Polynomial,
    Elementary,
    Composite,
}

#[derive(Clone, Debug)]
pub(crate) enum Expr {
    Poly(QuaternionPolynomial),
    /// `premul * fn(inner)` for a slice-preserving `inner`; the value of the
    /// complex entire function acts centrally, the constant multiplies it.
    Compose {
        kind: RealKind,
        inner: Arc<SliceFunction>,
        premul: Quaternion,
    },
    /// The locally constant function with stem `imath` on the punctured
    /// plane: `tau(alpha + beta I) = I` for `beta > 0`.
    Tau,
    Add(Arc<SliceFunction>, Arc<SliceFunction>),
    Scale(Arc<SliceFunction>, f64),
    Star(Arc<SliceFunction>, Arc<SliceFunction>),
    Conj(Arc<SliceFunction>),
    /// Truncated `sum f^{*n}/n!` (or the alternating even/odd variants),
    /// summed pointwise in the stem algebra with compensated accumulation.
    Series {
        kind: SeriesKind,
        inner: Arc<SliceFunction>,
        terms: u32,
    },
    /// `exp(f0) (mu(f) + nu(f) f_v)`, evaluated pointwise from the stem of
    /// the wrapped function.
    ExpClosed(Arc<SliceFunction>),
    TrigClosed {
        kind: TrigKind,
        inner: Arc<SliceFunction>,
    },
    /// The slice-preserving coefficient `mu(f)` or `nu(f)`.
    MuNu {
        which: MuNuKind,
        inner: Arc<SliceFunction>,
    },
    /// Five-term closed form for `exp*(f) * exp*(g)`.
    ExpProductClosed(Arc<SliceFunction>, Arc<SliceFunction>),
    /// `exp(f0) (cos(r) + sinc(r) f_v)` for a global square root `r` of the
    /// symmetrized vector part; `root` has real coefficients.
    SqrtForm {
        scalar: Arc<SliceFunction>,
        vector: Arc<SliceFunction>,
        root: QuaternionPolynomial,
    },
}

#[derive(Clone, Debug)]
pub struct SliceFunction {
    domain: PlanarDomain,
    expr: Expr,
}

impl SliceFunction {
    pub(crate) fn from_parts(domain: PlanarDomain, expr: Expr) -> SliceFunction {
        SliceFunction { domain, expr }
    }

    pub(crate) fn expr(&self) -> &Expr {
        &self.expr
    }

    // ---- constructors -------------------------------------------------

    pub fn from_poly(poly: QuaternionPolynomial) -> SliceFunction {
        SliceFunction {
            domain: PlanarDomain::whole_plane(),
            expr: Expr::Poly(poly),
        }
    }

    pub fn from_coeffs(coeffs: Vec<Quaternion>) -> SliceFunction {
        SliceFunction::from_poly(QuaternionPolynomial::new(coeffs))
    }

    pub fn constant(a: Quaternion) -> SliceFunction {
        SliceFunction::from_poly(QuaternionPolynomial::constant(a))
    }

    pub fn zero() -> SliceFunction {
        SliceFunction::from_poly(QuaternionPolynomial::zero())
    }

    pub fn one() -> SliceFunction {
        SliceFunction::constant(Quaternion::ONE)
    }

    /// The identity function `q`.
    pub fn identity() -> SliceFunction {
        SliceFunction::from_poly(QuaternionPolynomial::identity())
    }

    pub fn real_poly(coeffs: &[f64]) -> SliceFunction {
        SliceFunction::from_poly(QuaternionPolynomial::from_reals(coeffs))
    }

    /// `tau`, the sign-of-slice function on the punctured plane.
    pub fn tau() -> SliceFunction {
        SliceFunction {
            domain: PlanarDomain::plane_minus_real_axis(),
            expr: Expr::Tau,
        }
    }

    /// `premul * kind(q)`: the elementary slice-preserving stems, optionally
    /// multiplied by a constant.
    pub fn builtin(kind: RealKind, premul: Quaternion) -> SliceFunction {
        SliceFunction {
            domain: PlanarDomain::whole_plane(),
            expr: Expr::Compose {
                kind,
                inner: Arc::new(SliceFunction::identity()),
                premul,
            },
        }
    }

    pub fn exp_of_q() -> SliceFunction {
        SliceFunction::builtin(RealKind::Exp, Quaternion::ONE)
    }

    pub fn cos_of_q() -> SliceFunction {
        SliceFunction::builtin(RealKind::Cos, Quaternion::ONE)
    }

    pub fn sin_of_q() -> SliceFunction {
        SliceFunction::builtin(RealKind::Sin, Quaternion::ONE)
    }

    /// `premul * kind(inner)` for a slice-preserving `inner`. Fails when
    /// `inner` is not slice-preserving (checked coefficientwise for
    /// polynomials, on the default sample grid otherwise).
    pub fn compose_real(
        kind: RealKind,
        inner: &SliceFunction,
        premul: Quaternion,
    ) -> Result<SliceFunction> {
        if !inner.is_slice_preserving(TAU_EVAL)? {
            return Err(Error::NotSlicePreserving);
        }
        Ok(SliceFunction {
            domain: inner.domain,
            expr: Expr::Compose {
                kind,
                inner: Arc::new(inner.clone()),
                premul,
            },
        })
    }

    // ---- combinators ---------------------------------------------------

    pub fn add(&self, rhs: &SliceFunction) -> Result<SliceFunction> {
        let domain = self.domain.intersect(&rhs.domain)?;
        if let (Expr::Poly(a), Expr::Poly(b)) = (&self.expr, &rhs.expr) {
            return Ok(SliceFunction {
                domain,
                expr: Expr::Poly(a.add(b)),
            });
        }
        Ok(SliceFunction {
            domain,
            expr: Expr::Add(Arc::new(self.clone()), Arc::new(rhs.clone())),
        })
    }

    pub fn sub(&self, rhs: &SliceFunction) -> Result<SliceFunction> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> SliceFunction {
        self.scale(-1.0)
    }

    pub fn scale(&self, s: f64) -> SliceFunction {
        match &self.expr {
            Expr::Poly(p) => SliceFunction {
                domain: self.domain,
                expr: Expr::Poly(p.scale(s)),
            },
            _ => SliceFunction {
                domain: self.domain,
                expr: Expr::Scale(Arc::new(self.clone()), s),
            },
        }
    }

    /// *-product. Polynomial factors collapse to the coefficient
    /// convolution; anything else evaluates the stem product pointwise.
    pub fn star(&self, rhs: &SliceFunction) -> Result<SliceFunction> {
        let domain = self.domain.intersect(&rhs.domain)?;
        if let (Expr::Poly(a), Expr::Poly(b)) = (&self.expr, &rhs.expr) {
            return Ok(SliceFunction {
                domain,
                expr: Expr::Poly(a.star(b)),
            });
        }
        Ok(SliceFunction {
            domain,
            expr: Expr::Star(Arc::new(self.clone()), Arc::new(rhs.clone())),
        })
    }

    /// The same function on the intersection of its domain with `window`.
    pub fn restricted(&self, window: &PlanarDomain) -> Result<SliceFunction> {
        Ok(SliceFunction {
            domain: self.domain.intersect(window)?,
            expr: self.expr.clone(),
        })
    }

    /// Conjugate function: both stem components conjugated pointwise.
    /// An involution; conjugating twice unwraps.
    pub fn conjugate(&self) -> SliceFunction {
        match &self.expr {
            Expr::Poly(p) => SliceFunction {
                domain: self.domain,
                expr: Expr::Poly(p.conj_coeffs()),
            },
            Expr::Conj(inner) => (**inner).clone(),
            _ => SliceFunction {
                domain: self.domain,
                expr: Expr::Conj(Arc::new(self.clone())),
            },
        }
    }

    // ---- inspection ----------------------------------------------------

    pub fn domain(&self) -> &PlanarDomain {
        &self.domain
    }

    pub fn tag(&self) -> Tag {
        match &self.expr {
            Expr::Poly(_) => Tag::Polynomial,
            Expr::Tau | Expr::Compose { .. } => Tag::Elementary,
            _ => Tag::Composite,
        }
    }

    pub fn as_poly(&self) -> Option<&QuaternionPolynomial> {
        match &self.expr {
            Expr::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Truncation depth when the outermost node is a series evaluator.
    pub fn series_depth(&self) -> Option<u32> {
        match &self.expr {
            Expr::Series { terms, .. } => Some(*terms),
            _ => None,
        }
    }

    // ---- evaluation ----------------------------------------------------

    /// Stem value at `alpha + imath beta`. Negative `beta` is served through
    /// the stem symmetry `F(conj z) = conj(F(z))`.
    pub fn stem_at(&self, alpha: f64, beta: f64) -> Result<StemValue> {
        if beta < 0.0 {
            let v = self.stem_eval(alpha, -beta)?;
            Ok(StemValue::new(v.p, -v.q))
        } else {
            self.stem_eval(alpha, beta)
        }
    }

    fn stem_eval(&self, alpha: f64, beta: f64) -> Result<StemValue> {
        match &self.expr {
            Expr::Poly(p) => Ok(p.stem_at(alpha, beta)),
            Expr::Compose {
                kind,
                inner,
                premul,
            } => {
                let w = inner.stem_eval(alpha, beta)?.complex_part();
                let v = kind.apply(w);
                Ok(StemValue::new(premul.scale(v.re), premul.scale(v.im)))
            }
            Expr::Tau => {
                if beta == 0.0 {
                    Err(Error::OutsideDomain { alpha, beta })
                } else {
                    Ok(StemValue::new(Quaternion::ZERO, Quaternion::ONE))
                }
            }
            Expr::Add(f, g) => Ok(f.stem_eval(alpha, beta)? + g.stem_eval(alpha, beta)?),
            Expr::Scale(f, s) => Ok(f.stem_eval(alpha, beta)?.scale(*s)),
            Expr::Star(f, g) => Ok(f.stem_eval(alpha, beta)? * g.stem_eval(alpha, beta)?),
            Expr::Conj(f) => Ok(f.stem_eval(alpha, beta)?.conj_components()),
            Expr::Series { kind, inner, terms } => {
                let f = inner.stem_eval(alpha, beta)?;
                Ok(eval_series(*kind, f, *terms))
            }
            Expr::ExpClosed(inner) => {
                let u = inner.stem_eval(alpha, beta)?;
                Ok(exp_closed_stem(u))
            }
            Expr::TrigClosed { kind, inner } => {
                let u = inner.stem_eval(alpha, beta)?;
                Ok(trig_closed_stem(*kind, u))
            }
            Expr::MuNu { which, inner } => {
                let u = inner.stem_eval(alpha, beta)?;
                let sigma = u.vector_square_sigma();
                let (mu, nu) = analytic::mu_nu(sigma);
                let value = match which {
                    MuNuKind::Mu => mu,
                    MuNuKind::Nu => nu,
                };
                Ok(StemValue::from_complex(value))
            }
            Expr::ExpProductClosed(f, g) => {
                let uf = f.stem_eval(alpha, beta)?;
                let ug = g.stem_eval(alpha, beta)?;
                Ok(exp_product_closed_stem(uf, ug))
            }
            Expr::SqrtForm {
                scalar,
                vector,
                root,
            } => {
                let s0 = scalar.stem_eval(alpha, beta)?.complex_part();
                let v = vector.stem_eval(alpha, beta)?;
                let w = root.stem_at(alpha, beta).complex_part();
                let body = StemValue::ONE.mul_complex(w.cos()) + v.mul_complex(analytic::sinc(w));
                Ok(body.mul_complex(s0.exp()))
            }
        }
    }

    /// Pointwise evaluation `f(a) = F1 + I F2` where `a = alpha + beta I`.
    /// Real points return `F1(alpha, 0)`.
    pub fn evaluate(&self, a: Quaternion) -> Result<Quaternion> {
        let (alpha, beta, unit) = sphere_coords(a);
        if !self.domain.contains(alpha, beta) {
            return Err(Error::OutsideDomain { alpha, beta });
        }
        let v = self.stem_eval(alpha, beta)?;
        Ok(match unit {
            Some(i) => v.p + i.as_quaternion() * v.q,
            None => v.p,
        })
    }

    // ---- pointwise predicates -------------------------------------------

    /// Grid surrogate for "identically zero": coefficientwise for
    /// polynomials, sup of the stem norm over the default sample grid
    /// otherwise.
    pub fn is_zero_fn(&self, tol: f64) -> Result<bool> {
        match &self.expr {
            Expr::Poly(p) => Ok(p.max_coeff_norm() <= tol),
            _ => {
                let grid = Grid::default_for(&self.domain);
                let mut sup = 0.0_f64;
                for &(a, b) in grid.points() {
                    sup = sup.max(self.stem_at(a, b)?.norm());
                }
                Ok(sup <= tol)
            }
        }
    }

    /// True when both stem components take real values (within `tol`).
    pub fn is_slice_preserving(&self, tol: f64) -> Result<bool> {
        match &self.expr {
            Expr::Poly(p) => Ok(p.max_imaginary_residual() <= tol),
            _ => {
                let grid = Grid::default_for(&self.domain);
                for &(a, b) in grid.points() {
                    let v = self.stem_at(a, b)?;
                    if v.p.vec().norm() > tol || v.q.vec().norm() > tol {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// True when both stem components take values in the plane spanned by 1
    /// and `axis`.
    pub fn is_cj_preserving(&self, axis: ImaginaryUnit, tol: f64) -> Result<bool> {
        match &self.expr {
            Expr::Poly(p) => Ok(p.coeffs().iter().all(|c| c.cj_residual(axis) <= tol)),
            _ => {
                let grid = Grid::default_for(&self.domain);
                for &(a, b) in grid.points() {
                    let v = self.stem_at(a, b)?;
                    if v.p.cj_residual(axis) > tol || v.q.cj_residual(axis) > tol {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Detects a common imaginary axis for all stem values, i.e. the `J`
    /// with `f` in the `C_J`-preserving class, if one exists. The returned
    /// unit carries the canonical sign.
    pub fn detect_cj_axis(&self, tol: f64) -> Result<Option<ImaginaryUnit>> {
        let mut directions: Vec<Quaternion> = Vec::new();
        match &self.expr {
            Expr::Poly(p) => {
                for c in p.coeffs() {
                    directions.push(c.vec());
                }
            }
            _ => {
                let grid = Grid::default_for(&self.domain);
                for &(a, b) in grid.points() {
                    let v = self.stem_at(a, b)?;
                    directions.push(v.p.vec());
                    directions.push(v.q.vec());
                }
            }
        }
        let scale = directions.iter().map(|d| d.norm()).fold(0.0, f64::max);
        if scale <= tol {
            // Slice-preserving; any axis works, report none.
            return Ok(None);
        }
        let principal = directions
            .iter()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap();
        let axis = match ImaginaryUnit::from_vector_part(principal) {
            Some(u) => u,
            None => return Ok(None),
        };
        let threshold = tol * (1.0 + scale);
        for d in &directions {
            let along = axis.as_quaternion().scale(d.dot(axis.as_quaternion()));
            if (*d - along).norm() > threshold {
                return Ok(None);
            }
        }
        Ok(Some(axis.canonical_sign()))
    }
}

/// Residual of the representation formula at `(alpha, beta)` for the pair of
/// units `(I, J)`:
/// `|f(alpha + beta J) - (1 - JI)/2 f(alpha + beta I) - (1 + JI)/2 f(alpha - beta I)|`.
pub fn representation_check(
    f: &SliceFunction,
    alpha: f64,
    beta: f64,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
) -> Result<f64> {
    let iq = i.as_quaternion();
    let jq = j.as_quaternion();
    let at = |unit: Quaternion, sign: f64| -> Quaternion {
        Quaternion::real(alpha) + unit.scale(sign * beta)
    };
    let f_j = f.evaluate(at(jq, 1.0))?;
    let f_plus = f.evaluate(at(iq, 1.0))?;
    let f_minus = f.evaluate(at(iq, -1.0))?;
    let half_minus = (Quaternion::ONE - jq * iq).scale(0.5);
    let half_plus = (Quaternion::ONE + jq * iq).scale(0.5);
    Ok((f_j - (half_minus * f_plus + half_plus * f_minus)).norm())
}

// ---- pointwise closed forms ------------------------------------------------

/// Truncated series in the stem algebra. Terms are accumulated with
/// compensation; `terms` bounds the *-power index.
fn eval_series(kind: SeriesKind, f: StemValue, terms: u32) -> StemValue {
    let mut acc = StemKahan::default();
    let mut power = StemValue::ONE; // f^n / n!
    for n in 0..=terms {
        if n > 0 {
            power = (power * f).scale(1.0 / n as f64);
        }
        match kind {
            SeriesKind::Exp => acc.add(power),
            SeriesKind::Cos if n % 2 == 0 => {
                let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
                acc.add(power.scale(sign));
            }
            SeriesKind::Sin if n % 2 == 1 => {
                let sign = if ((n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                acc.add(power.scale(sign));
            }
            _ => {}
        }
    }
    acc.total()
}

/// `exp` of a stem value via the scalar/vector split: the complex scalar
/// part exponentiates centrally, the vector part contributes
/// `mu + nu * v` with `mu`, `nu` the entire series in `sigma = -v^2`.
fn exp_closed_stem(u: StemValue) -> StemValue {
    let u0 = u.complex_part();
    let v = u.vector_part();
    let sigma = v.vector_square_sigma();
    let (mu, nu) = analytic::mu_nu(sigma);
    (StemValue::ONE.mul_complex(mu) + v.mul_complex(nu)).mul_complex(u0.exp())
}

fn trig_closed_stem(kind: TrigKind, u: StemValue) -> StemValue {
    let u0 = u.complex_part();
    let v = u.vector_part();
    let sigma = v.vector_square_sigma();
    // cos(v) = ch(sigma), sin(v) = sh(sigma) v with ch, sh the
    // hyperbolic-type entire series in sigma.
    let (ch, sh) = analytic::cosh_pair(sigma);
    match kind {
        TrigKind::Cos => StemValue::ONE.mul_complex(u0.cos() * ch) + v.mul_complex(-u0.sin() * sh),
        TrigKind::Sin => StemValue::ONE.mul_complex(u0.sin() * ch) + v.mul_complex(u0.cos() * sh),
    }
}

/// Closed form of `exp*(f) * exp*(g)` at the stem level:
/// `exp(f0) exp(g0) (mu_f mu_g - nu_f nu_g <fv,gv> + nu_f nu_g fv /\ gv
///  + mu_f nu_g gv + mu_g nu_f fv)`.
fn exp_product_closed_stem(uf: StemValue, ug: StemValue) -> StemValue {
    let f0 = uf.complex_part();
    let g0 = ug.complex_part();
    let fv = uf.vector_part();
    let gv = ug.vector_part();
    let (mu_f, nu_f) = analytic::mu_nu(fv.vector_square_sigma());
    let (mu_g, nu_g) = analytic::mu_nu(gv.vector_square_sigma());
    let fv_gv = fv * gv;
    let gv_fv = gv * fv;
    // <fv, gv>_* = -(fv * gv)_0 since gv^c = -gv.
    let inner = -fv_gv.complex_part();
    let wedge = (fv_gv - gv_fv).scale(0.5);
    let scalar_term = StemValue::ONE.mul_complex(mu_f * mu_g - nu_f * nu_g * inner);
    (scalar_term
        + wedge.mul_complex(nu_f * nu_g)
        + gv.mul_complex(mu_f * nu_g)
        + fv.mul_complex(mu_g * nu_f))
    .mul_complex((f0 + g0).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;

    #[test]
    fn evaluate_identity_and_square() {
        let id = SliceFunction::identity();
        let pt = Quaternion::new(1.0, 0.0, 2.0, 0.0);
        assert_eq!(id.evaluate(pt).unwrap(), pt);

        let sq =
            SliceFunction::from_coeffs(vec![Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE]);
        assert!((sq.evaluate(I).unwrap() - Quaternion::real(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn evaluate_q_plus_i_at_j() {
        let f = SliceFunction::from_coeffs(vec![I, Quaternion::ONE]);
        let value = f.evaluate(J).unwrap();
        assert!((value - (J + I)).norm() < 1e-15);
    }

    #[test]
    fn star_unit_is_identity() {
        let f = SliceFunction::from_coeffs(vec![I, Quaternion::ONE, J]);
        let prod = f.star(&SliceFunction::one()).unwrap();
        assert_eq!(prod.as_poly().unwrap(), f.as_poly().unwrap());
    }

    #[test]
    fn tau_errors_on_real_axis() {
        let t = SliceFunction::tau();
        assert!(t.evaluate(Quaternion::real(1.0)).is_err());
        let v = t.evaluate(Quaternion::new(0.0, 0.0, 3.0, 0.0)).unwrap();
        assert!((v - J).norm() < 1e-15);
        let w = t.evaluate(Quaternion::new(0.0, 0.0, -3.0, 0.0)).unwrap();
        assert!((w + J).norm() < 1e-15);
    }

    #[test]
    fn representation_formula_examples() {
        // J = I collapses to an exact identity.
        let f =
            SliceFunction::from_coeffs(vec![Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE]);
        let r = representation_check(&f, 1.0, 1.0, ImaginaryUnit::I, ImaginaryUnit::I).unwrap();
        assert!(r < 1e-14);
        // q^2 at alpha = beta = 1 with I = i, J = j.
        let r = representation_check(&f, 1.0, 1.0, ImaginaryUnit::I, ImaginaryUnit::J).unwrap();
        assert!(r < 1e-14, "residual {r}");
        // Linear functions satisfy it exactly.
        let lin = SliceFunction::identity();
        let r = representation_check(&lin, 0.3, 0.7, ImaginaryUnit::K, ImaginaryUnit::J).unwrap();
        assert!(r < 1e-15);
    }

    #[test]
    fn builtin_cos_matches_complex_cos_on_slices() {
        let f = SliceFunction::cos_of_q();
        // cos at a real point.
        let v = f.evaluate(Quaternion::real(0.5)).unwrap();
        assert!((v - Quaternion::real(0.5f64.cos())).norm() < 1e-15);
        // cos on the j-slice equals the complex cosine transported by j.
        let z = Complex64::new(0.4, 1.3).cos();
        let v = f.evaluate(Quaternion::new(0.4, 0.0, 1.3, 0.0)).unwrap();
        assert!((v - (Quaternion::real(z.re) + J * z.im)).norm() < 1e-14);
    }

    #[test]
    fn compose_rejects_non_slice_preserving_inner() {
        let bad = SliceFunction::from_coeffs(vec![I, Quaternion::ONE]);
        assert!(matches!(
            SliceFunction::compose_real(RealKind::Cos, &bad, Quaternion::ONE),
            Err(Error::NotSlicePreserving)
        ));
    }

    #[test]
    fn predicates() {
        let f = SliceFunction::exp_of_q();
        assert!(f.is_slice_preserving(1e-9).unwrap());

        let g = SliceFunction::from_coeffs(vec![I, Quaternion::ONE]);
        assert!(!g.is_slice_preserving(1e-9).unwrap());
        assert!(g.is_cj_preserving(ImaginaryUnit::I, 1e-9).unwrap());
        assert!(!g.is_cj_preserving(ImaginaryUnit::J, 1e-9).unwrap());

        // q (i + j) is C_u-preserving for u = (i+j)/sqrt(2).
        let h = SliceFunction::from_coeffs(vec![Quaternion::ZERO, I + J]);
        let axis = h.detect_cj_axis(1e-9).unwrap().unwrap();
        let expected = (I + J).scale(1.0 / 2.0f64.sqrt());
        assert!((axis.as_quaternion() - expected).norm() < 1e-12);
    }

    #[test]
    fn conjugate_is_involution() {
        let f = SliceFunction::from_coeffs(vec![I, Quaternion::ONE]);
        let back = f.conjugate().conjugate();
        assert_eq!(back.as_poly().unwrap(), f.as_poly().unwrap());

        let t = SliceFunction::tau();
        let back = t.conjugate().conjugate();
        let v = back.evaluate(Quaternion::new(1.0, 2.0, 0.0, 0.0)).unwrap();
        let w = t.evaluate(Quaternion::new(1.0, 2.0, 0.0, 0.0)).unwrap();
        assert!((v - w).norm() < 1e-15);
    }

    #[test]
    fn restriction_narrows_the_domain() {
        let f = SliceFunction::identity()
            .restricted(&PlanarDomain::rectangle(-1.0, 1.0, 1.0))
            .unwrap();
        assert!(f.evaluate(Quaternion::new(0.5, 0.0, 0.5, 0.0)).is_ok());
        assert!(matches!(
            f.evaluate(Quaternion::real(3.0)),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn stem_symmetry_reflection() {
        let f = SliceFunction::from_coeffs(vec![I, Quaternion::ONE, J]);
        let up = f.stem_at(0.7, 0.4).unwrap();
        let down = f.stem_at(0.7, -0.4).unwrap();
        assert!((up.p - down.p).norm() < 1e-15);
        assert!((up.q + down.q).norm() < 1e-15);
    }
}
