//! The *-exponential and its calculus: truncated series, closed forms,
//! the mu/nu coefficients, identity verification, classification, and the
//! sum-rule decision procedure.

mod classify;
mod sumrule;

pub use classify::{classify_exp, classify_exp_default, Classification, ExpClass};
pub use sumrule::{sum_rule, sum_rule_default, Necessity, SumRuleCase, SumRuleReport};

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic;
use crate::error::{Error, Result};
use crate::grid::{inf_norm, stem_table, sup_distance, sup_norm, CheckConfig, Grid};
use crate::intrinsic::{scalar_part, symmetrized, vector_part};
use crate::quaternion::{sphere_coords, Quaternion};
use crate::slicefn::{Expr, MuNuKind, SeriesKind, SliceFunction, TrigKind};
use crate::sqrt::{self, RealPolynomial};
use crate::tol::{SERIES_TERM_CAP, TAU_ALG};

/// Smallest `N` with `sup^(N+1)/(N+1)! * e^sup < tol`: the factorial tail
/// bound for truncating `sum f^{*n}/n!` after `N` terms when `|f| <= sup`
/// on the compact of interest.
pub fn choose_terms(sup: f64, tol: f64) -> Result<u32> {
    assert!(tol > 0.0, "series tolerance must be positive");
    if sup <= 0.0 {
        return Ok(0);
    }
    let ln_tol = tol.ln();
    let ln_sup = sup.ln();
    let mut ln_term = 0.0; // ln(sup^(n+1) / (n+1)!)
    for n in 0..=SERIES_TERM_CAP {
        ln_term += ln_sup - f64::from(n + 1).ln();
        if ln_term + sup < ln_tol {
            return Ok(n);
        }
    }
    Err(Error::SeriesCap {
        cap: SERIES_TERM_CAP,
        sup,
        tol,
    })
}

fn series_node(
    kind: SeriesKind,
    f: &SliceFunction,
    tol: f64,
    grid: &Grid,
) -> Result<SliceFunction> {
    let sup = sup_norm(f, grid)?;
    let terms = choose_terms(sup, tol)?;
    Ok(SliceFunction::from_parts(
        *f.domain(),
        Expr::Series {
            kind,
            inner: Arc::new(f.clone()),
            terms,
        },
    ))
}

/// Truncated `sum f^{*n}/n!` with the remainder certified on the
/// circularization of `grid`.
pub fn exp_star_series_on(f: &SliceFunction, tol: f64, grid: &Grid) -> Result<SliceFunction> {
    series_node(SeriesKind::Exp, f, tol, grid)
}

/// [`exp_star_series_on`] over the default grid of the domain of `f`.
pub fn exp_star_series(f: &SliceFunction, tol: f64) -> Result<SliceFunction> {
    exp_star_series_on(f, tol, &Grid::default_for(f.domain()))
}

/// Truncated `sum (-1)^n f^{*2n}/(2n)!`.
pub fn cos_star_on(f: &SliceFunction, tol: f64, grid: &Grid) -> Result<SliceFunction> {
    series_node(SeriesKind::Cos, f, tol, grid)
}

pub fn cos_star(f: &SliceFunction, tol: f64) -> Result<SliceFunction> {
    cos_star_on(f, tol, &Grid::default_for(f.domain()))
}

/// Truncated `sum (-1)^n f^{*(2n+1)}/(2n+1)!`.
pub fn sin_star_on(f: &SliceFunction, tol: f64, grid: &Grid) -> Result<SliceFunction> {
    series_node(SeriesKind::Sin, f, tol, grid)
}

pub fn sin_star(f: &SliceFunction, tol: f64) -> Result<SliceFunction> {
    sin_star_on(f, tol, &Grid::default_for(f.domain()))
}

/// Closed form `exp(f0) (mu(f) + nu(f) f_v)`, evaluated pointwise from the
/// stem of `f`.
pub fn exp_star_closed(f: &SliceFunction) -> SliceFunction {
    SliceFunction::from_parts(*f.domain(), Expr::ExpClosed(Arc::new(f.clone())))
}

/// Closed-form *-cosine.
pub fn cos_star_closed(f: &SliceFunction) -> SliceFunction {
    SliceFunction::from_parts(
        *f.domain(),
        Expr::TrigClosed {
            kind: TrigKind::Cos,
            inner: Arc::new(f.clone()),
        },
    )
}

/// Closed-form *-sine.
pub fn sin_star_closed(f: &SliceFunction) -> SliceFunction {
    SliceFunction::from_parts(
        *f.domain(),
        Expr::TrigClosed {
            kind: TrigKind::Sin,
            inner: Arc::new(f.clone()),
        },
    )
}

/// The factorization `exp*(f) = exp(f0) * exp*(f_v)`: returns the two
/// factors.
pub fn exp_star_factors(f: &SliceFunction) -> (SliceFunction, SliceFunction) {
    (
        exp_star_closed(&scalar_part(f)),
        exp_star_closed(&vector_part(f)),
    )
}

/// The slice-preserving coefficient `mu(f) = sum (-1)^m (f_v^s)^m/(2m)!`.
pub fn mu_fn(f: &SliceFunction) -> SliceFunction {
    SliceFunction::from_parts(
        *f.domain(),
        Expr::MuNu {
            which: MuNuKind::Mu,
            inner: Arc::new(f.clone()),
        },
    )
}

/// The slice-preserving coefficient `nu(f) = sum (-1)^m (f_v^s)^m/(2m+1)!`.
pub fn nu_fn(f: &SliceFunction) -> SliceFunction {
    SliceFunction::from_parts(
        *f.domain(),
        Expr::MuNu {
            which: MuNuKind::Nu,
            inner: Arc::new(f.clone()),
        },
    )
}

/// Values of `mu(f)`, `nu(f)` and `s = f_v^s` at one point; all three lie in
/// the same slice and satisfy `mu^2 + nu^2 s = 1`.
#[derive(Clone, Copy, Debug)]
pub struct MuNuValue {
    pub mu: Quaternion,
    pub nu: Quaternion,
    pub vector_sym: Quaternion,
}

/// Evaluates `mu(f)` and `nu(f)` at a point by the scalar entire series in
/// the commutative slice containing `f_v^s(point)`.
pub fn mu_nu(f: &SliceFunction, point: Quaternion) -> Result<MuNuValue> {
    let (alpha, beta, unit) = sphere_coords(point);
    if !f.domain().contains(alpha, beta) {
        return Err(Error::OutsideDomain { alpha, beta });
    }
    let stem = f.stem_at(alpha, beta)?;
    let sigma = stem.vector_part().vector_square_sigma();
    let (mu_c, nu_c) = analytic::mu_nu(sigma);
    let lift = |z: Complex64| -> Quaternion {
        match unit {
            Some(u) => Quaternion::real(z.re) + u.as_quaternion() * z.im,
            None => Quaternion::real(z.re),
        }
    };
    Ok(MuNuValue {
        mu: lift(mu_c),
        nu: lift(nu_c),
        vector_sym: lift(sigma),
    })
}

/// Square-root form `exp(f0) (cos(r) + sinc(r) f_v)` with `r` a global
/// slice-preserving square root of `f_v^s`. Only defined for polynomials
/// whose symmetrized vector part admits such a root; the error carries the
/// failing zero-structure condition.
pub fn exp_star_sqrtform(f: &SliceFunction) -> Result<SliceFunction> {
    let poly = f.as_poly().ok_or(Error::PolynomialRequired)?;
    let fv = poly.vector_part();
    let sym = RealPolynomial::from_quaternion_poly(&fv.symmetrized())?;
    if sym.is_zero() {
        return Err(Error::NoSquareRoot(
            "symmetrized vector part is identically zero".to_string(),
        ));
    }
    let root = sqrt::sqrt(&sym)?;
    Ok(SliceFunction::from_parts(
        *f.domain(),
        Expr::SqrtForm {
            scalar: Arc::new(SliceFunction::from_poly(poly.scalar_part())),
            vector: Arc::new(SliceFunction::from_poly(fv)),
            root: root.to_quaternion_poly(),
        },
    ))
}

/// Closed form for `exp*(f) * exp*(g)`:
/// `exp(f0) exp(g0) (mu_f mu_g - nu_f nu_g <f_v,g_v>_* + nu_f nu_g (f_v /\ g_v)
///  + mu_f nu_g g_v + mu_g nu_f f_v)`.
pub fn exp_product_closed(f: &SliceFunction, g: &SliceFunction) -> Result<SliceFunction> {
    let domain = f.domain().intersect(g.domain())?;
    Ok(SliceFunction::from_parts(
        domain,
        Expr::ExpProductClosed(Arc::new(f.clone()), Arc::new(g.clone())),
    ))
}

/// Independent pointwise evaluator for `exp*(f)` by explicit case analysis
/// on the sign of `s = f_v^s(point)`:
/// `1 + f_v` at `s = 0`, circular functions for `s > 0`, hyperbolic for
/// `s < 0`, and the principal complex branch on a slice for non-real `s`.
/// Used as an oracle against the series and mu/nu routes.
pub fn exp_star_at_cases(f: &SliceFunction, point: Quaternion) -> Result<Quaternion> {
    let f0 = scalar_part(f);
    let fv = vector_part(f);
    let s = symmetrized(&fv).evaluate(point)?;
    let fv_val = fv.evaluate(point)?;
    let f0_val = f0.evaluate(point)?;

    let exp_f0 = {
        let (a, b, unit) = sphere_coords(f0_val);
        let e = Complex64::new(a, b).exp();
        match unit {
            Some(u) => Quaternion::real(e.re) + u.as_quaternion() * e.im,
            None => Quaternion::real(e.re),
        }
    };

    let (a, b, unit) = sphere_coords(s);
    let body = if b <= TAU_ALG {
        if a.abs() <= TAU_ALG {
            Quaternion::ONE + fv_val
        } else if a > 0.0 {
            let x0 = a.sqrt();
            Quaternion::real(x0.cos()) + fv_val * (x0.sin() / x0)
        } else {
            let x0 = (-a).sqrt();
            Quaternion::real(x0.cosh()) + fv_val * (x0.sinh() / x0)
        }
    } else {
        let w = Complex64::new(a, b).sqrt();
        let cos_w = w.cos();
        let sinc_w = w.sin() / w;
        let j = unit.expect("non-real value has a unit").as_quaternion();
        let cos_q = Quaternion::real(cos_w.re) + j * cos_w.im;
        let sinc_q = Quaternion::real(sinc_w.re) + j * sinc_w.im;
        cos_q + sinc_q * fv_val
    };
    Ok(exp_f0 * body)
}

/// Residuals of the exponential identities, measured as exact sups over the
/// circularization of the configured grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    /// `(exp*(f))^s = exp(2 f0)`.
    pub symmetrized_eq: f64,
    /// `(exp*(f) + exp*(f^c))/2 = exp(f0) mu(f)`.
    pub even_part_eq: f64,
    /// `(exp*(f) - exp*(f^c))/2 = exp(f0) nu(f) f_v`.
    pub odd_part_eq: f64,
    /// `exp*(f) * exp*(-f) = 1`.
    pub inverse_eq: f64,
    /// `exp*(f^c) = (exp*(f))^c`.
    pub conjugation_eq: f64,
    /// `min |exp*(f)|` over the grid circularization; positive for a
    /// never-vanishing function.
    pub min_modulus: f64,
    /// Worst violation of the per-sphere bound
    /// `inf |exp*(f)| * sup |exp*(f)| >= exp(2 Re F1 of f0)`.
    pub never_vanishing_defect: f64,
    /// Max representation-formula residual of `exp*(f)` over randomized
    /// point/unit tuples, when such a spot check was run.
    #[serde(default)]
    pub representation_spot_check: Option<f64>,
    pub grid: Grid,
    pub tol: f64,
}

impl IdentityReport {
    pub fn max_identity_residual(&self) -> f64 {
        self.symmetrized_eq
            .max(self.even_part_eq)
            .max(self.odd_part_eq)
            .max(self.inverse_eq)
            .max(self.conjugation_eq)
    }

    pub fn passes(&self) -> bool {
        self.max_identity_residual() <= self.tol
            && self.min_modulus > 0.0
            && self.never_vanishing_defect <= self.tol
            && self.representation_spot_check.is_none_or(|r| r <= self.tol)
    }
}

/// Verifies the exponential identities for `f` on the configured grid.
pub fn verify_exp_identities(f: &SliceFunction, config: &CheckConfig) -> Result<IdentityReport> {
    let grid = &config.grid;
    let e = exp_star_closed(f);
    let e_conj_arg = exp_star_closed(&f.conjugate());
    let f0 = scalar_part(f);
    let fv = vector_part(f);
    let exp_f0 = exp_star_closed(&f0);

    let symmetrized_eq = sup_distance(&symmetrized(&e), &exp_star_closed(&f0.scale(2.0)), grid)?;

    let even_lhs = e.add(&e_conj_arg)?.scale(0.5);
    let even_rhs = exp_f0.star(&mu_fn(f))?;
    let even_part_eq = sup_distance(&even_lhs, &even_rhs, grid)?;

    let odd_lhs = e.sub(&e_conj_arg)?.scale(0.5);
    let odd_rhs = exp_f0.star(&nu_fn(f))?.star(&fv)?;
    let odd_part_eq = sup_distance(&odd_lhs, &odd_rhs, grid)?;

    let inverse_eq = sup_distance(
        &e.star(&exp_star_closed(&f.neg()))?,
        &SliceFunction::one(),
        grid,
    )?;

    let conjugation_eq = sup_distance(&e_conj_arg, &e.conjugate(), grid)?;

    let min_modulus = inf_norm(&e, grid)?;

    // Per sphere, the product of the extremal moduli dominates
    // exp(2 * Re F1(f0)) because the symmetrized function is exp(2 f0).
    let e_values = stem_table(&e, grid)?;
    let f0_values = stem_table(&f0, grid)?;
    let mut defect = 0.0_f64;
    for (ev, f0v) in e_values.iter().zip(&f0_values) {
        let bound = (2.0 * f0v.p.re()).exp();
        let product = ev.sphere_inf() * ev.sphere_sup();
        defect = defect.max(bound - product);
    }

    Ok(IdentityReport {
        symmetrized_eq,
        even_part_eq,
        odd_part_eq,
        inverse_eq,
        conjugation_eq,
        min_modulus,
        never_vanishing_defect: defect.max(0.0),
        representation_spot_check: None,
        grid: grid.clone(),
        tol: config.tol,
    })
}

/// [`verify_exp_identities`] with the default configuration for the domain
/// of `f`.
pub fn verify_exp_identities_default(f: &SliceFunction) -> Result<IdentityReport> {
    verify_exp_identities(f, &CheckConfig::default_for(f.domain()))
}
