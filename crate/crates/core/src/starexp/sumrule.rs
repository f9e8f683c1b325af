//! Decision procedure for `exp*(f + g) = exp*(f) * exp*(g)`.
//!
//! The equality holds exactly in two regimes: (i) the vector parts are
//! linearly dependent over the slice-preserving functions (so `f` and `g`
//! commute), or (ii) the Pythagorean-type case with constant
//! `f_v^s = n^2 pi^2`, `g_v^s = m^2 pi^2`, `(f+g)_v^s = p^2 pi^2` and
//! `n + m = p (mod 2)`. The checker predicts from the structure and
//! independently measures the residual of the two sides on a grid.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::{sup_distance, sup_norm, CheckConfig};
use crate::intrinsic::{commutes, star_scalar, symmetrized, vector_part};
use crate::slicefn::SliceFunction;
use crate::starexp::classify::{constant_real_value, zeta_index};
use crate::starexp::{exp_product_closed, exp_star_closed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumRuleCase {
    /// Vector parts linearly dependent (the functions commute).
    LinearDependent,
    /// Case (ii): all three symmetrized vector parts constant in the zero
    /// set of `nu`, with the parity condition satisfied.
    Pythagorean,
    /// Neither sufficient condition holds.
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Necessity {
    /// Domain contains real points: prediction is necessary and sufficient.
    Full,
    /// No real points: the structural conditions remain sufficient but the
    /// failure prediction is not a proof of inequality.
    SufficientOnly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SumRuleReport {
    pub case: SumRuleCase,
    pub commutes: bool,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub p: Option<u32>,
    /// Constant value of `<f_v, g_v>_*` when the grid test finds one.
    pub inner: Option<f64>,
    pub parity_ok: Option<bool>,
    pub predicted_equal: bool,
    pub observed_equal: bool,
    /// Grid sup of `|exp*(f+g) - exp*(f) * exp*(g)|`.
    pub numeric_residual: f64,
    pub residual_tol: f64,
    /// Prediction and measurement agree.
    pub agreement: bool,
    pub necessity: Necessity,
}

/// Runs the sum-rule decision procedure for `f`, `g` on the configured grid.
pub fn sum_rule(
    f: &SliceFunction,
    g: &SliceFunction,
    config: &CheckConfig,
) -> Result<SumRuleReport> {
    let grid = &config.grid;
    let tol = config.tol;

    let commute_report = commutes(f, g, grid, tol)?;
    let fv = vector_part(f);
    let gv = vector_part(g);
    let sum = f.add(g)?;

    let zeta_of = |h: &SliceFunction| -> Result<(Option<f64>, Option<u32>)> {
        let constant = constant_real_value(&symmetrized(h), grid, tol)?;
        let index = constant.and_then(|value| zeta_index(value, tol));
        Ok((constant, index))
    };
    let (_, n) = zeta_of(&fv)?;
    let (_, m) = zeta_of(&gv)?;
    let (_, p) = zeta_of(&vector_part(&sum))?;
    let inner = constant_real_value(&star_scalar(&fv, &gv)?, grid, tol)?;

    let parity_ok = match (n, m, p) {
        (Some(n), Some(m), Some(p)) => Some((n + m) % 2 == p % 2),
        _ => None,
    };

    let case = if commute_report.commutes {
        SumRuleCase::LinearDependent
    } else if parity_ok == Some(true) {
        SumRuleCase::Pythagorean
    } else {
        SumRuleCase::Fails
    };
    let predicted_equal = !matches!(case, SumRuleCase::Fails);

    let lhs = exp_star_closed(&sum);
    let rhs = exp_product_closed(f, g)?;
    let numeric_residual = sup_distance(&lhs, &rhs, grid)?;
    let scale = sup_norm(&rhs, grid)?;
    let residual_tol = tol.max(1e-8) * (1.0 + scale);
    let observed_equal = numeric_residual <= residual_tol;

    let necessity = if sum.domain().contains_real() {
        Necessity::Full
    } else {
        Necessity::SufficientOnly
    };

    Ok(SumRuleReport {
        case,
        commutes: commute_report.commutes,
        n,
        m,
        p,
        inner,
        parity_ok,
        predicted_equal,
        observed_equal,
        numeric_residual,
        residual_tol,
        agreement: predicted_equal == observed_equal,
        necessity,
    })
}

/// [`sum_rule`] with the default configuration over the common domain.
pub fn sum_rule_default(f: &SliceFunction, g: &SliceFunction) -> Result<SumRuleReport> {
    let domain = f.domain().intersect(g.domain())?;
    sum_rule(f, g, &CheckConfig::default_for(&domain))
}
