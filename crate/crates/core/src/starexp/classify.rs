//! Classification of `exp*(f)`: slice-preserving, `C_J`-preserving, or
//! neither.
//!
//! `exp*(f)` preserves all slices exactly when `f_v` vanishes or `f_v^s` is
//! a constant of the form `n^2 pi^2` (a zero of `nu`); it lands in a single
//! `C_J` exactly when `f_v` is `C_J`-valued and not one of those constants.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::{stem_table, CheckConfig, Grid};
use crate::intrinsic::{symmetrized, vector_part};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::slicefn::{SliceFunction, StemValue};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "axis", rename_all = "kebab-case")]
pub enum ExpClass {
    SlicePreserving,
    CjPreserving(ImaginaryUnit),
    Generic,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub class: ExpClass,
    /// `f_v` identically zero (grid surrogate).
    pub vector_part_zero: bool,
    /// Constant value of `f_v^s` when the grid test finds one.
    pub vector_sym_constant: Option<f64>,
    /// `n` with `f_v^s = n^2 pi^2` when the constant lies in the zero set
    /// of `nu`.
    pub zeta_index: Option<u32>,
}

/// Grid test for "this slice-preserving function is a real constant";
/// returns the constant. Deviation is measured against the full stem value,
/// so non-real or non-constant stems both fail.
pub(crate) fn constant_real_value(f: &SliceFunction, grid: &Grid, tol: f64) -> Result<Option<f64>> {
    let values = stem_table(f, grid)?;
    let mean = values.iter().map(|v| v.p.re()).sum::<f64>() / values.len() as f64;
    let target = StemValue::from_quaternion(Quaternion::real(mean));
    let max_dev = values
        .iter()
        .map(|&v| (v - target).norm())
        .fold(0.0, f64::max);
    if max_dev <= tol * (1.0 + mean.abs()) {
        Ok(Some(mean))
    } else {
        Ok(None)
    }
}

/// `n >= 1` with `value = n^2 pi^2` within tolerance.
pub(crate) fn zeta_index(value: f64, tol: f64) -> Option<u32> {
    if value <= 0.0 {
        return None;
    }
    let n = (value.sqrt() / std::f64::consts::PI).round();
    if n < 1.0 {
        return None;
    }
    let target = n * n * std::f64::consts::PI * std::f64::consts::PI;
    if (value - target).abs() <= tol * (1.0 + value.abs()) {
        Some(n as u32)
    } else {
        None
    }
}

/// Decides which preservation class `exp*(f)` falls into.
pub fn classify_exp(f: &SliceFunction, config: &CheckConfig) -> Result<Classification> {
    let fv = vector_part(f);
    if fv.is_zero_fn(config.tol)? {
        return Ok(Classification {
            class: ExpClass::SlicePreserving,
            vector_part_zero: true,
            vector_sym_constant: None,
            zeta_index: None,
        });
    }
    let sym = symmetrized(&fv);
    let constant = constant_real_value(&sym, &config.grid, config.tol)?;
    if let Some(value) = constant {
        if let Some(n) = zeta_index(value, config.tol) {
            return Ok(Classification {
                class: ExpClass::SlicePreserving,
                vector_part_zero: false,
                vector_sym_constant: Some(value),
                zeta_index: Some(n),
            });
        }
    }
    if let Some(axis) = fv.detect_cj_axis(config.tol)? {
        return Ok(Classification {
            class: ExpClass::CjPreserving(axis),
            vector_part_zero: false,
            vector_sym_constant: constant,
            zeta_index: None,
        });
    }
    Ok(Classification {
        class: ExpClass::Generic,
        vector_part_zero: false,
        vector_sym_constant: constant,
        zeta_index: None,
    })
}

/// [`classify_exp`] with the default configuration for the domain of `f`.
pub fn classify_exp_default(f: &SliceFunction) -> Result<Classification> {
    classify_exp(f, &CheckConfig::default_for(f.domain()))
}
