//! Machine-readable reports emitted by the command-line front end.

use serde::{Deserialize, Serialize};

use crate::grid::Grid;
use crate::quaternion::Quaternion;
use crate::sqrt::SqrtCheck;
use crate::starexp::{Classification, IdentityReport, SumRuleReport};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalReport {
    pub point: Quaternion,
    pub values: Vec<Quaternion>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpReport {
    /// Truncation depth of the series route.
    pub series_terms: Option<u32>,
    /// Grid sup of |series - closed| when the series route was available.
    pub dual_path_residual: Option<f64>,
    /// Rounding envelope for the series route: eps * sup * e^sup. Residuals
    /// below it carry no information about the mathematics.
    pub dual_path_envelope: Option<f64>,
    /// Why the series route was skipped, when it was.
    pub series_skipped: Option<String>,
    /// Whether the square-root form applied, or why not.
    pub sqrtform: String,
    /// Grid sup of |sqrt-form - closed| when the form applied.
    pub sqrtform_residual: Option<f64>,
    pub value_at_point: Option<EvalReport>,
    pub grid: Grid,
    pub tol: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SqrtReport {
    pub input: Vec<f64>,
    pub check: SqrtCheck,
    pub sqrt_coeffs: Option<Vec<f64>>,
    /// Coefficientwise residual of sqrt^2 against the input.
    pub square_residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub classification: Classification,
}

/// Top-level report envelope; `--check-report` re-parses this.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum Report {
    Eval(EvalReport),
    Exp(ExpReport),
    Identities(IdentityReport),
    SumRule(SumRuleReport),
    Sqrt(SqrtReport),
    Classify(ClassifyReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_round_trips() {
        let report = Report::Eval(EvalReport {
            point: Quaternion::new(1.0, 0.0, 2.0, 0.0),
            values: vec![Quaternion::ONE],
        });
        let text = report.to_json();
        let back = Report::from_json(&text).unwrap();
        match back {
            Report::Eval(e) => assert_eq!(e.values, vec![Quaternion::ONE]),
            other => panic!("wrong variant {other:?}"),
        }
    }
}
