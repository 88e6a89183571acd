//! Report serialization: a deterministic JSON document plus CSV series.

use serde::Serialize;

use asytop::diagnostics::{ConvergenceReport, LinearClassification};
use asytop::oracle::McEstimate;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCase {
    pub label: String,
    pub exact_re: f64,
    pub exact_im: f64,
    pub estimate: McEstimate,
    pub sigmas: f64,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub tolerance_sigmas: f64,
    pub cases: Vec<OracleCase>,
    pub all_within_tolerance: bool,
}

/// Top-level experiment report written to `report.json`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub statement: Option<String>,
    pub dimension: usize,
    pub truncation: u32,
    pub diagnostic: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<ConvergenceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound_series: Option<Vec<(u32, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classifier: Option<LinearClassification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<String>,
    pub expect_matched: bool,
    pub checks_passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `m,value,bound` rows for whichever series the experiment produced.
    pub fn series_csv(&self) -> Option<String> {
        if let Some(conv) = &self.convergence {
            let mut out = String::from("m,value,bound\n");
            for (i, (m, v)) in conv.series.iter().enumerate() {
                let bound = conv
                    .analytic_bound
                    .as_ref()
                    .and_then(|b| b.get(i))
                    .map(|(_, x)| x.to_string())
                    .unwrap_or_default();
                out.push_str(&format!("{m},{v},{bound}\n"));
            }
            return Some(out);
        }
        if let Some(series) = &self.lower_bound_series {
            let mut out = String::from("m,value,bound\n");
            for (s, v) in series {
                out.push_str(&format!("{s},{v},\n"));
            }
            return Some(out);
        }
        None
    }

    /// Case-oriented CSV for oracle runs.
    pub fn oracle_csv(&self) -> Option<String> {
        let oracle = self.oracle.as_ref()?;
        let mut out =
            String::from("label,exact_re,exact_im,estimate_re,estimate_im,stderr,sigmas\n");
        for case in &oracle.cases {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                case.label,
                case.exact_re,
                case.exact_im,
                case.estimate.estimate_re,
                case.estimate.estimate_im,
                case.estimate.stderr,
                case.sigmas
            ));
        }
        Some(out)
    }
}
