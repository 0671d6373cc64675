//! Machine-readable campaign reports: schema-versioned JSON with stable key
//! order, plus a flattened CSV export (RFC 4180 quoting).

use crate::result::{CheckId, CheckKind};
use serde::Serialize;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Per-(check, dimension) aggregate over all trials.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteAggregate {
    pub check_id: CheckId,
    pub kind: CheckKind,
    pub n: usize,
    pub trials: u64,
    pub min_slack: f64,
    /// Trial seed attaining the minimum slack (reproduces the instance).
    pub argmin_seed: u64,
    pub tol: f64,
    pub pass: bool,
    pub constant_min: f64,
    pub constant_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_ratio: Option<f64>,
    /// Instances regenerated because a hypothesis was not realized.
    pub regenerations: u64,
    pub errors: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
}

/// Full campaign outcome. Aggregates are deterministic for a fixed
/// (config, seed, build); `wall_time_s` is the only field that varies
/// between reruns.
#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub config: ConfigEcho,
    pub all_pass: bool,
    pub wall_time_s: f64,
    pub rows: Vec<SuiteAggregate>,
}

/// Echo of the campaign configuration, embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub suites: Vec<CheckId>,
    pub dims: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub tol_matrix: f64,
    pub tol_scalar: f64,
    pub spectrum: (f64, f64),
    pub exponents: Vec<(f64, f64)>,
}

impl CampaignReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flatten the per-check aggregates to CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "check_id,kind,n,trials,min_slack,argmin_seed,tol,pass,constant_min,constant_max,worst_ratio,regenerations,errors\n",
        );
        for r in &self.rows {
            let kind = match r.kind {
                CheckKind::Matrix => "matrix",
                CheckKind::Scalar => "scalar",
            };
            let ratio = r
                .worst_ratio
                .map(|v| format!("{v}"))
                .unwrap_or_default();
            let fields = [
                r.check_id.as_str().to_string(),
                kind.to_string(),
                r.n.to_string(),
                r.trials.to_string(),
                format!("{}", r.min_slack),
                r.argmin_seed.to_string(),
                format!("{}", r.tol),
                r.pass.to_string(),
                format!("{}", r.constant_min),
                format!("{}", r.constant_max),
                ratio,
                r.regenerations.to_string(),
                r.errors.to_string(),
            ];
            let row: Vec<String> = fields.iter().map(|f| csv_quote(f)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// RFC 4180: quote fields containing commas, quotes, or line breaks;
/// double embedded quotes.
pub fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') || field.contains('\r') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
