//! Verification reports and their canonical JSON encoding.

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// One checked relation. Exact checks leave `residual`/`tolerance` empty and
/// put the first failing entry, if any, into `witness`.
#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub n: usize,
    pub relation: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub witness: Option<String>,
}

impl VerificationReport {
    pub fn exact(suite: &str, n: usize, relation: impl Into<String>, first_failure: Option<String>) -> Self {
        Self {
            suite: suite.to_string(),
            n,
            relation: relation.into(),
            status: Status::from_bool(first_failure.is_none()),
            residual: None,
            tolerance: None,
            seed: None,
            witness: first_failure,
        }
    }

    pub fn numeric(suite: &str, n: usize, relation: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            suite: suite.to_string(),
            n,
            relation: relation.into(),
            status: Status::from_bool(residual.is_finite() && residual <= tolerance),
            residual: Some(residual),
            tolerance: Some(tolerance),
            seed: None,
            witness: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::passed)
}

/// Formats a float with 17 significant digits so output is byte-stable.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// Compact JSON with fixed float formatting and sorted object keys.
pub fn to_canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, &mut out);
    out
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                out.push_str(&n.to_string());
            } else {
                out.push_str(&format_f64(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) => {
            out.push('[');
            for (k, x) in a.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write_value(x, out);
            }
            out.push(']');
        }
        Value::Object(m) => {
            out.push('{');
            for (k, (key, x)) in m.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(key.clone()).to_string());
                out.push(':');
                write_value(x, out);
            }
            out.push('}');
        }
    }
}
