use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use racahkit_core::{ReportSummary, VerificationReport};
use serde::Serialize;
use serde_json::Value;

use crate::{CliError, Outcome};

/// Echo of the options that determine a run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub models: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub nu: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub options: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    #[serde(flatten)]
    pub summary: ReportSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub text: String,
}

/// One basis element with its eigenvalues, keyed `C[l]`.
#[derive(Clone, Debug, Serialize)]
pub struct BasisEntry {
    pub model: String,
    pub label: String,
    pub polynomial: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub eigenvalues: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub tool_version: String,
    pub config: RunConfig,
    pub reports: Vec<ReportEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<BasisEntry>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_elapsed_ms: Option<u64>,
}

fn millis(d: Duration) -> u64 {
    d.as_millis() as u64
}

impl SuiteReport {
    pub fn new(
        config: RunConfig,
        reports: Vec<(VerificationReport, Duration)>,
        basis: Vec<BasisEntry>,
        total: Duration,
        deterministic: bool,
    ) -> Self {
        let reports: Vec<ReportEntry> = reports
            .into_iter()
            .map(|(r, d)| ReportEntry { summary: r.summary(), elapsed_ms: (!deterministic).then(|| millis(d)), text: r.to_string() })
            .collect();
        let pass = reports.iter().all(|r| r.summary.pass);
        SuiteReport {
            schema: 1,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            reports,
            basis,
            pass,
            total_elapsed_ms: (!deterministic).then(|| millis(total)),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            s.push_str(&r.text);
            if let Some(ms) = r.elapsed_ms {
                let _ = write!(s, "\n  [{ms} ms]");
            }
            s.push('\n');
        }
        for b in &self.basis {
            let _ = writeln!(s, "{} psi{} = {}", b.model, b.label, b.polynomial);
            for (level, value) in &b.eigenvalues {
                let _ = writeln!(s, "  {level}: {value}");
            }
        }
        let passed = self.reports.iter().filter(|r| r.summary.pass).count();
        let status = if self.pass { "PASS" } else { "FAIL" };
        let _ = write!(s, "{status} {passed}/{} reports", self.reports.len());
        if let Some(ms) = self.total_elapsed_ms {
            let _ = write!(s, " in {ms} ms");
        }
        s.push('\n');
        s
    }
}

const TIMING_KEYS: [&str; 2] = ["elapsed_ms", "total_elapsed_ms"];

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for key in TIMING_KEYS {
                map.remove(key);
            }
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

/// First JSON pointer at which `a` and `b` differ.
fn first_difference(a: &Value, b: &Value, path: &str) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            keys.into_iter().find_map(|k| match (x.get(k), y.get(k)) {
                (Some(p), Some(q)) => first_difference(p, q, &format!("{path}/{k}")),
                _ => Some(format!("{path}/{k}")),
            })
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                return Some(format!("{path} (length {} vs {})", x.len(), y.len()));
            }
            x.iter().zip(y).enumerate().find_map(|(i, (p, q))| first_difference(p, q, &format!("{path}/{i}")))
        }
        _ => (a != b).then(|| path.to_string()),
    }
}

fn load(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let mut v: Value = serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })?;
    strip_timings(&mut v);
    Ok(v)
}

/// Compares two reports with timings removed.
pub fn compare_reports(a: &Path, b: &Path) -> Result<Outcome, CliError> {
    let (x, y) = (load(a)?, load(b)?);
    Ok(match first_difference(&x, &y, "") {
        None => Outcome { pass: true, rendered: "identical\n".into() },
        Some(at) => Outcome { pass: false, rendered: format!("reports differ at {at}\n") },
    })
}
