//! Verification report: JSON, CSV and plain-text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::verify::{PairRecord, Status};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub lhs_err: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub status: Status,
    pub evals: usize,
    pub ms: f64,
    pub rhs_method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl Record {
    /// `k=v` pairs joined by `;`, in key order.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
    /// Largest absolute residual among passing records.
    pub max_pass_residual: f64,
    pub total_ms: f64,
}

impl Totals {
    pub fn from_records(records: &[Record], total_ms: f64) -> Self {
        let count = |s| records.iter().filter(|r| r.status == s).count();
        Totals {
            records: records.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            flagged: count(Status::Flagged),
            max_pass_residual: records
                .iter()
                .filter(|r| r.status == Status::Pass)
                .map(|r| r.abs_residual)
                .fold(0.0, f64::max),
            total_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    /// Tolerance override, or `null` when each identity used its own.
    pub tol: Option<f64>,
    pub started_at: String,
    pub totals: Totals,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub records: Vec<Record>,
}

const CSV_HEADER: [&str; 12] = [
    "id",
    "params",
    "lhs",
    "lhs_err",
    "rhs",
    "abs_residual",
    "rel_residual",
    "status",
    "evals",
    "ms",
    "rhs_method",
    "diagnostic",
];

impl Report {
    pub fn all_passed(&self) -> bool {
        self.suite.totals.fail == 0
    }

    pub fn to_json(&self) -> Result<String, Error> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_csv(&self) -> Result<String, Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER)?;
        for r in &self.records {
            w.write_record([
                r.id.clone(),
                r.params_string(),
                number(r.lhs),
                number(r.lhs_err),
                number(r.rhs),
                number(r.abs_residual),
                number(r.rel_residual),
                r.status.as_str().to_string(),
                r.evals.to_string(),
                format!("{:.3}", r.ms),
                r.rhs_method.clone(),
                r.diagnostic.clone().unwrap_or_default(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<5} {:<14} {:>22} {:>22} {:>10} {:>10}  status",
            "id", "params", "lhs", "rhs", "|lhs-rhs|", "lhs_err"
        );
        for r in &self.records {
            let _ = write!(
                out,
                "{:<5} {:<14} {:>22.16} {:>22.16} {:>10.2e} {:>10.2e}  {}",
                r.id,
                r.params_string(),
                r.lhs,
                r.rhs,
                r.abs_residual,
                r.lhs_err,
                r.status.as_str()
            );
            if r.rhs_method != "closed-form" {
                let _ = write!(out, " ({})", r.rhs_method);
            }
            if let Some(d) = &r.diagnostic {
                let _ = write!(out, " [{d}]");
            }
            out.push('\n');
        }
        let t = &self.suite.totals;
        let _ = writeln!(
            out,
            "\n{} records: {} pass, {} fail, {} flagged; max residual among passes {:.2e}; {:.0} ms",
            t.records, t.pass, t.fail, t.flagged, t.max_pass_residual, t.total_ms
        );
        out
    }
}

/// Shortest round-tripping form, in exponent notation outside `[1e-4, 1e15)`.
fn number(v: f64) -> String {
    if v == 0.0 || (1e-4..1e15).contains(&v.abs()) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// Plain-text table for transform-pair checks.
pub fn pairs_to_text(records: &[PairRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(
            out,
            "{:<4} {:<14} a={} image={:.15} inverse={:.15} reproduced={:.15} reference={:.15} residual={:.2e} {}",
            r.id,
            r.pair,
            r.a,
            r.image,
            r.inverse,
            r.reproduced,
            r.reference,
            r.abs_residual,
            r.status.as_str()
        );
    }
    out
}
