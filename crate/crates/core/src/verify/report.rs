use std::fmt::Write as _;

use serde::Serialize;

use crate::constructions::CaseTag;
use crate::vertex::{Check, Status};

use super::config::Budgets;

/// The predicted vertex for a degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub order: u128,
    pub description: String,
    pub source_dim: usize,
    pub trivial_source: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSummary {
    pub order: u128,
    pub generators: Vec<String>,
    pub expected: Expected,
    pub conjugacy_mode: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSummary {
    pub dim: usize,
    pub trivial: bool,
}

/// Wall-clock time per battery, in milliseconds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub total_ms: u64,
    pub batteries: Vec<(String, u64)>,
}

impl Timings {
    pub fn normalize(&mut self) {
        self.total_ms = 0;
        for (_, ms) in &mut self.batteries {
            *ms = 0;
        }
    }
}

/// One row of the verification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub parts: Vec<usize>,
    pub case: CaseTag,
    #[serde(rename = "dim_E")]
    pub dim_e: usize,
    pub restriction_indecomposable: Option<bool>,
    pub vertex: Option<VertexSummary>,
    pub source: Option<SourceSummary>,
    pub checks: Vec<Check>,
    /// False when a budget or an inconclusive computation cut the row short.
    pub complete: bool,
    pub timings: Timings,
    pub seed: u64,
    pub budgets: Budgets,
    pub version: String,
}

impl ReportRow {
    pub fn all_pass(&self) -> bool {
        self.complete && self.checks.iter().all(Check::passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report rows serialize")
    }
}

/// The whole run, in input order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(ReportRow::all_pass)
    }

    /// 0 if every row passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.all_pass())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3} {:<14} {:<9} {:>5} {:>6} {:>8} {:>8} {:<10} {:>6} {:>7} {:>7} {:<10}",
            "n", "parts", "case", "dim_E", "indec", "vertex", "expected", "conjugacy", "source", "trivial", "checks", "status"
        );
        for r in &self.rows {
            let parts = r.parts.iter().map(ToString::to_string).collect::<Vec<_>>().join("+");
            let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
            let passed = r.checks.iter().filter(|c| c.passed()).count();
            let status = if r.all_pass() {
                "pass"
            } else if r.complete {
                "FAIL"
            } else {
                "INCOMPLETE"
            };
            let _ = writeln!(
                out,
                "{:>3} {:<14} {:<9} {:>5} {:>6} {:>8} {:>8} {:<10} {:>6} {:>7} {:>7} {:<10}",
                r.n,
                parts,
                r.case.as_str(),
                r.dim_e,
                opt(r.restriction_indecomposable.map(|b| b.to_string())),
                opt(r.vertex.as_ref().map(|v| v.order.to_string())),
                opt(r.vertex.as_ref().map(|v| v.expected.order.to_string())),
                opt(r.vertex.as_ref().map(|v| v.conjugacy_mode.clone())),
                opt(r.source.as_ref().map(|s| s.dim.to_string())),
                opt(r.source.as_ref().map(|s| s.trivial.to_string())),
                format!("{passed}/{}", r.checks.len()),
                status,
            );
        }
        for r in &self.rows {
            for c in r.failed_checks() {
                let _ = writeln!(out, "n={}: {} failed: {}", r.n, c.name, c.details);
            }
        }
        out
    }
}
