//! Machine-readable check records shared by the verification suites.

use serde::Serialize;

/// Outcome of one numerical or exact check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Observed quantity (an error, a norm, a distance, ...).
    pub value: f64,
    /// Threshold the value is compared with.
    pub bound: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// `pass = value <= bound` (false for NaN).
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound, pass: value <= bound }
    }

    /// An exact check, recorded as value 0 (pass) or 1 (fail) against bound 0.
    pub fn exact(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), value: if ok { 0.0 } else { 1.0 }, bound: 0.0, pass: ok }
    }
}

/// Named list of checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
    /// Checks that could not run, with the reason.
    pub skipped: Vec<String>,
}

impl Report {
    pub fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.skipped.extend(other.skipped);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
