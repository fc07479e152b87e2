//! Report records and their JSON / markdown renderings.
//!
//! JSON layout (field names are stable):
//!
//! ```text
//! { "config": {...}, "checks": [{ "id", "residual", "pass", "n", "seconds" }], "classification": {...} | null }
//! ```
//!
//! `seconds` is `null` unless timings were requested, so reports for identical
//! configurations are byte-identical.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::verify::classify::Classification;
use crate::verify::config::ReportConfig;

/// How a residual is judged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    /// Integer check, residual must be exactly zero.
    Exact,
    /// Residual must not exceed the tolerance.
    AtMost(f64),
    /// Residual (a minimum) must strictly exceed the floor.
    Above(f64),
}

impl Bound {
    pub fn accepts(self, residual: f64) -> bool {
        match self {
            Bound::Exact => residual == 0.0,
            Bound::AtMost(tol) => residual <= tol,
            Bound::Above(floor) => residual > floor,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub residual: f64,
    pub pass: bool,
    pub n: usize,
    pub seconds: Option<f64>,
}

impl CheckRecord {
    /// NaN residuals never pass.
    pub fn new(id: impl Into<String>, residual: f64, bound: Bound, n: usize) -> Self {
        let pass = !residual.is_nan() && bound.accepts(residual);
        CheckRecord { id: id.into(), residual, pass, n, seconds: None }
    }
}

/// Times `f` when `timed` is set.
pub fn timed_check(timed: bool, f: impl FnOnce() -> CheckRecord) -> CheckRecord {
    let start = Instant::now();
    let mut rec = f();
    if timed {
        rec.seconds = Some(start.elapsed().as_secs_f64());
    }
    rec
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub config: ReportConfig,
    pub checks: Vec<CheckRecord>,
    pub classification: Option<Classification>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "# {} m={} k={} p={}\n", c.command, c.m, c.k, c.p);
        let _ = writeln!(out, "seed {} ({}), samples {}\n", c.seed, c.rng, c.samples);
        if !self.checks.is_empty() {
            out.push_str("| check | residual | pass | n | seconds |\n|---|---|---|---|---|\n");
            for r in &self.checks {
                let secs = r.seconds.map_or("-".to_string(), |s| format!("{s:.3}"));
                let _ = writeln!(out, "| {} | {:e} | {} | {} | {} |", r.id, r.residual, r.pass, r.n, secs);
            }
            out.push('\n');
        }
        if let Some(cl) = &self.classification {
            out.push_str(&cl.to_markdown());
        }
        out
    }
}
