//! Deterministic verification reports.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::catalog::anchor_for;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    /// `family:detail`; the family keys the `explain` registry.
    pub id: String,
    pub anchor: String,
    pub status: Status,
    /// Exact residual in the symcalc grammar, when the check has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub status: Status,
    pub checks: Vec<CheckEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn get(&self, id: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let seed = self.seed.map(|s| format!(" seed={s}")).unwrap_or_default();
        let _ = writeln!(out, "scenario {} ({}){seed}", self.scenario, self.kind);
        for c in &self.checks {
            let mark = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::NotApplicable => "N/A ",
            };
            let _ = write!(out, "{mark}  {}", c.id);
            if let Some(r) = &c.residual {
                let _ = write!(out, "  residual = {r}");
            }
            if !c.detail.is_empty() {
                let _ = write!(out, "  [{}]", c.detail);
            }
            if let Some(t) = c.timing_ms {
                let _ = write!(out, "  ({t} ms)");
            }
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "overall: {} ({} pass, {} fail, {} not applicable)",
            self.status.as_str().to_uppercase(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::NotApplicable)
        );
        out
    }
}

/// Collects entries in pipeline order. Timings are only recorded on request
/// since they would break byte-identical reruns.
pub struct Recorder {
    timings: bool,
    checks: Vec<CheckEntry>,
    notes: Vec<String>,
    started: Option<Instant>,
}

impl Recorder {
    pub fn new(timings: bool) -> Self {
        Recorder { timings, checks: Vec::new(), notes: Vec::new(), started: None }
    }

    /// Starts the clock for the next group of entries.
    pub fn start(&mut self) {
        self.started = Some(Instant::now());
    }

    pub fn push(&mut self, family: &str, sub: &str, status: Status, residual: Option<String>, detail: impl Into<String>) {
        let id = if sub.is_empty() { family.to_string() } else { format!("{family}:{sub}") };
        let timing_ms = match (self.timings, self.started.take()) {
            (true, Some(t)) => Some(t.elapsed().as_millis() as u64),
            _ => None,
        };
        self.checks.push(CheckEntry { id, anchor: anchor_for(family).to_string(), status, residual, detail: detail.into(), timing_ms });
    }

    pub fn ok(&mut self, family: &str, sub: &str, ok: bool, detail: impl Into<String>) {
        self.push(family, sub, Status::of(ok), None, detail);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Folds a core check list into entries `family:<prefix><id>`.
    pub fn checklist(&mut self, family: &str, prefix: &str, list: &gcgeom::checks::CheckList) {
        for c in &list.checks {
            self.ok(family, &format!("{prefix}{}", c.id), c.ok, c.detail.clone());
        }
    }

    pub fn finish(self, scenario: &str, kind: &str, seed: Option<u64>) -> Report {
        let status = if self.checks.iter().any(|c| c.status == Status::Fail) || self.checks.is_empty() { Status::Fail } else { Status::Pass };
        Report { scenario: scenario.to_string(), kind: kind.to_string(), seed, status, checks: self.checks, notes: self.notes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn not_applicable_does_not_fail_and_empty_fails() {
        let mut r = Recorder::new(false);
        r.push("subtorus", "x.case-isotropic", Status::NotApplicable, None, "");
        r.ok("subtorus", "x.requested", true, "");
        assert!(r.finish("s", "reduction", None).passed());
        assert!(!Recorder::new(false).finish("s", "reduction", None).passed());
    }
}
