//! Named checks with deviations, tolerances and pass/fail status.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Which mathematical statement the check realizes.
    pub theorem_tag: String,
    pub status: Status,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Seconds; `None` unless timing was requested, so reports stay reproducible.
    pub wall_time: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Status is derived: pass iff the deviation is within tolerance.
    /// Non-finite deviations are clamped so the JSON form stays numeric.
    pub fn measured(name: impl Into<String>, tag: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        let deviation = if deviation.is_finite() { deviation } else { f64::MAX };
        Self {
            name: name.into(),
            theorem_tag: tag.into(),
            status: if deviation <= tolerance { Status::Pass } else { Status::Fail },
            max_deviation: deviation,
            tolerance,
            wall_time: None,
            note: None,
        }
    }

    /// Exact integer comparison: deviation is the number of mismatches.
    pub fn exact(name: impl Into<String>, tag: impl Into<String>, mismatches: usize) -> Self {
        Self::measured(name, tag, mismatches as f64, 0.0)
    }

    pub fn skipped(name: impl Into<String>, tag: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            theorem_tag: tag.into(),
            status: Status::Skipped,
            max_deviation: 0.0,
            tolerance: 0.0,
            wall_time: None,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Runs `f`, records its wall time on the produced check.
    pub fn timed(&mut self, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let mut check = f();
        check.wall_time = Some(start.elapsed().as_secs_f64());
        self.checks.push(check);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            total: self.checks.len(),
            ..Summary::default()
        };
        for c in &self.checks {
            match c.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest deviation among checks whose name starts with `prefix`.
    pub fn max_deviation(&self, prefix: &str) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with(prefix) && c.status != Status::Skipped)
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max)
    }

    pub fn strip_timings(&mut self) {
        for c in &mut self.checks {
            c.wall_time = None;
        }
    }
}
