//! Structured verification reports: one [`CheckResult`] per claim checked,
//! assembled into a [`VerificationReport`] whose JSON form is byte-stable
//! for a fixed seed.

use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    /// Stable hierarchical name, e.g. `crit07.bit_ball.complexherm2`.
    pub name: String,
    /// Which claim of the underlying theory the check verifies.
    pub anchor: String,
    pub status: CheckStatus,
    /// Worst residual observed, when the check is numeric.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Tolerance the residual was compared against.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Number of random samples drawn, when the check samples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    /// Seed the check's generator was derived from.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Extra human-readable context (counterexamples, dimensions, ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            anchor: anchor.into(),
            status: CheckStatus::Pass,
            residual: None,
            tolerance: None,
            samples: None,
            seed: None,
            detail: None,
        }
    }

    /// Record a residual against a tolerance; flips status to `Fail` when
    /// it does not fit (NaN counts as failure).
    pub fn with_residual(mut self, residual: f64, tolerance: f64) -> Self {
        self.residual = Some(residual);
        self.tolerance = Some(tolerance);
        if !(residual <= tolerance) {
            self.status = CheckStatus::Fail;
        }
        self
    }

    pub fn with_flag(mut self, ok: bool) -> Self {
        if !ok {
            self.status = CheckStatus::Fail;
        }
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = Some(samples as u64);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.status = CheckStatus::Skipped;
        self.detail = Some(reason.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// A suite's worth of check results.
///
/// Serialization deliberately omits wall time so that two runs with the
/// same seed produce byte-identical JSON; timing appears only in the
/// markdown rendering.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub report_version: u32,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub wall: Duration,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        VerificationReport {
            report_version: 1,
            suite: suite.into(),
            seed,
            checks,
            wall: Duration::ZERO,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        let mut skip = 0;
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => pass += 1,
                CheckStatus::Fail => fail += 1,
                CheckStatus::Skipped => skip += 1,
            }
        }
        (pass, fail, skip)
    }

    /// Canonical JSON rendering (byte-stable for a fixed seed).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let (pass, fail, skip) = self.counts();
        writeln!(out, "# suite `{}`", self.suite).unwrap();
        writeln!(
            out,
            "\nseed {} · {} pass / {} fail / {} skipped · {:.2}s\n",
            self.seed,
            pass,
            fail,
            skip,
            self.wall.as_secs_f64()
        )
        .unwrap();
        writeln!(out, "| check | claim | status | residual | tol |").unwrap();
        writeln!(out, "|---|---|---|---|---|").unwrap();
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "**FAIL**",
                CheckStatus::Skipped => "skipped",
            };
            let res = c
                .residual
                .map(|r| format!("{r:.3e}"))
                .unwrap_or_else(|| "—".into());
            let tol = c
                .tolerance
                .map(|t| format!("{t:.1e}"))
                .unwrap_or_else(|| "—".into());
            writeln!(out, "| {} | {} | {} | {} | {} |", c.name, c.anchor, status, res, tol)
                .unwrap();
        }
        for c in self.checks.iter().filter(|c| c.detail.is_some()) {
            writeln!(out, "\n- `{}`: {}", c.name, c.detail.as_ref().unwrap()).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_stable_and_excludes_timing() {
        let mk = || {
            let mut r = VerificationReport::new(
                "demo",
                42,
                vec![
                    CheckResult::new("b.second", "unit law").with_residual(1e-12, 1e-9),
                    CheckResult::new("a.first", "commutativity").with_flag(true),
                ],
            );
            r.wall = Duration::from_millis(1234);
            r
        };
        let (r1, mut r2) = (mk(), mk());
        r2.wall = Duration::from_millis(9999);
        assert_eq!(r1.to_json(), r2.to_json());
        // sorted by name
        assert_eq!(r1.checks[0].name, "a.first");
    }

    #[test]
    fn residual_failure_flips_status() {
        let c = CheckResult::new("x", "y").with_residual(1.0, 1e-9);
        assert_eq!(c.status, CheckStatus::Fail);
        let c = CheckResult::new("x", "y").with_residual(f64::NAN, 1e-9);
        assert_eq!(c.status, CheckStatus::Fail);
    }
}
