//! Pass/fail records for asserted inequalities and the verification report.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sequence::ClassParams;

/// Relative slack for bound comparisons.
pub const DEFAULT_REL_TOL: f64 = 1e-6;
/// Absolute floor for bound comparisons.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

/// One asserted inequality `lhs ≤ rhs·(1 + tolerance) + tolerance_abs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    #[serde(rename = "check")]
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<ClassParams>,
    #[serde(with = "crate::io::lossless_f64")]
    pub lhs: f64,
    #[serde(with = "crate::io::lossless_f64")]
    pub rhs: f64,
    /// `rhs − lhs`.
    #[serde(with = "crate::io::lossless_f64")]
    pub margin: f64,
    pub tolerance: f64,
    pub tolerance_abs: f64,
    pub status: Status,
}

impl CheckResult {
    pub fn le(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64, tolerance_abs: f64) -> Self {
        // NaN on either side fails.
        let pass = lhs <= rhs * (1.0 + tolerance) + tolerance_abs;
        Self {
            name: name.into(),
            params: None,
            lhs,
            rhs,
            margin: rhs - lhs,
            tolerance,
            tolerance_abs,
            status: if pass { Status::Pass } else { Status::Fail },
        }
    }

    /// `lhs ≤ rhs` with no slack.
    pub fn exact_le(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::le(name, lhs, rhs, 0.0, 0.0)
    }

    /// A count of violations that must be zero.
    pub fn zero_count(name: impl Into<String>, violations: usize) -> Self {
        Self::exact_le(name, violations as f64, 0.0)
    }

    /// `lhs ≤ rhs` under the default bound tolerances.
    pub fn bound(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::le(name, lhs, rhs, DEFAULT_REL_TOL, DEFAULT_ABS_TOL)
    }

    pub fn with_params(mut self, p: ClassParams) -> Self {
        self.params = Some(p);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub budget: usize,
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64, budget: usize, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        Self { suite: suite.into(), seed, budget, summary, checks }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
