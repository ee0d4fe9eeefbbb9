//! Verdicts and the comparison metrics that produce them.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    Refuted,
    NotApplicable,
}

impl Verdict {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Confirmed
        } else {
            Verdict::Refuted
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Refuted => "REFUTED",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How `lhs` and `rhs` are compared against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// `|lhs - rhs| ≤ tol`
    Absolute,
    /// `|lhs - rhs| / |rhs| ≤ tol`
    Relative,
    /// either of the two
    Either,
    /// `lhs < rhs`; the tolerance is unused
    Below,
    /// `lhs > rhs`; the tolerance is unused
    Above,
}

impl Metric {
    pub fn passes(self, lhs: f64, rhs: f64, abs_err: f64, rel_err: f64, tol: f64) -> bool {
        match self {
            Metric::Absolute => abs_err <= tol,
            Metric::Relative => rel_err <= tol,
            Metric::Either => abs_err <= tol || rel_err <= tol,
            Metric::Below => lhs < rhs,
            Metric::Above => lhs > rhs,
        }
    }
}
