//! Margin checks for the α-power monogamy relations, the three-qubit
//! classifier and the assistance bound.
//!
//! Every check reports `margin` signed so that the relation holds when it
//! is non-negative.

mod checks;
mod classify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::tolerance;
use crate::Error;

pub use checks::{
    check_ckw, check_dual_ckw, check_theorem1, check_theorem2, check_theorem4, check_theorem5,
    check_theorem6, eoa_bound, run_checks, DEFAULT_T1_ALPHAS, DEFAULT_T2_ALPHAS, DEFAULT_T4_ALPHAS,
};
pub use classify::{classify_pure3, Classification, Label, ResidualEntry, DEFAULT_CLASSIFY_ALPHAS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    /// `C²_{A|rest} ≥ Σ C²_{AB_i}`
    #[serde(rename = "ckw")]
    Ckw,
    /// `C²_{A|rest} ≤ Σ C²_a(ρ_{AB_i})`
    #[serde(rename = "dual_ckw")]
    DualCkw,
    /// Concurrence, α ≥ 2.
    #[serde(rename = "t1")]
    T1,
    /// Concurrence, α ≤ 0, reversed.
    #[serde(rename = "t2")]
    T2,
    /// EoF, α ≥ √2.
    #[serde(rename = "t4")]
    T4,
    /// `E_{A|rest} ≤ Σ E_a(ρ_{AB_i})`
    #[serde(rename = "t5")]
    T5,
    /// `τ^E_α ≥ f^α(τ₃)`
    #[serde(rename = "t6i")]
    T6i,
    /// `τ^E_α ≥ f²(τ₃)`, diagnostic only.
    #[serde(rename = "t6i_f2")]
    T6iSquared,
    /// `E_a^α(ρ_{AB}) ≥ E^α(ρ_{AB}) + f^α(τ₃)`
    #[serde(rename = "t6ii")]
    T6ii,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Ckw,
        TheoremId::DualCkw,
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6i,
        TheoremId::T6iSquared,
        TheoremId::T6ii,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TheoremId::Ckw => "ckw",
            TheoremId::DualCkw => "dual_ckw",
            TheoremId::T1 => "t1",
            TheoremId::T2 => "t2",
            TheoremId::T4 => "t4",
            TheoremId::T5 => "t5",
            TheoremId::T6i => "t6i",
            TheoremId::T6iSquared => "t6i_f2",
            TheoremId::T6ii => "t6ii",
        }
    }

    /// Whether one side of the comparison comes from the roof optimizer.
    pub fn optimizer_backed(self) -> bool {
        matches!(self, TheoremId::T5 | TheoremId::T6ii)
    }

    pub fn tolerance(self) -> f64 {
        if self.optimizer_backed() {
            tolerance::OPTIMIZER
        } else {
            tolerance::CLOSED_FORM
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::Validation {
                what: "theorem id",
                detail: format!("`{s}`"),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    /// Optimizer-backed margin below tolerance without a closed-form
    /// certificate of failure.
    Inconclusive,
    Violation,
    /// Nothing to compare (α ≤ 0 with every pairwise concurrence zero).
    Vacuous,
}

impl Outcome {
    pub fn tag(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Violation => "violation",
            Outcome::Vacuous => "vacuous",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub theorem: TheoremId,
    pub alpha: f64,
    pub focus: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// `margin ≥ -tolerance(theorem)`
    pub pass: bool,
    pub outcome: Outcome,
    /// Strictly satisfied (`margin > 1e-12`); reported for `t2` only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    /// Margin of the closed-form chain behind an optimizer-backed check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_margin: Option<f64>,
    /// Some reduction has rank > 2, so its CoA value is only an upper bound.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub rank_flag: bool,
    /// Excluded from verdicts and exit codes.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub diagnostic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub(crate) fn closed_form(
        theorem: TheoremId,
        focus: usize,
        alpha: f64,
        lhs: f64,
        rhs: f64,
        margin: f64,
    ) -> Self {
        let pass = margin >= -theorem.tolerance();
        Self {
            theorem,
            alpha,
            focus,
            lhs,
            rhs,
            margin,
            pass,
            outcome: if pass {
                Outcome::Pass
            } else {
                Outcome::Violation
            },
            strict: None,
            closed_form_margin: None,
            rank_flag: false,
            diagnostic: false,
            witness: None,
        }
    }

    /// Counts against a run: a violation on a non-diagnostic check.
    pub fn is_violation(&self) -> bool {
        self.outcome == Outcome::Violation && !self.diagnostic
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    pub state_descriptor: String,
    pub focus_qubit: usize,
    pub alpha_grid: Vec<f64>,
    pub results: Vec<CheckResult>,
}

impl MonogamyReport {
    pub fn has_violation(&self) -> bool {
        self.results.iter().any(CheckResult::is_violation)
    }

    pub fn min_margin(&self, theorem: TheoremId) -> Option<f64> {
        self.results
            .iter()
            .filter(|r| r.theorem == theorem && r.outcome != Outcome::Vacuous)
            .map(|r| r.margin)
            .reduce(f64::min)
    }
}
