//! Seeded fuzz campaigns over Haar-random pure states.
//!
//! State `i` of an `n`-qubit campaign with seed `s` is
//! `PureState::haar_random(n, s.split(i))`, so results do not depend on
//! how the work is scheduled across threads.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convexroof::RoofConfig;
use crate::linalg::RngSeed;
use crate::measures::{concurrence_2q, residual_concurrence};
use crate::monogamy::{run_checks, CheckResult, Outcome, TheoremId};
use crate::schmidt::{angles_to_params, build_state, residual_closed_form, SchmidtAngles};
use crate::states::PureState;
use crate::{Error, Result};

pub const MIN_FUZZ_QUBITS: usize = 3;
pub const MAX_FUZZ_QUBITS: usize = 5;

/// Residuals beyond this magnitude count as sign witnesses.
pub const SIGN_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub n_qubits: usize,
    pub count: usize,
    pub seed: RngSeed,
    pub theorems: Vec<TheoremId>,
    /// Replaces the default grid of every α-dependent theorem.
    pub alphas: Option<Vec<f64>>,
    pub focus: usize,
    /// `t2` only runs on states whose pairwise concurrences with the focus
    /// qubit all exceed this.
    pub t2_min_pair_concurrence: f64,
    pub roof: RoofConfig,
}

impl FuzzConfig {
    pub fn new(n_qubits: usize, count: usize, seed: RngSeed, theorems: Vec<TheoremId>) -> Self {
        Self {
            n_qubits,
            count,
            seed,
            theorems,
            alphas: None,
            focus: 0,
            t2_min_pair_concurrence: 1e-3,
            roof: RoofConfig::default(),
        }
    }

    fn wants(&self, t: TheoremId) -> bool {
        self.theorems.contains(&t)
    }

    fn validate(&self) -> Result<()> {
        if !(MIN_FUZZ_QUBITS..=MAX_FUZZ_QUBITS).contains(&self.n_qubits) {
            return Err(Error::Bounds(format!(
                "fuzz qubit count {} outside {MIN_FUZZ_QUBITS}..={MAX_FUZZ_QUBITS}",
                self.n_qubits
            )));
        }
        if self.count == 0 {
            return Err(Error::Bounds("fuzz count must be at least 1".into()));
        }
        if self.theorems.is_empty() {
            return Err(Error::Validation {
                what: "fuzz config",
                detail: "no theorems selected".into(),
            });
        }
        let t6 = [TheoremId::T6i, TheoremId::T6iSquared, TheoremId::T6ii];
        if self.n_qubits != 3 && t6.iter().any(|&t| self.wants(t)) {
            return Err(Error::Arity {
                expected: "3".into(),
                got: self.n_qubits,
            });
        }
        if self.focus >= self.n_qubits {
            return Err(Error::Bounds(format!("focus qubit {}", self.focus)));
        }
        Ok(())
    }
}

pub fn campaign_state(n_qubits: usize, seed: RngSeed, index: usize) -> Result<PureState> {
    PureState::haar_random(n_qubits, seed.split(index as u64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzRow {
    pub state_id: usize,
    pub result: CheckResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub theorem: TheoremId,
    pub checks: usize,
    pub min_margin: Option<f64>,
    pub min_state: Option<usize>,
    pub violations: usize,
    pub inconclusive: usize,
    pub vacuous: usize,
    /// Number of strictly satisfied checks (`t2`).
    pub strict: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzOutcome {
    pub rows: Vec<FuzzRow>,
    pub summaries: Vec<TheoremSummary>,
    /// States left out of `t2` by the pairwise-concurrence filter.
    pub t2_filtered: usize,
    /// Present for three-qubit campaigns.
    pub sign: Option<SignWitnesses>,
}

impl FuzzOutcome {
    pub fn has_violation(&self) -> bool {
        self.rows.iter().any(|r| r.result.is_violation())
    }

    pub fn summary(&self, theorem: TheoremId) -> Option<&TheoremSummary> {
        self.summaries.iter().find(|s| s.theorem == theorem)
    }
}

fn passes_t2_filter(psi: &PureState, focus: usize, min: f64) -> Result<bool> {
    for b in (0..psi.n_qubits()).filter(|&b| b != focus) {
        if concurrence_2q(&psi.reduce(&[focus, b])?)? <= min {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks for one state; the flag reports whether `t2` was filtered out.
fn check_state(cfg: &FuzzConfig, psi: &PureState) -> Result<(Vec<CheckResult>, bool)> {
    let filtered =
        cfg.wants(TheoremId::T2) && !passes_t2_filter(psi, cfg.focus, cfg.t2_min_pair_concurrence)?;
    let theorems: Vec<TheoremId> = cfg
        .theorems
        .iter()
        .copied()
        .filter(|&t| !(filtered && t == TheoremId::T2))
        .collect();
    let rows = run_checks(psi, cfg.focus, &theorems, cfg.alphas.as_deref(), &cfg.roof)?;
    Ok((rows, filtered))
}

fn summarize(rows: &[FuzzRow]) -> Vec<TheoremSummary> {
    let mut by_theorem: BTreeMap<TheoremId, TheoremSummary> = BTreeMap::new();
    for row in rows {
        let r = &row.result;
        let s = by_theorem.entry(r.theorem).or_insert(TheoremSummary {
            theorem: r.theorem,
            checks: 0,
            min_margin: None,
            min_state: None,
            violations: 0,
            inconclusive: 0,
            vacuous: 0,
            strict: 0,
        });
        s.checks += 1;
        match r.outcome {
            Outcome::Violation => s.violations += 1,
            Outcome::Inconclusive => s.inconclusive += 1,
            Outcome::Vacuous => {
                s.vacuous += 1;
                continue;
            }
            Outcome::Pass => {}
        }
        if r.strict == Some(true) {
            s.strict += 1;
        }
        if s.min_margin.is_none_or(|m| r.margin < m) {
            s.min_margin = Some(r.margin);
            s.min_state = Some(row.state_id);
        }
    }
    by_theorem.into_values().collect()
}

pub fn run_campaign(cfg: &FuzzConfig) -> Result<FuzzOutcome> {
    cfg.validate()?;
    let per_state: Vec<(Vec<CheckResult>, bool)> = (0..cfg.count)
        .into_par_iter()
        .map(|i| check_state(cfg, &campaign_state(cfg.n_qubits, cfg.seed, i)?))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut t2_filtered = 0;
    for (state_id, (results, filtered)) in per_state.into_iter().enumerate() {
        t2_filtered += usize::from(filtered);
        rows.extend(results.into_iter().map(|mut result| {
            if !result.pass {
                result.witness = Some(state_reference(cfg.n_qubits, cfg.seed, state_id));
            }
            FuzzRow { state_id, result }
        }));
    }
    let sign = if cfg.n_qubits == 3 {
        Some(sign_witnesses_haar(cfg.count, cfg.seed, 1.0)?)
    } else {
        None
    };
    Ok(FuzzOutcome {
        summaries: summarize(&rows),
        rows,
        t2_filtered,
        sign,
    })
}

pub fn state_reference(n_qubits: usize, seed: RngSeed, index: usize) -> String {
    format!("haar:n={n_qubits}:seed={}:index={index}", seed.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub index: usize,
    pub reference: String,
    pub value: f64,
}

/// First draws whose residual `τ^C_α` is clearly positive and clearly
/// negative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignWitnesses {
    pub alpha: f64,
    pub sampled: usize,
    pub positive: Option<Witness>,
    pub negative: Option<Witness>,
}

impl SignWitnesses {
    pub fn both_found(&self) -> bool {
        self.positive.is_some() && self.negative.is_some()
    }
}

fn search_signs<F>(alpha: f64, count: usize, draw: F) -> Result<SignWitnesses>
where
    F: Fn(usize) -> Result<(f64, String)> + Sync,
{
    let values: Vec<(f64, String)> = (0..count)
        .into_par_iter()
        .map(&draw)
        .collect::<Result<_>>()?;
    let find =
        |pred: &dyn Fn(f64) -> bool| {
            values.iter().enumerate().find(|(_, (v, _))| pred(*v)).map(
                |(index, (value, reference))| Witness {
                    index,
                    reference: reference.clone(),
                    value: *value,
                },
            )
        };
    Ok(SignWitnesses {
        alpha,
        sampled: count,
        positive: find(&|v| v > SIGN_THRESHOLD),
        negative: find(&|v| v < -SIGN_THRESHOLD),
    })
}

/// Sign search over the Haar population of a three-qubit campaign, focus 0.
pub fn sign_witnesses_haar(count: usize, seed: RngSeed, alpha: f64) -> Result<SignWitnesses> {
    search_signs(alpha, count, |i| {
        let psi = campaign_state(3, seed, i)?;
        Ok((
            residual_concurrence(&psi, 0, alpha)?.value,
            state_reference(3, seed, i),
        ))
    })
}

/// Uniform random angles of the five-term Schmidt form.
pub fn random_schmidt_angles(seed: RngSeed) -> SchmidtAngles {
    let mut rng = seed.rng();
    let theta = std::array::from_fn(|_| rng.random_range(0.0..=std::f64::consts::FRAC_PI_2));
    SchmidtAngles {
        theta,
        phi: rng.random_range(0.0..std::f64::consts::TAU),
    }
}

/// Sign search over random Schmidt angles. Each witness value is the
/// closed form, cross-checked against the numerical residual of the built
/// state.
pub fn sign_witnesses_schmidt(count: usize, seed: RngSeed, alpha: f64) -> Result<SignWitnesses> {
    search_signs(alpha, count, |i| {
        let angles = random_schmidt_angles(seed.split(i as u64));
        let params = angles_to_params(&angles)?;
        let closed = residual_closed_form(&params, alpha);
        let numeric = residual_concurrence(&build_state(&params)?, 0, alpha)?.value;
        if (closed - numeric).abs() > 1e-9 {
            return Err(Error::Numerical(format!(
                "closed-form residual {closed} disagrees with numerical {numeric}"
            )));
        }
        let t = angles.theta;
        let reference = format!(
            "schmidt:theta=[{},{},{},{}]:phi={}",
            t[0], t[1], t[2], t[3], angles.phi
        );
        Ok((closed, reference))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monogamy::{DEFAULT_T1_ALPHAS, DEFAULT_T2_ALPHAS};

    fn cfg(n: usize, count: usize, theorems: Vec<TheoremId>) -> FuzzConfig {
        FuzzConfig::new(n, count, RngSeed(7), theorems)
    }

    #[test]
    fn deterministic_and_ordered() {
        let c = cfg(
            3,
            40,
            vec![TheoremId::T1, TheoremId::T2, TheoremId::T4, TheoremId::Ckw],
        );
        let a = run_campaign(&c).unwrap();
        let b = run_campaign(&c).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a.rows.windows(2).all(|w| w[0].state_id <= w[1].state_id));
        assert!(!a.has_violation());
        let t1 = a.summary(TheoremId::T1).unwrap();
        assert_eq!(t1.checks, 40 * DEFAULT_T1_ALPHAS.len());
        assert!(t1.min_margin.unwrap() >= -1e-9);
    }

    #[test]
    fn t2_filter_counts() {
        let c = cfg(4, 30, vec![TheoremId::T2]);
        let out = run_campaign(&c).unwrap();
        let ran = out.rows.len() / DEFAULT_T2_ALPHAS.len();
        assert_eq!(ran + out.t2_filtered, 30);
        assert!(out
            .rows
            .iter()
            .all(|r| r.result.outcome != Outcome::Vacuous));
    }

    #[test]
    fn config_errors() {
        assert!(run_campaign(&cfg(2, 5, vec![TheoremId::T1])).is_err());
        assert!(run_campaign(&cfg(6, 5, vec![TheoremId::T1])).is_err());
        assert!(run_campaign(&cfg(3, 0, vec![TheoremId::T1])).is_err());
        assert!(run_campaign(&cfg(3, 5, vec![])).is_err());
        assert!(run_campaign(&cfg(4, 5, vec![TheoremId::T6i])).is_err());
        let mut c = cfg(3, 5, vec![TheoremId::T1]);
        c.alphas = Some(vec![1.0]);
        assert!(matches!(run_campaign(&c), Err(Error::Regime { .. })));
    }

    #[test]
    fn sign_witnesses_exist() {
        let haar = sign_witnesses_haar(200, RngSeed(3), 1.0).unwrap();
        assert!(haar.both_found());
        let schmidt = sign_witnesses_schmidt(500, RngSeed(3), 1.0).unwrap();
        assert!(schmidt.both_found(), "{schmidt:?}");
        assert!(schmidt.positive.unwrap().value > SIGN_THRESHOLD);
    }

    #[test]
    fn schmidt_angles_in_range() {
        for i in 0..100 {
            let a = random_schmidt_angles(RngSeed(1).split(i));
            assert!(a
                .theta
                .iter()
                .all(|t| (0.0..=std::f64::consts::FRAC_PI_2).contains(t)));
        }
    }
}
