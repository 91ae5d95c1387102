//! Numerical search over pure-state decompositions of two-qubit density
//! matrices.
//!
//! Every decomposition of `ρ = F·F†` into `K` members is `Ψ = F·Mᵀ` for a
//! `K×r` isometry `M` (columns of `Ψ` are the unnormalized members). The
//! isometry is taken as the first `r` columns of a product of complex Givens
//! rotations, and the rotation angles are searched by gradient-free
//! coordinate descent with a shrinking step. Any isometry yields a feasible
//! ensemble, so minimization returns an upper bound on a convex roof and
//! maximization a lower bound on the corresponding assistance quantity.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{ComplexMatrix, RngSeed, C64};
use crate::measures::f_of;
use crate::states::{DensityMatrix, Ensemble, PureState};
use crate::{Error, Result};

/// Pure-state measure averaged over ensemble members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PureMeasure {
    Concurrence,
    Eof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoofConfig {
    /// Number of ensemble members; `None` means `rank²`.
    pub ensemble_size: Option<usize>,
    pub restarts: usize,
    pub max_iters: usize,
    /// Search stops once the coordinate step shrinks below this.
    pub step_tolerance: f64,
    pub seed: RngSeed,
}

impl Default for RoofConfig {
    fn default() -> Self {
        Self {
            ensemble_size: None,
            restarts: 32,
            max_iters: 500,
            step_tolerance: 1e-8,
            seed: RngSeed(0x5EED),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoofResult {
    pub value: f64,
    pub ensemble: Ensemble,
    pub direction: Direction,
    pub measure: PureMeasure,
    pub converged: bool,
    pub iterations: usize,
    /// Index of the restart that produced the result.
    pub restart: usize,
}

/// Members with probability below this are dropped from returned ensembles.
const NEGLIGIBLE_WEIGHT: f64 = 1e-18;

const INITIAL_STEP: f64 = PI / 4.0;

/// `p·m(ψ/√p)` for an unnormalized two-qubit vector of weight `p`.
fn weighted_measure(measure: PureMeasure, psi: &[C64]) -> f64 {
    let p: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if p <= 0.0 {
        return 0.0;
    }
    // C(ψ̃) · p = 2|ad - bc|
    let weighted_c = 2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm();
    match measure {
        PureMeasure::Concurrence => weighted_c,
        PureMeasure::Eof => {
            let c = (weighted_c / p).min(1.0);
            p * f_of(c * c).unwrap_or(0.0)
        }
    }
}

/// `Ψ = F·Mᵀ`; column `k` is the unnormalized member `k`.
fn members(factor: &ComplexMatrix, mix: &ComplexMatrix) -> ComplexMatrix {
    factor * &mix.transpose()
}

fn objective(measure: PureMeasure, factor: &ComplexMatrix, mix: &ComplexMatrix) -> f64 {
    let psi = members(factor, mix);
    (0..psi.cols())
        .map(|k| weighted_measure(measure, &psi.column(k)))
        .sum()
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.n_qubits() != 2 {
        return Err(Error::Dimension(format!(
            "convex-roof search supports two-qubit states only, got {} qubits",
            rho.n_qubits()
        )));
    }
    Ok(())
}

/// Decomposition of `ρ` induced by an isometry `mix` (`K×r`, orthonormal
/// columns) acting on the factor `F` of `ρ = F·F†`.
pub fn ensemble_from_isometry(rho: &DensityMatrix, mix: &ComplexMatrix) -> Result<Ensemble> {
    let factor = rho.factor()?;
    if mix.cols() != factor.cols() {
        return Err(Error::Dimension(format!(
            "isometry has {} columns, the decomposition basis has {}",
            mix.cols(),
            factor.cols()
        )));
    }
    let gram = &mix.dagger() * mix;
    let defect = gram.max_abs_diff(&ComplexMatrix::identity(mix.cols()));
    if defect > 1e-10 {
        return Err(Error::Validation {
            what: "isometry",
            detail: format!("columns deviate from orthonormal by {defect:e}"),
        });
    }
    ensemble_from_members(&members(&factor, mix))
}

fn ensemble_from_members(psi: &ComplexMatrix) -> Result<Ensemble> {
    let mut out = Vec::with_capacity(psi.cols());
    for k in 0..psi.cols() {
        let v = psi.column(k);
        let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if p < NEGLIGIBLE_WEIGHT {
            continue;
        }
        out.push((p, PureState::normalized(v)?));
    }
    Ensemble::new(out)
}

/// Complex Givens rotation angles `(θ, φ)` for every pair `i < j` of a
/// `K`-dimensional space.
#[derive(Clone, Debug)]
struct GivensChain {
    dim: usize,
    params: Vec<f64>,
}

impl GivensChain {
    fn n_pairs(dim: usize) -> usize {
        dim * (dim - 1) / 2
    }

    fn random<R: Rng>(dim: usize, rng: &mut R) -> Self {
        let params = (0..Self::n_pairs(dim))
            .flat_map(|_| [rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)])
            .collect();
        Self { dim, params }
    }

    /// First `cols` columns of `G_1 · G_2 ⋯ G_P`.
    fn isometry(&self, cols: usize) -> ComplexMatrix {
        let mut u = ComplexMatrix::identity(self.dim);
        let mut k = 0;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let (theta, phi) = (self.params[2 * k], self.params[2 * k + 1]);
                let (s, c) = theta.sin_cos();
                let e = C64::from_polar(1.0, phi);
                let g = [[C64::new(c, 0.0), -e.conj() * s], [e * s, C64::new(c, 0.0)]];
                u.rotate_columns(i, j, g);
                k += 1;
            }
        }
        let mut m = ComplexMatrix::zeros(self.dim, cols);
        for r in 0..self.dim {
            for c in 0..cols {
                m[(r, c)] = u[(r, c)];
            }
        }
        m
    }
}

struct RestartOutcome {
    value: f64,
    mix: ComplexMatrix,
    converged: bool,
    iterations: usize,
}

fn run_restart(
    factor: &ComplexMatrix,
    measure: PureMeasure,
    direction: Direction,
    ensemble_size: usize,
    cfg: &RoofConfig,
    seed: RngSeed,
) -> RestartOutcome {
    let rank = factor.cols();
    let sign = match direction {
        Direction::Minimize => 1.0,
        Direction::Maximize => -1.0,
    };
    let score = |chain: &GivensChain| sign * objective(measure, factor, &chain.isometry(rank));

    let mut rng = seed.rng();
    let mut chain = GivensChain::random(ensemble_size, &mut rng);
    let mut best = score(&chain);
    let mut step = INITIAL_STEP;
    let mut iterations = 0;
    while iterations < cfg.max_iters && step >= cfg.step_tolerance {
        iterations += 1;
        let mut improved = false;
        for idx in 0..chain.params.len() {
            for delta in [step, -step] {
                let old = chain.params[idx];
                chain.params[idx] = old + delta;
                let trial = score(&chain);
                if trial < best {
                    best = trial;
                    improved = true;
                    break;
                }
                chain.params[idx] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    RestartOutcome {
        value: sign * best,
        mix: chain.isometry(rank),
        converged: step < cfg.step_tolerance,
        iterations,
    }
}

/// Searches decompositions of a two-qubit `ρ` for the smallest or largest
/// ensemble average of `measure`. Restarts run in parallel; the best value
/// wins with ties going to the lower restart index.
pub fn optimize_roof(
    rho: &DensityMatrix,
    measure: PureMeasure,
    direction: Direction,
    cfg: &RoofConfig,
) -> Result<RoofResult> {
    require_two_qubits(rho)?;
    let factor = rho.factor()?.into_owned();
    let rank = factor.cols();
    if rank == 0 {
        return Err(Error::Validation {
            what: "density matrix",
            detail: "zero matrix has no decomposition".into(),
        });
    }
    let ensemble_size = cfg.ensemble_size.unwrap_or(rank * rank).max(rank);
    if ensemble_size == 1 {
        let mix = ComplexMatrix::identity(1);
        let ensemble = ensemble_from_isometry(rho, &mix)?;
        return Ok(RoofResult {
            value: objective(measure, &factor, &mix),
            ensemble,
            direction,
            measure,
            converged: true,
            iterations: 0,
            restart: 0,
        });
    }

    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            run_restart(
                &factor,
                measure,
                direction,
                ensemble_size,
                cfg,
                cfg.seed.split(r as u64),
            )
        })
        .collect();

    let better = |a: f64, b: f64| match direction {
        Direction::Minimize => a < b,
        Direction::Maximize => a > b,
    };
    let mut best_idx = 0;
    for (i, o) in outcomes.iter().enumerate().skip(1) {
        if better(o.value, outcomes[best_idx].value) {
            best_idx = i;
        }
    }
    let best = &outcomes[best_idx];
    Ok(RoofResult {
        value: best.value,
        ensemble: ensemble_from_members(&members(&factor, &best.mix))?,
        direction,
        measure,
        converged: best.converged,
        iterations: best.iterations,
        restart: best_idx,
    })
}

/// Lower bound on the entanglement of assistance of a two-qubit state.
pub fn eoa_lower(rho: &DensityMatrix, cfg: &RoofConfig) -> Result<RoofResult> {
    optimize_roof(rho, PureMeasure::Eof, Direction::Maximize, cfg)
}

/// Ensemble average of `measure` evaluated member by member.
pub fn ensemble_value(ensemble: &Ensemble, measure: PureMeasure) -> f64 {
    ensemble.average(|s| weighted_measure(measure, s.amplitudes()))
}
