use std::f64::consts::SQRT_2;

use crate::convexroof::{eoa_lower, RoofConfig};
use crate::measures::{
    coa_2q, concurrence_2q, concurrence_pure_sq, eof_2q, eof_pure, f_of, others, residual_eof,
    three_tangle, CONCURRENCE_ALPHA_MIN, EOF_ALPHA_MIN,
};
use crate::states::{Bipartition, PureState};
use crate::tolerance::{CLOSED_FORM, STRICT, ZERO_CONCURRENCE};
use crate::{Error, Result};

use super::{CheckResult, Outcome, TheoremId};

pub const DEFAULT_T1_ALPHAS: [f64; 4] = [2.0, 2.5, 3.0, 4.0];
pub const DEFAULT_T2_ALPHAS: [f64; 3] = [-2.0, -1.0, 0.0];
pub const DEFAULT_T4_ALPHAS: [f64; 4] = [SQRT_2, 1.5, 2.0, 3.0];

fn require_multipartite(psi: &PureState, a: usize) -> Result<()> {
    if psi.n_qubits() < 3 {
        return Err(Error::Arity {
            expected: "at least 3".into(),
            got: psi.n_qubits(),
        });
    }
    if a >= psi.n_qubits() {
        return Err(Error::Bounds(format!(
            "focus qubit {a} out of range 0..{}",
            psi.n_qubits()
        )));
    }
    Ok(())
}

fn require_three(psi: &PureState, a: usize) -> Result<()> {
    if psi.n_qubits() != 3 {
        return Err(Error::Arity {
            expected: "3".into(),
            got: psi.n_qubits(),
        });
    }
    require_multipartite(psi, a)
}

fn partners(psi: &PureState, a: usize) -> impl Iterator<Item = usize> {
    (0..psi.n_qubits()).filter(move |&b| b != a)
}

fn whole_sq(psi: &PureState, a: usize) -> Result<f64> {
    concurrence_pure_sq(psi, &Bipartition::single(a, psi.n_qubits())?)
}

fn pair_concurrences(psi: &PureState, a: usize) -> Result<Vec<f64>> {
    partners(psi, a)
        .map(|b| concurrence_2q(&psi.reduce(&[a, b])?))
        .collect()
}

fn require_alphas(alphas: &[f64], ok: impl Fn(f64) -> bool, regime: &'static str) -> Result<()> {
    match alphas
        .iter()
        .find(|&&alpha| !alpha.is_finite() || !ok(alpha))
    {
        Some(&alpha) => Err(Error::Regime { alpha, regime }),
        None => Ok(()),
    }
}

pub fn check_ckw(psi: &PureState, a: usize) -> Result<CheckResult> {
    require_multipartite(psi, a)?;
    let lhs = whole_sq(psi, a)?;
    let rhs: f64 = pair_concurrences(psi, a)?.iter().map(|c| c * c).sum();
    Ok(CheckResult::closed_form(
        TheoremId::Ckw,
        a,
        2.0,
        lhs,
        rhs,
        lhs - rhs,
    ))
}

/// CoA of each reduction from the μ-sum. Reductions of rank > 2 (possible
/// from four qubits on) only give an upper bound and raise `rank_flag`;
/// failures are then reported as inconclusive.
pub fn check_dual_ckw(psi: &PureState, a: usize) -> Result<CheckResult> {
    require_multipartite(psi, a)?;
    let lhs = whole_sq(psi, a)?;
    let mut rhs = 0.0;
    let mut rank_flag = false;
    for b in partners(psi, a) {
        let coa = coa_2q(&psi.reduce(&[a, b])?)?;
        rhs += coa.value * coa.value;
        rank_flag |= !coa.exact;
    }
    let mut r = CheckResult::closed_form(TheoremId::DualCkw, a, 2.0, lhs, rhs, rhs - lhs);
    r.rank_flag = rank_flag;
    if rank_flag && !r.pass {
        r.outcome = Outcome::Inconclusive;
    }
    Ok(r)
}

/// `C^α_{A|rest} ≥ Σ C^α_{AB_i}` for α ≥ 2.
pub fn check_theorem1(psi: &PureState, a: usize, alphas: &[f64]) -> Result<Vec<CheckResult>> {
    require_multipartite(psi, a)?;
    require_alphas(alphas, |x| x >= CONCURRENCE_ALPHA_MIN, "α ≥ 2")?;
    let whole = whole_sq(psi, a)?;
    let pairs = pair_concurrences(psi, a)?;
    Ok(alphas
        .iter()
        .map(|&alpha| {
            let lhs = whole.max(0.0).powf(alpha / 2.0);
            let rhs: f64 = pairs.iter().map(|c| c.powf(alpha)).sum();
            CheckResult::closed_form(TheoremId::T1, a, alpha, lhs, rhs, lhs - rhs)
        })
        .collect())
}

/// `C^α_{A|rest} < Σ C^α_{AB_i}` for α ≤ 0, over the non-vanishing pairs.
/// With no such pair the check is vacuous.
pub fn check_theorem2(psi: &PureState, a: usize, alphas: &[f64]) -> Result<Vec<CheckResult>> {
    require_multipartite(psi, a)?;
    require_alphas(alphas, |x| x <= 0.0, "α ≤ 0")?;
    let whole = whole_sq(psi, a)?.max(0.0).sqrt();
    let pairs: Vec<f64> = pair_concurrences(psi, a)?
        .into_iter()
        .filter(|&c| c > ZERO_CONCURRENCE)
        .collect();
    Ok(alphas
        .iter()
        .map(|&alpha| {
            let lhs = whole.powf(alpha);
            if pairs.is_empty() {
                let mut r = CheckResult::closed_form(TheoremId::T2, a, alpha, lhs, 0.0, 0.0);
                r.outcome = Outcome::Vacuous;
                return r;
            }
            let rhs: f64 = pairs.iter().map(|c| c.powf(alpha)).sum();
            let margin = rhs - lhs;
            let mut r = CheckResult::closed_form(TheoremId::T2, a, alpha, lhs, rhs, margin);
            r.strict = Some(margin > STRICT);
            r
        })
        .collect())
}

/// `E^α_{A|rest} ≥ Σ E^α_{AB_i}` for α ≥ √2.
pub fn check_theorem4(psi: &PureState, a: usize, alphas: &[f64]) -> Result<Vec<CheckResult>> {
    require_multipartite(psi, a)?;
    require_alphas(alphas, |x| x >= EOF_ALPHA_MIN, "α ≥ √2")?;
    let whole = eof_pure(psi, &Bipartition::single(a, psi.n_qubits())?)?;
    let pairs: Vec<f64> = partners(psi, a)
        .map(|b| eof_2q(&psi.reduce(&[a, b])?))
        .collect::<Result<_>>()?;
    Ok(alphas
        .iter()
        .map(|&alpha| {
            let lhs = whole.powf(alpha);
            let rhs: f64 = pairs.iter().map(|e| e.powf(alpha)).sum();
            CheckResult::closed_form(TheoremId::T4, a, alpha, lhs, rhs, lhs - rhs)
        })
        .collect())
}

/// Lower bound on `E_a` of a reduction: the optimizer value, raised to
/// `f(C_a²)` when the CoA closed form is exact. The second component is
/// that closed-form bound, if available.
fn eoa_lower_bound(
    psi: &PureState,
    a: usize,
    b: usize,
    cfg: &RoofConfig,
) -> Result<(f64, Option<f64>)> {
    let rho = psi.reduce(&[a, b])?;
    let searched = eoa_lower(&rho, cfg)?.value;
    let coa = coa_2q(&rho)?;
    if !coa.exact {
        return Ok((searched, None));
    }
    let closed = f_of((coa.value * coa.value).min(1.0))?;
    Ok((searched.max(closed), Some(closed)))
}

/// Verdict for an optimizer-backed margin. Only a failing closed-form chain
/// counts as a violation.
fn assisted_outcome(r: &mut CheckResult, chain: Option<f64>) {
    r.closed_form_margin = chain;
    r.rank_flag = chain.is_none();
    r.outcome = match (r.pass, chain) {
        (true, _) => Outcome::Pass,
        (false, Some(c)) if c < -CLOSED_FORM => Outcome::Violation,
        _ => Outcome::Inconclusive,
    };
}

fn assisted(
    theorem: TheoremId,
    a: usize,
    alpha: f64,
    (lhs, rhs, margin): (f64, f64, f64),
    chain: Option<f64>,
) -> CheckResult {
    let mut r = CheckResult::closed_form(theorem, a, alpha, lhs, rhs, margin);
    assisted_outcome(&mut r, chain);
    r
}

/// `E_{A|rest} ≤ Σ E_a(ρ_{AB_i})` with numerical lower bounds on each `E_a`.
/// Reported at α = 1.
pub fn check_theorem5(psi: &PureState, a: usize, cfg: &RoofConfig) -> Result<CheckResult> {
    require_multipartite(psi, a)?;
    let whole = eof_pure(psi, &Bipartition::single(a, psi.n_qubits())?)?;
    let mut rhs = 0.0;
    let mut chain = Some(0.0);
    for b in partners(psi, a) {
        let (bound, closed) = eoa_lower_bound(psi, a, b, cfg)?;
        rhs += bound;
        chain = chain.zip(closed).map(|(s, c)| s + c);
    }
    let sides = (whole, rhs, rhs - whole);
    Ok(assisted(
        TheoremId::T5,
        a,
        1.0,
        sides,
        chain.map(|c| c - whole),
    ))
}

/// Both bounds of the three-qubit EoF/EoA relation, per α ≥ √2:
///
/// * `t6i`: `τ^E_α ≥ f^α(τ₃)`
/// * `t6i_f2`: `τ^E_α ≥ f²(τ₃)`, diagnostic only
/// * `t6ii`: `E_a^α(ρ_{AB}) ≥ E^α(ρ_{AB}) + f^α(τ₃)` with B the first
///   qubit other than A
pub fn check_theorem6(
    psi: &PureState,
    a: usize,
    alphas: &[f64],
    cfg: &RoofConfig,
) -> Result<Vec<CheckResult>> {
    require_three(psi, a)?;
    require_alphas(alphas, |x| x >= EOF_ALPHA_MIN, "α ≥ √2")?;
    let f_tau = f_of(three_tangle(psi, a)?.clamp(0.0, 1.0))?;
    let b = others(a)[0];
    let e_ab = eof_2q(&psi.reduce(&[a, b])?)?;
    let (bound, closed) = eoa_lower_bound(psi, a, b, cfg)?;

    let mut out = Vec::with_capacity(3 * alphas.len());
    for &alpha in alphas {
        let residual = residual_eof(psi, a, alpha)?.value;
        let rhs = f_tau.powf(alpha);
        out.push(CheckResult::closed_form(
            TheoremId::T6i,
            a,
            alpha,
            residual,
            rhs,
            residual - rhs,
        ));

        let rhs_sq = f_tau * f_tau;
        let mut diag = CheckResult::closed_form(
            TheoremId::T6iSquared,
            a,
            alpha,
            residual,
            rhs_sq,
            residual - rhs_sq,
        );
        diag.diagnostic = true;
        out.push(diag);

        let rhs = e_ab.powf(alpha) + f_tau.powf(alpha);
        let chain = closed.map(|c| c.powf(alpha) - rhs);
        let lhs = bound.powf(alpha);
        out.push(assisted(
            TheoremId::T6ii,
            a,
            alpha,
            (lhs, rhs, lhs - rhs),
            chain,
        ));
    }
    Ok(out)
}

/// Runs the selected checks on one state. Each theorem uses its default α
/// grid unless `alphas` is given. Results come in [`TheoremId`] order.
pub fn run_checks(
    psi: &PureState,
    a: usize,
    theorems: &[TheoremId],
    alphas: Option<&[f64]>,
    cfg: &RoofConfig,
) -> Result<Vec<CheckResult>> {
    let wants = |t: TheoremId| theorems.contains(&t);
    let grid = |default: &'static [f64]| alphas.unwrap_or(default);
    let mut out = Vec::new();
    if wants(TheoremId::Ckw) {
        out.push(check_ckw(psi, a)?);
    }
    if wants(TheoremId::DualCkw) {
        out.push(check_dual_ckw(psi, a)?);
    }
    if wants(TheoremId::T1) {
        out.extend(check_theorem1(psi, a, grid(&DEFAULT_T1_ALPHAS))?);
    }
    if wants(TheoremId::T2) {
        out.extend(check_theorem2(psi, a, grid(&DEFAULT_T2_ALPHAS))?);
    }
    if wants(TheoremId::T4) {
        out.extend(check_theorem4(psi, a, grid(&DEFAULT_T4_ALPHAS))?);
    }
    if wants(TheoremId::T5) {
        out.push(check_theorem5(psi, a, cfg)?);
    }
    if [TheoremId::T6i, TheoremId::T6iSquared, TheoremId::T6ii]
        .into_iter()
        .any(wants)
    {
        let rows = check_theorem6(psi, a, grid(&DEFAULT_T4_ALPHAS), cfg)?;
        out.extend(rows.into_iter().filter(|r| wants(r.theorem)));
    }
    Ok(out)
}

/// `(E^α(ρ_{a,partner}) + f^α(τ₃))^{1/α}`, a lower bound on `E_a(ρ_{a,partner})`.
pub fn eoa_bound(psi: &PureState, a: usize, partner: usize, alpha: f64) -> Result<f64> {
    require_three(psi, a)?;
    if partner >= 3 || partner == a {
        return Err(Error::Bounds(format!(
            "partner qubit {partner} for focus {a}"
        )));
    }
    require_alphas(&[alpha], |x| x >= EOF_ALPHA_MIN, "α ≥ √2")?;
    let e = eof_2q(&psi.reduce(&[a, partner])?)?;
    let f_tau = f_of(three_tangle(psi, a)?.clamp(0.0, 1.0))?;
    Ok((e.powf(alpha) + f_tau.powf(alpha)).powf(1.0 / alpha))
}
