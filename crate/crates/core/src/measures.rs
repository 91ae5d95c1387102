//! Closed-form entanglement measures: concurrence (pure, two-qubit mixed,
//! assistance), entanglement of formation, the three-tangle and α-power
//! residual entanglements.

use serde::{Deserialize, Serialize};

use crate::linalg::{kron, pauli_y, singular_values, ComplexMatrix};
use crate::states::{Bipartition, DensityMatrix, PureState};
use crate::tolerance::{DOMAIN, RANK};
use crate::{Error, Result};

/// Smallest exponent for which concurrence monogamy is guaranteed.
pub const CONCURRENCE_ALPHA_MIN: f64 = 2.0;

/// Smallest exponent for which EoF monogamy is guaranteed (√2).
pub const EOF_ALPHA_MIN: f64 = std::f64::consts::SQRT_2;

fn smaller_side<'a>(psi: &PureState, part: &'a Bipartition) -> Result<&'a [usize]> {
    if part.n_qubits() != psi.n_qubits() {
        return Err(Error::Dimension(format!(
            "bipartition of {} qubits applied to a {}-qubit state",
            part.n_qubits(),
            psi.n_qubits()
        )));
    }
    Ok(if part.side_a().len() <= part.side_b().len() {
        part.side_a()
    } else {
        part.side_b()
    })
}

/// `C² = 2(1 - Tr ρ_A²)` for a pure state.
///
/// Evaluated as `4 Σ |2x2 minors of F|²` where `F` is the amplitude matrix
/// reshaped across the cut (`ρ_A = F·F†`). By Cauchy–Binet this equals
/// `2(‖ψ‖⁴ - Tr ρ_A²)` without the cancellation, so product states give
/// exactly zero.
pub fn concurrence_pure_sq(psi: &PureState, part: &Bipartition) -> Result<f64> {
    let f = psi.reduction_factor(smaller_side(psi, part)?);
    let (rows, cols) = (f.rows(), f.cols());
    let mut sum = 0.0;
    for i in 0..rows {
        for j in i + 1..rows {
            for k in 0..cols {
                for l in k + 1..cols {
                    sum += (f[(i, k)] * f[(j, l)] - f[(i, l)] * f[(j, k)]).norm_sqr();
                }
            }
        }
    }
    Ok(4.0 * sum)
}

/// Pure-state concurrence across a bipartition.
pub fn concurrence_pure(psi: &PureState, part: &Bipartition) -> Result<f64> {
    Ok(concurrence_pure_sq(psi, part)?.sqrt())
}

fn spin_flip_operator() -> ComplexMatrix {
    kron(&pauli_y(), &pauli_y())
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.n_qubits() != 2 {
        return Err(Error::Dimension(format!(
            "two-qubit measure applied to a {}-qubit density matrix",
            rho.n_qubits()
        )));
    }
    Ok(())
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`
pub fn spin_flip(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    require_two_qubits(rho)?;
    let yy = spin_flip_operator();
    Ok(&(&yy * &rho.matrix().conj()) * &yy)
}

/// Square roots of the eigenvalues of `ρρ̃` in decreasing order.
///
/// Computed as the singular values of `Fᵀ(σy⊗σy)F` for any factor `ρ = FF†`,
/// which are invariant under the choice of `F`. Reductions of pure states
/// supply `F` directly, so no square roots of near-zero eigenvalues are
/// taken.
pub fn wootters_mu(rho: &DensityMatrix) -> Result<Vec<f64>> {
    require_two_qubits(rho)?;
    let f = rho.factor()?;
    let tau = &(&f.transpose() * &spin_flip_operator()) * &f;
    let mut mu = singular_values(&tau)?;
    mu.resize(mu.len().max(4), 0.0);
    Ok(mu)
}

/// Two-qubit concurrence `max(0, μ1 - μ2 - μ3 - μ4)`.
pub fn concurrence_2q(rho: &DensityMatrix) -> Result<f64> {
    let mu = wootters_mu(rho)?;
    Ok((mu[0] - mu[1..].iter().sum::<f64>()).max(0.0))
}

/// Concurrence of assistance of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coa {
    pub value: f64,
    /// `false` when `rank ρ > 2`: the μ-sum is then only an upper bound.
    pub exact: bool,
}

/// `Σ μ_i`, exact for rank ≤ 2.
pub fn coa_2q(rho: &DensityMatrix) -> Result<Coa> {
    let mu = wootters_mu(rho)?;
    let rank = rank_of(rho)?;
    Ok(Coa {
        value: mu.iter().sum(),
        exact: rank <= 2,
    })
}

fn require_three_qubits(psi: &PureState) -> Result<()> {
    if psi.n_qubits() != 3 {
        return Err(Error::Arity {
            expected: "3".into(),
            got: psi.n_qubits(),
        });
    }
    Ok(())
}

fn check_qubit(q: usize, n: usize) -> Result<()> {
    if q >= n {
        return Err(Error::Bounds(format!("qubit {q} out of range 0..{n}")));
    }
    Ok(())
}

/// The two qubits other than `a` in a three-qubit register, ascending.
pub(crate) fn others(a: usize) -> [usize; 2] {
    match a {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

/// `√(C²(ρ_{a,partner}) + τ₃)` for a three-qubit pure state.
pub fn coa_via_tangle(psi: &PureState, a: usize, partner: usize) -> Result<f64> {
    require_three_qubits(psi)?;
    check_qubit(a, 3)?;
    check_qubit(partner, 3)?;
    if a == partner {
        return Err(Error::Bounds("focus and partner qubit coincide".into()));
    }
    let c = concurrence_2q(&psi.reduce(&[a, partner])?)?;
    let tau = three_tangle(psi, a)?;
    Ok((c * c + tau).max(0.0).sqrt())
}

fn clamp_unit(x: f64, what: &str) -> Result<f64> {
    if !(-DOMAIN..=1.0 + DOMAIN).contains(&x) || x.is_nan() {
        return Err(Error::Domain(format!(
            "{what}: argument {x} outside [0, 1]"
        )));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// `H(x) = -x log₂ x - (1-x) log₂(1-x)` with `0·log 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    let x = clamp_unit(x, "binary entropy")?;
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

/// `f(x) = H((1 + √(1-x))/2)`, the EoF of a two-qubit state with squared
/// concurrence `x`.
pub fn f_of(x: f64) -> Result<f64> {
    let x = clamp_unit(x, "f")?;
    binary_entropy(0.5 * (1.0 + (1.0 - x).sqrt()))
}

/// Von Neumann entropy in bits of a list of eigenvalues.
pub fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Entanglement entropy of a pure state across a bipartition.
pub fn eof_pure(psi: &PureState, part: &Bipartition) -> Result<f64> {
    let side = smaller_side(psi, part)?;
    if side.len() == 1 {
        // 2⊗m: E = f(C²)
        return f_of(concurrence_pure_sq(psi, part)?.min(1.0));
    }
    Ok(entropy_bits(&psi.reduce(side)?.spectrum()?))
}

/// Two-qubit entanglement of formation `f(C²)`.
pub fn eof_2q(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence_2q(rho)?;
    f_of((c * c).min(1.0))
}

/// Squared concurrences `(C²_{a|rest}, C²_{a,b}, C²_{a,c})` of a three-qubit
/// pure state, pairs in ascending partner order.
pub fn concurrence_triple_sq(psi: &PureState, a: usize) -> Result<(f64, f64, f64)> {
    require_three_qubits(psi)?;
    check_qubit(a, 3)?;
    let [b, c] = others(a);
    let whole = concurrence_pure_sq(psi, &Bipartition::single(a, 3)?)?;
    let ab = concurrence_2q(&psi.reduce(&[a, b])?)?;
    let ac = concurrence_2q(&psi.reduce(&[a, c])?)?;
    Ok((whole, ab * ab, ac * ac))
}

/// `C²_{a|rest} - C²_{ab} - C²_{ac}`
pub fn three_tangle(psi: &PureState, a: usize) -> Result<f64> {
    let (whole, ab, ac) = concurrence_triple_sq(psi, a)?;
    Ok(whole - ab - ac)
}

/// α-power residual entanglement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub alpha: f64,
    pub value: f64,
    /// Whether `alpha` lies where the residual is guaranteed non-negative.
    pub in_regime: bool,
}

/// `x^α` for `x ≥ 0`, given `x²`.
fn pow_from_sq(x_sq: f64, alpha: f64) -> f64 {
    x_sq.max(0.0).powf(alpha / 2.0)
}

/// `C^α_{a|rest} - C^α_{ab} - C^α_{ac}`. Any finite α is accepted;
/// `in_regime` marks α ≥ 2.
pub fn residual_concurrence(psi: &PureState, a: usize, alpha: f64) -> Result<Residual> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha = {alpha}")));
    }
    let (whole, ab, ac) = concurrence_triple_sq(psi, a)?;
    Ok(Residual {
        alpha,
        value: pow_from_sq(whole, alpha) - pow_from_sq(ab, alpha) - pow_from_sq(ac, alpha),
        in_regime: alpha >= CONCURRENCE_ALPHA_MIN,
    })
}

/// EoF values `(E_{a|rest}, E_{ab}, E_{ac})` of a three-qubit pure state.
pub fn eof_triple(psi: &PureState, a: usize) -> Result<(f64, f64, f64)> {
    let (whole, ab, ac) = concurrence_triple_sq(psi, a)?;
    Ok((
        f_of(whole.min(1.0))?,
        f_of(ab.min(1.0))?,
        f_of(ac.min(1.0))?,
    ))
}

/// `E^α_{a|rest} - E^α_{ab} - E^α_{ac}`; `in_regime` marks α ≥ √2. Depends
/// on the choice of `a`.
pub fn residual_eof(psi: &PureState, a: usize, alpha: f64) -> Result<Residual> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha = {alpha}")));
    }
    let (whole, ab, ac) = eof_triple(psi, a)?;
    Ok(Residual {
        alpha,
        value: whole.powf(alpha) - ab.powf(alpha) - ac.powf(alpha),
        in_regime: alpha >= EOF_ALPHA_MIN,
    })
}

/// Rank of a two-qubit reduction, used to flag inexact CoA values.
pub fn rank_of(rho: &DensityMatrix) -> Result<usize> {
    let f = rho.factor()?;
    Ok(singular_values(&f)?
        .iter()
        .filter(|&&s| s * s > RANK)
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eig, psd_sqrt, RngSeed, C64};
    use crate::states::{named_state, DensityMatrix};

    const W_E_WHOLE: f64 = 0.918296;
    const W_E_PAIR: f64 = 0.550048;

    fn bell() -> PureState {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(vec![
            C64::new(s, 0.0),
            C64::default(),
            C64::default(),
            C64::new(s, 0.0),
        ])
        .unwrap()
    }

    fn werner(p: f64) -> DensityMatrix {
        let m = &bell().projector().scale_real(p)
            + &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
        DensityMatrix::from_matrix(m).unwrap()
    }

    /// μ via the Hermitian route `eig(psd_sqrt(√ρ ρ̃ √ρ))`.
    fn mu_hermitian_route(rho: &DensityMatrix) -> Vec<f64> {
        let sr = psd_sqrt(rho.matrix()).unwrap();
        let inner = &(&sr * &spin_flip(rho).unwrap()) * &sr;
        let r = psd_sqrt(&inner).unwrap();
        let mut mu = hermitian_eig(&r).unwrap().values;
        mu.reverse();
        mu
    }

    #[test]
    fn pure_concurrence_examples() {
        let b = Bipartition::single(0, 2).unwrap();
        assert!((concurrence_pure(&bell(), &b).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            concurrence_pure(&PureState::basis(2, 0).unwrap(), &b).unwrap(),
            0.0
        );
        let w = named_state("w3").unwrap();
        let c = concurrence_pure(&w, &Bipartition::single(0, 3).unwrap()).unwrap();
        assert!((c - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-12);
    }

    #[test]
    fn pure_concurrence_is_side_symmetric() {
        let psi = PureState::haar_random(5, RngSeed(3)).unwrap();
        let part = Bipartition::new(&[1, 3], 5).unwrap();
        let a = concurrence_pure(&psi, &part).unwrap();
        let b = concurrence_pure(&psi, &part.swapped()).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn spin_flip_examples() {
        let phi = DensityMatrix::from_pure(&bell());
        assert!(spin_flip(&phi).unwrap().max_abs_diff(phi.matrix()) < 1e-15);

        let mixed =
            DensityMatrix::from_matrix(ComplexMatrix::identity(4).scale_real(0.25)).unwrap();
        assert!(spin_flip(&mixed).unwrap().max_abs_diff(mixed.matrix()) < 1e-15);

        let zz = DensityMatrix::from_pure(&PureState::basis(2, 0).unwrap());
        let oo = PureState::basis(2, 3).unwrap().projector();
        assert!(spin_flip(&zz).unwrap().max_abs_diff(&oo) < 1e-15);

        let one = DensityMatrix::from_matrix(ComplexMatrix::from_diag(&[1.0, 0.0])).unwrap();
        assert!(matches!(spin_flip(&one), Err(Error::Dimension(_))));
    }

    #[test]
    fn two_qubit_concurrence_examples() {
        let phi = DensityMatrix::from_pure(&bell());
        assert!((concurrence_2q(&phi).unwrap() - 1.0).abs() < 1e-14);

        let w = named_state("w3").unwrap();
        let rho = w.reduce(&[0, 1]).unwrap();
        assert!((concurrence_2q(&rho).unwrap() - 2.0 / 3.0).abs() < 1e-14);

        // Werner: max(0, (3p-1)/2)
        for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
            let c = concurrence_2q(&werner(p)).unwrap();
            assert!(
                (c - ((3.0 * p - 1.0) / 2.0).max(0.0)).abs() < 1e-12,
                "p={p}: {c}"
            );
        }
    }

    #[test]
    fn mu_matches_hermitian_route() {
        for seed in 0..20 {
            let psi = PureState::haar_random(4, RngSeed(seed)).unwrap();
            let rho = psi.reduce(&[0, 2]).unwrap();
            let fast = wootters_mu(&rho).unwrap();
            let slow = mu_hermitian_route(&rho);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() < 1e-6, "{fast:?} vs {slow:?}");
            }
        }
    }

    #[test]
    fn coa_examples() {
        let phi = DensityMatrix::from_pure(&bell());
        let coa = coa_2q(&phi).unwrap();
        assert!((coa.value - 1.0).abs() < 1e-14 && coa.exact);

        let w = named_state("w3").unwrap();
        let coa = coa_2q(&w.reduce(&[0, 1]).unwrap()).unwrap();
        assert!((coa.value - 2.0 / 3.0).abs() < 1e-14);

        let g = named_state("ghz3").unwrap();
        let coa = coa_2q(&g.reduce(&[0, 1]).unwrap()).unwrap();
        assert!((coa.value - 1.0).abs() < 1e-14);

        let coa = coa_2q(&werner(0.5)).unwrap();
        assert!(!coa.exact);
    }

    #[test]
    fn coa_via_tangle_examples() {
        let w = named_state("w3").unwrap();
        assert!((coa_via_tangle(&w, 0, 1).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        let g = named_state("ghz3").unwrap();
        assert!((coa_via_tangle(&g, 0, 1).unwrap() - 1.0).abs() < 1e-12);
        let prod = PureState::basis(1, 0).unwrap().tensor(&bell()).unwrap();
        assert!(coa_via_tangle(&prod, 0, 1).unwrap() < 1e-7);
        assert!(matches!(
            coa_via_tangle(&bell(), 0, 1),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn entropy_and_f() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.872678).unwrap() - W_E_PAIR).abs() < 1e-6);
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(-1e-13).is_ok());

        assert_eq!(f_of(0.0).unwrap(), 0.0);
        assert!((f_of(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((f_of(4.0 / 9.0).unwrap() - W_E_PAIR).abs() < 1e-6);
        assert!(f_of(-0.1).is_err());
    }

    #[test]
    fn eof_examples() {
        let b = Bipartition::single(0, 2).unwrap();
        assert!((eof_pure(&bell(), &b).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(eof_pure(&PureState::basis(2, 1).unwrap(), &b).unwrap(), 0.0);
        let w = named_state("w3").unwrap();
        let e = eof_pure(&w, &Bipartition::single(0, 3).unwrap()).unwrap();
        assert!((e - W_E_WHOLE).abs() < 1e-6);

        assert!((eof_2q(&w.reduce(&[0, 1]).unwrap()).unwrap() - W_E_PAIR).abs() < 1e-6);
        let sep =
            DensityMatrix::from_matrix(ComplexMatrix::from_diag(&[0.5, 0.0, 0.0, 0.5])).unwrap();
        assert_eq!(eof_2q(&sep).unwrap(), 0.0);
        assert!((eof_2q(&DensityMatrix::from_pure(&bell())).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eof_pure_multi_qubit_side_matches_entropy() {
        let psi = PureState::haar_random(4, RngSeed(12)).unwrap();
        let part = Bipartition::new(&[0, 1], 4).unwrap();
        let e = eof_pure(&psi, &part).unwrap();
        let e_swapped = eof_pure(&psi, &part.swapped()).unwrap();
        assert!((e - e_swapped).abs() < 1e-9);
        assert!(e > 0.0 && e <= 2.0);
    }

    #[test]
    fn tangle_examples() {
        assert!((three_tangle(&named_state("ghz3").unwrap(), 0).unwrap() - 1.0).abs() < 1e-14);
        assert!(three_tangle(&named_state("w3").unwrap(), 0).unwrap().abs() < 1e-14);
        let prod = PureState::basis(1, 0).unwrap().tensor(&bell()).unwrap();
        assert!(three_tangle(&prod, 0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn residual_examples() {
        let w = named_state("w3").unwrap();
        let r2 = residual_concurrence(&w, 0, 2.0).unwrap();
        assert!(r2.value.abs() < 1e-14 && r2.in_regime);
        let s3 = 3f64.sqrt();
        let expected = (2.0 / s3).powi(3) * ((2.0f64 / 3.0).powf(1.5) - 2.0 / s3.powi(3));
        let r3 = residual_concurrence(&w, 0, 3.0).unwrap();
        assert!((r3.value - expected).abs() < 1e-12);
        assert!((r3.value - 0.245460).abs() < 1e-6);
        assert!(!residual_concurrence(&w, 0, 1.0).unwrap().in_regime);

        let g = named_state("ghz3").unwrap();
        for alpha in [2.0, 2.5, 7.0] {
            assert!((residual_concurrence(&g, 1, alpha).unwrap().value - 1.0).abs() < 1e-14);
        }

        for alpha in [EOF_ALPHA_MIN, 2.0, 3.5] {
            let r = residual_eof(&w, 0, alpha).unwrap();
            let expected = W_E_WHOLE.powf(alpha) - 2.0 * W_E_PAIR.powf(alpha);
            assert!((r.value - expected).abs() < 1e-5);
        }
        let prod = PureState::basis(1, 0).unwrap().tensor(&bell()).unwrap();
        assert!(residual_eof(&prod, 0, 2.0).unwrap().value.abs() < 1e-14);
        assert!((residual_eof(&g, 0, EOF_ALPHA_MIN).unwrap().value - 1.0).abs() < 1e-14);
    }
}
