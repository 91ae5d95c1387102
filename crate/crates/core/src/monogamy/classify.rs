use std::fmt;

use serde::{Deserialize, Serialize};

use crate::measures::{concurrence_triple_sq, CONCURRENCE_ALPHA_MIN};
use crate::states::PureState;
use crate::tolerance::{CLASSIFIER, PURITY};
use crate::{Error, Result};

pub const DEFAULT_CLASSIFY_ALPHAS: [f64; 5] = [2.0, 2.5, 3.0, 4.0, 6.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "separable_A|BC")]
    SeparableA,
    #[serde(rename = "separable_B|AC")]
    SeparableB,
    #[serde(rename = "separable_C|AB")]
    SeparableC,
    #[serde(rename = "fully_product")]
    FullyProduct,
    #[serde(rename = "genuine")]
    Genuine,
    #[serde(rename = "undetermined")]
    Undetermined,
}

impl Label {
    pub fn tag(self) -> &'static str {
        match self {
            Label::SeparableA => "separable_A|BC",
            Label::SeparableB => "separable_B|AC",
            Label::SeparableC => "separable_C|AB",
            Label::FullyProduct => "fully_product",
            Label::Genuine => "genuine",
            Label::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub focus: usize,
    pub alpha: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub label: Label,
    /// Smallest grid α at which some focus choice has a residual above the
    /// threshold.
    pub detected_at: Option<f64>,
    /// `Tr ρ_q²` of each single-qubit reduction.
    pub purities: [f64; 3],
    pub residuals: Vec<ResidualEntry>,
}

impl Classification {
    pub fn max_residual(&self) -> f64 {
        self.residuals
            .iter()
            .map(|r| r.value)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    let invalid = |detail: String| Error::Validation {
        what: "classifier α grid",
        detail,
    };
    if let Some(bad) = grid
        .iter()
        .find(|&&a| !a.is_finite() || a < CONCURRENCE_ALPHA_MIN)
    {
        return Err(invalid(format!("α = {bad} below 2")));
    }
    if !grid.contains(&CONCURRENCE_ALPHA_MIN) {
        return Err(invalid("must contain α = 2".into()));
    }
    if !grid.iter().any(|&a| a > CONCURRENCE_ALPHA_MIN) {
        return Err(invalid("needs at least one α > 2".into()));
    }
    Ok(())
}

/// Labels a three-qubit pure state from its concurrence residuals.
///
/// `genuine` iff some residual over the grid and the three focus choices
/// exceeds `1e-7`. Otherwise the label follows from which single-qubit
/// reductions are pure, and is `undetermined` when none is.
pub fn classify_pure3(psi: &PureState, grid: &[f64]) -> Result<Classification> {
    if psi.n_qubits() != 3 {
        return Err(Error::Arity {
            expected: "3".into(),
            got: psi.n_qubits(),
        });
    }
    validate_grid(grid)?;
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();

    let mut residuals = Vec::with_capacity(3 * sorted.len());
    let mut purities = [0.0; 3];
    for focus in 0..3 {
        let (whole, ab, ac) = concurrence_triple_sq(psi, focus)?;
        // Tr ρ² = 1 - C²/2 for a single-qubit reduction
        purities[focus] = 1.0 - whole / 2.0;
        for &alpha in &sorted {
            let p = |x: f64| x.max(0.0).powf(alpha / 2.0);
            residuals.push(ResidualEntry {
                focus,
                alpha,
                value: p(whole) - p(ab) - p(ac),
            });
        }
    }

    let detected_at = sorted.iter().copied().find(|&alpha| {
        residuals
            .iter()
            .any(|r| r.alpha == alpha && r.value > CLASSIFIER)
    });
    let pure: Vec<bool> = purities.iter().map(|&p| p > 1.0 - PURITY).collect();
    let label = if detected_at.is_some() {
        Label::Genuine
    } else {
        match pure.as_slice() {
            [true, true, _] | [true, _, true] | [_, true, true] => Label::FullyProduct,
            [true, false, false] => Label::SeparableA,
            [false, true, false] => Label::SeparableB,
            [false, false, true] => Label::SeparableC,
            _ => Label::Undetermined,
        }
    };
    Ok(Classification {
        label,
        detected_at,
        purities,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{RngSeed, C64};
    use crate::states::named_state;

    fn phi_plus() -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(vec![
            C64::new(h, 0.0),
            C64::default(),
            C64::default(),
            C64::new(h, 0.0),
        ])
        .unwrap()
    }

    fn zero() -> PureState {
        PureState::basis(1, 0).unwrap()
    }

    #[test]
    fn separable_labels() {
        let a_bc = zero().tensor(&phi_plus()).unwrap();
        assert_eq!(
            classify_pure3(&a_bc, &DEFAULT_CLASSIFY_ALPHAS)
                .unwrap()
                .label,
            Label::SeparableA
        );

        let ab_c = phi_plus().tensor(&zero()).unwrap();
        assert_eq!(
            classify_pure3(&ab_c, &DEFAULT_CLASSIFY_ALPHAS)
                .unwrap()
                .label,
            Label::SeparableC
        );

        // qubits 0 and 2 entangled, qubit 1 alone
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![C64::default(); 8];
        amps[0b000] = C64::new(h, 0.0);
        amps[0b101] = C64::new(h, 0.0);
        let b_ac = PureState::new(amps).unwrap();
        assert_eq!(
            classify_pure3(&b_ac, &DEFAULT_CLASSIFY_ALPHAS)
                .unwrap()
                .label,
            Label::SeparableB
        );

        let c = classify_pure3(&PureState::basis(3, 0).unwrap(), &DEFAULT_CLASSIFY_ALPHAS).unwrap();
        assert_eq!(c.label, Label::FullyProduct);
        assert_eq!(c.detected_at, None);
    }

    #[test]
    fn genuine_examples() {
        let ghz = classify_pure3(&named_state("ghz3").unwrap(), &DEFAULT_CLASSIFY_ALPHAS).unwrap();
        assert_eq!((ghz.label, ghz.detected_at), (Label::Genuine, Some(2.0)));

        let w = classify_pure3(&named_state("w3").unwrap(), &DEFAULT_CLASSIFY_ALPHAS).unwrap();
        assert_eq!(w.label, Label::Genuine);
        assert_eq!(w.detected_at, Some(2.5));
        assert!(w
            .residuals
            .iter()
            .filter(|r| r.alpha == 2.0)
            .all(|r| r.value.abs() < 1e-9));
        let at3 = w.residuals.iter().find(|r| r.alpha == 3.0).unwrap();
        assert!((at3.value - 0.245460).abs() < 1e-6);
        assert!((w.purities[0] - 5.0 / 9.0).abs() < 1e-12);

        let w2 = classify_pure3(&named_state("w3").unwrap(), &[2.0]);
        assert!(w2.is_err());
    }

    #[test]
    fn grid_and_arity_errors() {
        let psi = PureState::haar_random(3, RngSeed(5)).unwrap();
        assert!(classify_pure3(&psi, &[2.5, 3.0]).is_err());
        assert!(classify_pure3(&psi, &[1.0, 2.0, 3.0]).is_err());
        let four = PureState::haar_random(4, RngSeed(5)).unwrap();
        assert!(matches!(
            classify_pure3(&four, &DEFAULT_CLASSIFY_ALPHAS),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn residual_table_shape() {
        let psi = PureState::haar_random(3, RngSeed(8)).unwrap();
        let c = classify_pure3(&psi, &[3.0, 2.0, 3.0]).unwrap();
        assert_eq!(c.residuals.len(), 6);
        assert_eq!(c.residuals[0].alpha, 2.0);
        assert_eq!(c.label, Label::Genuine);
    }
}
