//! Three-qubit states in generalized Schmidt form
//! `λ0|000⟩ + λ1 e^{iφ}|100⟩ + λ2|101⟩ + λ3|110⟩ + λ4|111⟩`
//! and the closed-form concurrences they admit.
//!
//! Only the constructor direction is provided: parameters to state.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::linalg::{C64, ZERO};
use crate::states::PureState;
use crate::{Error, Result};

const PARAM_NORM: f64 = 1e-12;

/// Remaining sine products below this collapse later angles to zero.
const UNDERFLOW: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtParams {
    pub lambda: [f64; 5],
    pub phi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtAngles {
    pub theta: [f64; 4],
    pub phi: f64,
}

/// Closed-form `(C_{A|BC}, C_{AB}, C_{AC})` with qubit 0 as A.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormConcurrences {
    pub a_bc: f64,
    pub ab: f64,
    pub ac: f64,
}

impl SchmidtParams {
    pub fn new(lambda: [f64; 5], phi: f64) -> Result<Self> {
        if let Some(bad) = lambda.iter().find(|&&l| !(l >= 0.0) || !l.is_finite()) {
            return Err(Error::Validation {
                what: "Schmidt parameters",
                detail: format!("coefficient {bad} is negative or not finite"),
            });
        }
        let norm_sq: f64 = lambda.iter().map(|l| l * l).sum();
        if (norm_sq - 1.0).abs() > PARAM_NORM {
            return Err(Error::Validation {
                what: "Schmidt parameters",
                detail: format!("Σλ² = {norm_sq}"),
            });
        }
        if !phi.is_finite() {
            return Err(Error::Validation {
                what: "Schmidt parameters",
                detail: format!("phase {phi}"),
            });
        }
        Ok(Self { lambda, phi })
    }

    /// Recovers angles by inverting the sine-product chain.
    pub fn to_angles(&self) -> SchmidtAngles {
        let [l0, l1, l2, l3, _] = self.lambda;
        let mut theta = [0.0; 4];
        theta[0] = l0.clamp(-1.0, 1.0).acos();
        let mut rest = theta[0].sin();
        for (k, lk) in [l1, l2, l3].into_iter().enumerate() {
            if rest < UNDERFLOW {
                break;
            }
            theta[k + 1] = (lk / rest).clamp(-1.0, 1.0).acos();
            rest *= theta[k + 1].sin();
        }
        SchmidtAngles {
            theta,
            phi: self.phi,
        }
    }
}

/// `λ0 = cos θ0, λ1 = sin θ0 cos θ1, …, λ4 = sin θ0 sin θ1 sin θ2 sin θ3`.
pub fn angles_to_params(angles: &SchmidtAngles) -> Result<SchmidtParams> {
    if let Some(bad) = angles
        .theta
        .iter()
        .find(|&&t| !(0.0..=FRAC_PI_2).contains(&t))
    {
        return Err(Error::Domain(format!("angle {bad} outside [0, π/2]")));
    }
    let [t0, t1, t2, t3] = angles.theta;
    let s0 = t0.sin();
    let s01 = s0 * t1.sin();
    let s012 = s01 * t2.sin();
    SchmidtParams::new(
        [
            t0.cos(),
            s0 * t1.cos(),
            s01 * t2.cos(),
            s012 * t3.cos(),
            s012 * t3.sin(),
        ],
        angles.phi,
    )
}

/// Places the five coefficients at basis indices 0, 4, 5, 6, 7.
pub fn build_state(p: &SchmidtParams) -> Result<PureState> {
    let p = SchmidtParams::new(p.lambda, p.phi)?;
    let [l0, l1, l2, l3, l4] = p.lambda;
    let mut amps = vec![ZERO; 8];
    amps[0b000] = C64::new(l0, 0.0);
    amps[0b100] = C64::from_polar(l1, p.phi);
    amps[0b101] = C64::new(l2, 0.0);
    amps[0b110] = C64::new(l3, 0.0);
    amps[0b111] = C64::new(l4, 0.0);
    PureState::new(amps)
}

/// `C_{A|BC} = 2λ0√(λ2²+λ3²+λ4²)`, `C_{AB} = 2λ0λ3`, `C_{AC} = 2λ0λ2`.
/// Independent of φ.
///
/// The `|110⟩` term pairs A with B and `|101⟩` pairs A with C.
pub fn closed_form_concurrences(p: &SchmidtParams) -> ClosedFormConcurrences {
    let [l0, _, l2, l3, l4] = p.lambda;
    ClosedFormConcurrences {
        a_bc: 2.0 * l0 * (l2 * l2 + l3 * l3 + l4 * l4).sqrt(),
        ab: 2.0 * l0 * l3,
        ac: 2.0 * l0 * l2,
    }
}

/// `C^α_{A|BC} - C^α_{AB} - C^α_{AC}` in the angle form
/// `(2λ0)^α sin^α θ0 sin^α θ1 [1 - cos^α θ2 - sin^α θ2 cos^α θ3]`.
pub fn residual_closed_form(p: &SchmidtParams, alpha: f64) -> f64 {
    let angles = p.to_angles();
    let [t0, t1, t2, t3] = angles.theta;
    let base = 2.0 * p.lambda[0] * t0.sin() * t1.sin();
    if base < UNDERFLOW {
        return 0.0;
    }
    base.powf(alpha) * residual_bracket(t2, t3, alpha)
}

/// `1 - cos^α θ2 - sin^α θ2 cos^α θ3`
pub fn residual_bracket(theta2: f64, theta3: f64, alpha: f64) -> f64 {
    1.0 - theta2.cos().powf(alpha) - theta2.sin().powf(alpha) * theta3.cos().powf(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{concurrence_2q, concurrence_pure, residual_concurrence, three_tangle};
    use crate::states::{named_state, Bipartition};
    use std::f64::consts::FRAC_PI_4;

    fn params(lambda: [f64; 5]) -> SchmidtParams {
        SchmidtParams::new(lambda, 0.0).unwrap()
    }

    #[test]
    fn angle_chain_examples() {
        let p = angles_to_params(&SchmidtAngles {
            theta: [0.0; 4],
            phi: 0.0,
        })
        .unwrap();
        assert_eq!(p.lambda, [1.0, 0.0, 0.0, 0.0, 0.0]);

        let p = angles_to_params(&SchmidtAngles {
            theta: [FRAC_PI_2, 0.0, 0.0, 0.0],
            phi: 0.0,
        })
        .unwrap();
        assert!(p.lambda[0].abs() < 1e-16);
        assert_eq!(&p.lambda[1..], &[1.0, 0.0, 0.0, 0.0]);

        let p = angles_to_params(&SchmidtAngles {
            theta: [FRAC_PI_4; 4],
            phi: 0.0,
        })
        .unwrap();
        let h = 2f64.sqrt() / 2.0;
        let expected = [h, 0.5, h / 2.0, 0.25, 0.25];
        for (a, b) in p.lambda.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        let norm: f64 = p.lambda.iter().map(|l| l * l).sum();
        assert!((norm - 1.0).abs() < 1e-15);

        assert!(angles_to_params(&SchmidtAngles {
            theta: [2.0, 0.0, 0.0, 0.0],
            phi: 0.0
        })
        .is_err());
    }

    #[test]
    fn build_examples() {
        let s = build_state(&params([1.0, 0.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(s, PureState::basis(3, 0).unwrap());

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let g = build_state(&params([h, 0.0, 0.0, 0.0, h])).unwrap();
        assert_eq!(g, named_state("ghz3").unwrap());

        let a = 1.0 / 3f64.sqrt();
        let psi = build_state(&params([a, 0.0, a, a, 0.0])).unwrap();
        let ab = concurrence_2q(&psi.reduce(&[0, 1]).unwrap()).unwrap();
        let ac = concurrence_2q(&psi.reduce(&[0, 2]).unwrap()).unwrap();
        assert!((ab - 2.0 / 3.0).abs() < 1e-14 && (ac - 2.0 / 3.0).abs() < 1e-14);

        assert!(SchmidtParams::new([0.5, 0.5, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(SchmidtParams::new([-1.0, 0.0, 0.0, 0.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let c = closed_form_concurrences(&params([0.0, 1.0, 0.0, 0.0, 0.0]));
        assert_eq!((c.a_bc, c.ab, c.ac), (0.0, 0.0, 0.0));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = closed_form_concurrences(&params([h, 0.0, 0.0, 0.0, h]));
        assert!((c.a_bc - 1.0).abs() < 1e-15 && c.ab == 0.0 && c.ac == 0.0);

        let a = 1.0 / 3f64.sqrt();
        let p = params([a, 0.0, a, a, 0.0]);
        let c = closed_form_concurrences(&p);
        assert!((c.a_bc - 2.0 * a * (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((c.ab - 2.0 / 3.0).abs() < 1e-15 && (c.ac - 2.0 / 3.0).abs() < 1e-15);

        let psi = build_state(&p).unwrap();
        let numeric = concurrence_pure(&psi, &Bipartition::single(0, 3).unwrap()).unwrap();
        assert!((numeric - c.a_bc).abs() < 1e-14);
    }

    #[test]
    fn pair_assignment_follows_basis_labels() {
        let l4 = (1.0f64 - 0.25 - 0.09 - 0.36 - 0.04).sqrt();
        let p = params([0.5, 0.3, 0.6, 0.2, l4]);
        let c = closed_form_concurrences(&p);
        let psi = build_state(&p).unwrap();
        let ab = concurrence_2q(&psi.reduce(&[0, 1]).unwrap()).unwrap();
        let ac = concurrence_2q(&psi.reduce(&[0, 2]).unwrap()).unwrap();
        assert!((c.ab - 0.2).abs() < 1e-15 && (ab - 0.2).abs() < 1e-12);
        assert!((c.ac - 0.6).abs() < 1e-15 && (ac - 0.6).abs() < 1e-12);
    }

    #[test]
    fn residual_examples() {
        let lambdas = [
            [
                0.6,
                0.3,
                0.5,
                0.4,
                (1.0f64 - 0.36 - 0.09 - 0.25 - 0.16).sqrt(),
            ],
            [0.8, 0.0, 0.6, 0.0, 0.0],
            [0.5, 0.5, 0.5, 0.5, 0.0],
        ];
        for l in lambdas {
            let p = params(l);
            let c = closed_form_concurrences(&p);
            let direct = c.a_bc.powi(2) - c.ab.powi(2) - c.ac.powi(2);
            assert!((residual_closed_form(&p, 2.0) - direct).abs() < 1e-14);
            let psi = build_state(&p).unwrap();
            assert!((three_tangle(&psi, 0).unwrap() - direct).abs() < 1e-12);
        }

        // W in Schmidt form: λ0 = 1/√3, λ2 = λ3 = 1/√3.
        let a = 1.0 / 3f64.sqrt();
        assert!(residual_closed_form(&params([a, 0.0, a, a, 0.0]), 2.0).abs() < 1e-15);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((residual_closed_form(&params([h, 0.0, 0.0, 0.0, h]), 3.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn residual_matches_numeric_across_alpha() {
        let p = angles_to_params(&SchmidtAngles {
            theta: [0.7, 0.4, 1.1, 0.3],
            phi: 1.3,
        })
        .unwrap();
        let psi = build_state(&p).unwrap();
        for alpha in [-2.0, -0.5, 0.5, 1.0, 1.5, 2.0, 3.0, 6.0] {
            let numeric = residual_concurrence(&psi, 0, alpha).unwrap().value;
            let closed = residual_closed_form(&p, alpha);
            assert!(
                (numeric - closed).abs() < 1e-9,
                "α={alpha}: {numeric} vs {closed}"
            );
        }
    }

    #[test]
    fn degenerate_inversion_is_zero_residual() {
        let p = params([0.6, 0.8, 0.0, 0.0, 0.0]);
        assert_eq!(p.to_angles().theta[2], 0.0);
        assert_eq!(residual_closed_form(&p, 2.0), 0.0);
        assert_eq!(residual_closed_form(&p, 3.5), 0.0);
    }
}
