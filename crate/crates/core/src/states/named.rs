use super::PureState;
use crate::linalg::{C64, ZERO};
use crate::{Error, Result};

pub const NAMED_STATES: [&str; 3] = ["ghz3", "w3", "ghz_minus_w"];

/// `(|0…0⟩ + |1…1⟩)/√2`
pub fn ghz(n_qubits: usize) -> Result<PureState> {
    let dim = 1usize << n_qubits;
    let mut amps = vec![ZERO; dim];
    amps[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = amps[0];
    PureState::new(amps)
}

/// Equal superposition of all single-excitation basis states.
pub fn w_state(n_qubits: usize) -> Result<PureState> {
    let mut amps = vec![ZERO; 1usize << n_qubits];
    for q in 0..n_qubits {
        amps[1 << q] = C64::new(1.0, 0.0);
    }
    PureState::normalized(amps)
}

/// `ghz3`, `w3`, or `ghz_minus_w = (|GHZ⟩ - |W⟩)/√2`.
pub fn named_state(name: &str) -> Result<PureState> {
    match name {
        "ghz3" => ghz(3),
        "w3" => w_state(3),
        "ghz_minus_w" => {
            let half = C64::new(0.5, 0.0);
            let w = C64::new(-1.0 / 6f64.sqrt(), 0.0);
            let mut amps = vec![ZERO; 8];
            amps[0] = half;
            amps[7] = half;
            for i in [1, 2, 4] {
                amps[i] = w;
            }
            PureState::new(amps)
        }
        other => Err(Error::UnknownState {
            name: other.to_string(),
            valid: NAMED_STATES.join(", "),
        }),
    }
}
