//! Entanglement measures for qubit registers and numerical checks of
//! α-power monogamy relations for concurrence, entanglement of formation
//! and entanglement of assistance.
//!
//! Basis ordering convention used everywhere: qubit 0 is the most
//! significant bit of a computational-basis index, so `|q0 q1 … q(n-1)⟩`
//! sits at index `q0·2^(n-1) + … + q(n-1)`.

pub mod convexroof;
pub mod error;
pub mod figures;
pub mod fuzz;
pub mod linalg;
pub mod measures;
pub mod monogamy;
pub mod schmidt;
pub mod states;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenResult, RngSeed, C64};
pub use states::{Bipartition, DensityMatrix, Ensemble, PureState};
