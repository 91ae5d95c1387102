use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{vec_norm, C64};
use crate::{Error, Result};

pub const MAX_RANDOM_QUBITS: usize = 6;

/// Seed for the crate's random streams.
///
/// Streams are ChaCha20 (`rand_chacha::ChaCha20Rng`) keyed by four
/// SplitMix64 outputs of the seed. [`RngSeed::split`] derives independent
/// child seeds, so worker `i` of a campaign always sees the same stream
/// regardless of scheduling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed(pub u64);

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngSeed {
    pub fn rng(self) -> ChaCha20Rng {
        let mut state = self.0;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        ChaCha20Rng::from_seed(key)
    }

    /// Child seed for stream `index`.
    pub fn split(self, index: u64) -> RngSeed {
        let mut state = self.0 ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03);
        splitmix64(&mut state);
        RngSeed(splitmix64(&mut state))
    }
}

/// `len` i.i.d. standard complex Gaussian entries (real and imaginary parts
/// each standard normal).
pub fn gaussian_vector<R: rand::Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<C64> {
    (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect()
}

/// Haar-distributed pure state on `n_qubits` qubits: a normalized complex
/// Gaussian vector.
pub fn haar_random_pure(n_qubits: usize, seed: RngSeed) -> Result<Vec<C64>> {
    if !(1..=MAX_RANDOM_QUBITS).contains(&n_qubits) {
        return Err(Error::Bounds(format!(
            "n_qubits = {n_qubits} outside 1..={MAX_RANDOM_QUBITS}"
        )));
    }
    let mut rng = seed.rng();
    loop {
        let v = gaussian_vector(&mut rng, 1 << n_qubits);
        let norm = vec_norm(&v);
        if norm > 0.0 {
            return Ok(v.into_iter().map(|z| z / norm).collect());
        }
    }
}
