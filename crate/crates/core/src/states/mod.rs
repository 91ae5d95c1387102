//! Pure states, density matrices, bipartitions and ensembles of qubit
//! registers.

mod io;
mod named;

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

pub use io::{load_state, parse_state, save_state, state_to_json};
pub use named::{ghz, named_state, w_state, NAMED_STATES};

use crate::linalg::{
    self, hermitian_eig, normalize_subset, subsystem_offsets, vec_norm, ComplexMatrix, RngSeed,
    C64, ZERO,
};
use crate::tolerance::{NORM, PSD_CLAMP, RANK};
use crate::{Error, Result};

pub const MAX_QUBITS: usize = 6;

/// Unit-norm state vector of an `n`-qubit register.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

fn qubit_count(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Dimension(format!(
            "{len} amplitudes is not a qubit register"
        )));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::Bounds(format!(
            "{n} qubits exceeds the supported maximum of {MAX_QUBITS}"
        )));
    }
    Ok(n)
}

impl PureState {
    /// Wraps amplitudes that are already normalized within `1e-10`.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let n_qubits = qubit_count(amplitudes.len())?;
        let norm = vec_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM {
            return Err(Error::Validation {
                what: "pure state",
                detail: format!("norm {norm} differs from 1"),
            });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let n_qubits = qubit_count(amplitudes.len())?;
        let norm = vec_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Validation {
                what: "pure state",
                detail: format!("cannot normalize a vector of norm {norm}"),
            });
        }
        Ok(Self {
            n_qubits,
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub fn haar_random(n_qubits: usize, seed: RngSeed) -> Result<Self> {
        let amplitudes = linalg::haar_random_pure(n_qubits, seed)?;
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Bounds(format!("basis index {index} >= {dim}")));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self::new(amplitudes)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `|self⟩ ⊗ |other⟩`; qubits of `other` follow those of `self`.
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        Self::new(linalg::kron_vec(&self.amplitudes, &other.amplitudes))
    }

    /// Relabels qubits so that new qubit `k` is old qubit `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&q| q >= n || std::mem::replace(&mut seen[q], true))
        {
            return Err(Error::Validation {
                what: "qubit permutation",
                detail: format!("{order:?} for {n} qubits"),
            });
        }
        let bit = |index: usize, q: usize| (index >> (n - 1 - q)) & 1;
        let mut amplitudes = vec![C64::default(); self.dim()];
        for (old, &amp) in self.amplitudes.iter().enumerate() {
            let new = order.iter().fold(0, |acc, &q| (acc << 1) | bit(old, q));
            amplitudes[new] = amp;
        }
        Ok(Self {
            n_qubits: n,
            amplitudes,
        })
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    /// Columns `(⟨t|_rest ⊗ I_keep)|ψ⟩` for every basis state `t` of the
    /// traced qubits, so that `F·F†` is the reduced density matrix.
    pub(crate) fn reduction_factor(&self, keep: &[usize]) -> ComplexMatrix {
        let dims = vec![2; self.n_qubits];
        let traced: Vec<usize> = (0..self.n_qubits).filter(|q| !keep.contains(q)).collect();
        let kept_off = subsystem_offsets(&dims, keep);
        let traced_off = subsystem_offsets(&dims, &traced);
        let mut f = ComplexMatrix::zeros(kept_off.len(), traced_off.len());
        for (k, &ko) in kept_off.iter().enumerate() {
            for (t, &to) in traced_off.iter().enumerate() {
                f[(k, t)] = self.amplitudes[ko + to];
            }
        }
        f
    }

    /// Reduced state on `keep` (sorted ascending; duplicates ignored).
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = normalize_subset(keep, self.n_qubits)?;
        let factor = self.reduction_factor(&keep);
        let matrix = &factor * &factor.dagger();
        Ok(DensityMatrix {
            qubit_labels: keep,
            matrix,
            factor: Some(factor),
        })
    }

    /// `Tr ρ²` of the reduction onto `keep`.
    pub fn reduced_purity(&self, keep: &[usize]) -> Result<f64> {
        let rho = self.reduce(keep)?;
        Ok(rho.purity())
    }
}

/// Density matrix over a subset of a register's qubits.
///
/// Reductions of pure states additionally carry a factor `F` with
/// `ρ = F·F†`, whose columns are the unnormalized conditional states of the
/// traced-out qubits. Measures built on decompositions use it to avoid an
/// eigendecomposition of `ρ`.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    qubit_labels: Vec<usize>,
    matrix: ComplexMatrix,
    factor: Option<ComplexMatrix>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity within `1e-10`.
    pub fn new(qubit_labels: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let dim = 1usize << qubit_labels.len();
        if !matrix.is_square() || matrix.rows() != dim {
            return Err(Error::Dimension(format!(
                "{} qubit labels need a {dim}x{dim} matrix, got {}x{}",
                qubit_labels.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_hermitian(NORM) {
            return Err(Error::Validation {
                what: "density matrix",
                detail: "not Hermitian".into(),
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > NORM || trace.im.abs() > NORM {
            return Err(Error::Validation {
                what: "density matrix",
                detail: format!("trace {trace} differs from 1"),
            });
        }
        let matrix = matrix.hermitian_part();
        let lowest = hermitian_eig(&matrix)?.values[0];
        if lowest < -PSD_CLAMP {
            return Err(Error::Validation {
                what: "density matrix",
                detail: format!("negative eigenvalue {lowest:e}"),
            });
        }
        Ok(Self {
            qubit_labels,
            matrix,
            factor: None,
        })
    }

    /// Density matrix over qubits `0..n` with `n` inferred from the size.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let n = qubit_count(matrix.rows())?;
        Self::new((0..n).collect(), matrix)
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let factor =
            ComplexMatrix::from_columns(&[psi.amplitudes().to_vec()]).expect("single column");
        Self {
            qubit_labels: (0..psi.n_qubits()).collect(),
            matrix: psi.projector(),
            factor: Some(factor),
        }
    }

    pub fn qubit_labels(&self) -> &[usize] {
        &self.qubit_labels
    }

    pub fn n_qubits(&self) -> usize {
        self.qubit_labels.len()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// A matrix `F` with `ρ = F·F†`: the stored purification factor when
    /// present, otherwise `V·√Λ` over the eigenvalues above the rank cut-off.
    pub fn factor(&self) -> Result<Cow<'_, ComplexMatrix>> {
        if let Some(f) = &self.factor {
            return Ok(Cow::Borrowed(f));
        }
        let eig = hermitian_eig(&self.matrix)?;
        let columns: Vec<Vec<C64>> = eig
            .values
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &l)| l > RANK)
            .map(|(j, &l)| {
                let s = l.sqrt();
                eig.vectors.column(j).into_iter().map(|z| z * s).collect()
            })
            .collect();
        Ok(Cow::Owned(ComplexMatrix::from_columns(&columns)?))
    }

    /// Number of eigenvalues above `1e-10`.
    pub fn rank(&self) -> Result<usize> {
        Ok(hermitian_eig(&self.matrix)?
            .values
            .iter()
            .filter(|&&l| l > RANK)
            .count())
    }

    /// Eigenvalues, ascending, clamped at zero.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.matrix)?
            .values
            .into_iter()
            .map(|l| l.max(0.0))
            .collect())
    }
}

/// Split of a register into two complementary non-empty sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(side_a: &[usize], n_qubits: usize) -> Result<Self> {
        let side_a = normalize_subset(side_a, n_qubits)?;
        let side_b: Vec<usize> = (0..n_qubits).filter(|q| !side_a.contains(q)).collect();
        if side_b.is_empty() {
            return Err(Error::Bounds(format!(
                "side A {side_a:?} covers the whole {n_qubits}-qubit register"
            )));
        }
        Ok(Self { side_a, side_b })
    }

    /// Single qubit `a` versus the rest.
    pub fn single(a: usize, n_qubits: usize) -> Result<Self> {
        Self::new(&[a], n_qubits)
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    pub fn n_qubits(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }

    pub fn swapped(&self) -> Self {
        Self {
            side_a: self.side_b.clone(),
            side_b: self.side_a.clone(),
        }
    }
}

/// Probability-weighted list of pure states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    pub members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        if let Some((p, _)) = members
            .iter()
            .find(|(p, _)| !(0.0..=1.0 + NORM).contains(p))
        {
            return Err(Error::Validation {
                what: "ensemble",
                detail: format!("probability {p} outside [0, 1]"),
            });
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > NORM {
            return Err(Error::Validation {
                what: "ensemble",
                detail: format!("probabilities sum to {total}"),
            });
        }
        Ok(Self { members })
    }

    /// `Σ p_i |ψ_i⟩⟨ψ_i|`
    pub fn mix(&self) -> ComplexMatrix {
        let dim = self.members.first().map_or(0, |(_, s)| s.dim());
        let mut out = ComplexMatrix::zeros(dim, dim);
        for (p, s) in &self.members {
            out = &out + &s.projector().scale_real(*p);
        }
        out
    }

    /// Frobenius distance between the mixture and `rho`.
    pub fn mixing_error(&self, rho: &DensityMatrix) -> f64 {
        (&self.mix() - rho.matrix()).frobenius_norm()
    }

    /// `Σ p_i m(ψ_i)`
    pub fn average<F>(&self, measure: F) -> f64
    where
        F: Fn(&PureState) -> f64,
    {
        self.members.iter().map(|(p, s)| p * measure(s)).sum()
    }
}
