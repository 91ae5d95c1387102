use super::{ComplexMatrix, C64, ZERO};
use crate::tolerance::PSD_CLAMP;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Off-diagonal magnitudes below this fraction of the Frobenius norm count
/// as converged.
const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending. Column `i` of
/// `vectors` belongs to `values[i]`.
#[derive(Clone, Debug)]
pub struct EigenResult {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenResult {
    /// `V·f(Λ)·V†`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let s = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        &scaled * &self.vectors.dagger()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }
}

/// The 2x2 unitary that zeroes the `(p, q)` entry of a Hermitian (or Gram)
/// matrix with diagonal `app`, `aqq` and off-diagonal `apq`.
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> [[C64; 2]; 2] {
    let mag = apq.norm();
    let phase = (apq / mag).conj();
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    [
        [C64::new(c, 0.0), C64::new(s, 0.0)],
        [-phase * s, phase * c],
    ]
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix. The input is
/// symmetrized as `(M + M†)/2` first.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenResult> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * a.frobenius_norm();

    let off_max = |a: &ComplexMatrix| {
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                worst = worst.max(a[(p, q)].norm());
            }
        }
        worst
    };

    let mut sweeps = 0;
    while off_max(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Numerical(format!(
                "Jacobi eigensolver did not converge after {MAX_SWEEPS} sweeps \
                 (largest off-diagonal {:e})",
                off_max(&a)
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() <= threshold * 1e-3 {
                    continue;
                }
                let u = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                a.rotate_columns(p, q, u);
                a.rotate_rows_adjoint(p, q, u);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                v.rotate_columns(p, q, u);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new)] = v[(i, old)];
        }
    }
    Ok(EigenResult { values, vectors })
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    if let Some(&lowest) = eig.values.first() {
        if lowest < -PSD_CLAMP {
            return Err(Error::NotPsd(lowest));
        }
    }
    Ok(eig.reconstruct_with(|x| x.max(0.0).sqrt()))
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
///
/// Singular values come out as column norms after orthogonalization, so
/// each carries an absolute error of order `ε·‖A‖` even when it is zero;
/// routes through `eig(A†A)` lose half the digits on small values.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let mut a = if m.rows() >= m.cols() {
        m.clone()
    } else {
        m.dagger()
    };
    let n = a.cols();
    let col_norm_sqr =
        |a: &ComplexMatrix, j: usize| -> f64 { (0..a.rows()).map(|i| a[(i, j)].norm_sqr()).sum() };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = col_norm_sqr(&a, p);
                let beta = col_norm_sqr(&a, q);
                let gamma: C64 = (0..a.rows()).map(|i| a[(i, p)].conj() * a[(i, q)]).sum();
                if gamma.norm() <= 1e-15 * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                a.rotate_columns(p, q, jacobi_rotation(alpha, beta, gamma));
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "one-sided Jacobi SVD did not converge after {MAX_SWEEPS} sweeps"
        )));
    }
    let mut sv: Vec<f64> = (0..n).map(|j| col_norm_sqr(&a, j).sqrt()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}
