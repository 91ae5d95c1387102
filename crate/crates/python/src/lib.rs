//! Python bindings. Qubit indices follow the library convention: qubit 0 is
//! the most significant bit of a basis index.

use num_complex::Complex64;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use qubit_monogamy::convexroof::RoofConfig;
use qubit_monogamy::measures;
use qubit_monogamy::monogamy::{self, CheckResult, TheoremId};
use qubit_monogamy::states::{load_state, named_state, state_to_json};
use qubit_monogamy::{Bipartition, Error, RngSeed};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPyErr<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPyErr<T> for qubit_monogamy::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

#[pyclass(name = "PureState", frozen)]
struct PyPureState {
    inner: qubit_monogamy::PureState,
}

#[pymethods]
impl PyPureState {
    /// Amplitudes may be complex; the vector is renormalized.
    #[new]
    fn new(amplitudes: Vec<Complex64>) -> PyResult<Self> {
        let inner = qubit_monogamy::PureState::normalized(amplitudes).py()?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: named_state(name).py()?,
        })
    }

    #[staticmethod]
    fn haar(n_qubits: usize, seed: u64) -> PyResult<Self> {
        let inner = qubit_monogamy::PureState::haar_random(n_qubits, RngSeed(seed)).py()?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn basis(n_qubits: usize, index: usize) -> PyResult<Self> {
        Ok(Self {
            inner: qubit_monogamy::PureState::basis(n_qubits, index).py()?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: load_state(path).py()?,
        })
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.inner.n_qubits()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    fn tensor(&self, other: &PyPureState) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.tensor(&other.inner).py()?,
        })
    }

    fn permuted(&self, order: Vec<usize>) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.permuted(&order).py()?,
        })
    }

    fn reduced_purity(&self, keep: Vec<usize>) -> PyResult<f64> {
        self.inner.reduced_purity(&keep).py()
    }

    fn to_json(&self) -> String {
        state_to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("PureState(n_qubits={})", self.inner.n_qubits())
    }
}

#[pyclass(name = "CheckResult", frozen, get_all)]
struct PyCheckResult {
    theorem: String,
    alpha: f64,
    focus: usize,
    lhs: f64,
    rhs: f64,
    margin: f64,
    passed: bool,
    outcome: String,
    diagnostic: bool,
}

impl From<CheckResult> for PyCheckResult {
    fn from(r: CheckResult) -> Self {
        Self {
            theorem: r.theorem.tag().to_string(),
            alpha: r.alpha,
            focus: r.focus,
            lhs: r.lhs,
            rhs: r.rhs,
            margin: r.margin,
            passed: r.pass,
            outcome: r.outcome.tag().to_string(),
            diagnostic: r.diagnostic,
        }
    }
}

#[pymethods]
impl PyCheckResult {
    fn __repr__(&self) -> String {
        format!(
            "CheckResult({} α={} margin={:+.6e} {})",
            self.theorem, self.alpha, self.margin, self.outcome
        )
    }
}

#[pyclass(name = "Classification", frozen, get_all)]
struct PyClassification {
    label: String,
    detected_at: Option<f64>,
    purities: [f64; 3],
    /// `(focus, alpha, value)` triples.
    residuals: Vec<(usize, f64, f64)>,
}

fn pair(psi: &PyPureState, a: usize, b: usize) -> PyResult<qubit_monogamy::DensityMatrix> {
    psi.inner.reduce(&[a, b]).py()
}

/// Concurrence of the focus qubit against all others.
#[pyfunction]
fn concurrence(psi: &PyPureState, focus: usize) -> PyResult<f64> {
    let cut = Bipartition::single(focus, psi.inner.n_qubits()).py()?;
    measures::concurrence_pure(&psi.inner, &cut).py()
}

#[pyfunction]
fn pair_concurrence(psi: &PyPureState, a: usize, b: usize) -> PyResult<f64> {
    measures::concurrence_2q(&pair(psi, a, b)?).py()
}

#[pyfunction]
fn eof(psi: &PyPureState, focus: usize) -> PyResult<f64> {
    let cut = Bipartition::single(focus, psi.inner.n_qubits()).py()?;
    measures::eof_pure(&psi.inner, &cut).py()
}

#[pyfunction]
fn pair_eof(psi: &PyPureState, a: usize, b: usize) -> PyResult<f64> {
    measures::eof_2q(&pair(psi, a, b)?).py()
}

/// Returns `(value, exact)`.
#[pyfunction]
fn pair_coa(psi: &PyPureState, a: usize, b: usize) -> PyResult<(f64, bool)> {
    let c = measures::coa_2q(&pair(psi, a, b)?).py()?;
    Ok((c.value, c.exact))
}

#[pyfunction]
#[pyo3(signature = (psi, focus = 0))]
fn three_tangle(psi: &PyPureState, focus: usize) -> PyResult<f64> {
    measures::three_tangle(&psi.inner, focus).py()
}

#[pyfunction]
fn residual_concurrence(psi: &PyPureState, focus: usize, alpha: f64) -> PyResult<f64> {
    Ok(measures::residual_concurrence(&psi.inner, focus, alpha)
        .py()?
        .value)
}

#[pyfunction]
fn residual_eof(psi: &PyPureState, focus: usize, alpha: f64) -> PyResult<f64> {
    Ok(measures::residual_eof(&psi.inner, focus, alpha).py()?.value)
}

#[pyfunction]
fn f_of(x: f64) -> PyResult<f64> {
    measures::f_of(x).py()
}

#[pyfunction]
fn eoa_bound(psi: &PyPureState, focus: usize, partner: usize, alpha: f64) -> PyResult<f64> {
    monogamy::eoa_bound(&psi.inner, focus, partner, alpha).py()
}

/// Runs the named checks. `theorems` takes tags such as `"t1"` or `"dual_ckw"`;
/// `alphas` overrides every per-theorem default grid.
#[pyfunction]
#[pyo3(signature = (psi, focus = 0, theorems = None, alphas = None, restarts = 32, seed = 0x5EED))]
fn check(
    psi: &PyPureState,
    focus: usize,
    theorems: Option<Vec<String>>,
    alphas: Option<Vec<f64>>,
    restarts: usize,
    seed: u64,
) -> PyResult<Vec<PyCheckResult>> {
    let ids: Vec<TheoremId> = match theorems {
        Some(tags) => tags
            .iter()
            .map(|t| t.parse::<TheoremId>().map_err(py_err))
            .collect::<PyResult<_>>()?,
        None if psi.inner.n_qubits() == 3 => TheoremId::ALL.to_vec(),
        None => TheoremId::ALL
            .iter()
            .copied()
            .filter(|t| !matches!(t, TheoremId::T6i | TheoremId::T6iSquared | TheoremId::T6ii))
            .collect(),
    };
    let cfg = RoofConfig {
        restarts,
        seed: RngSeed(seed),
        ..RoofConfig::default()
    };
    let results = monogamy::run_checks(&psi.inner, focus, &ids, alphas.as_deref(), &cfg).py()?;
    Ok(results.into_iter().map(PyCheckResult::from).collect())
}

#[pyfunction]
#[pyo3(signature = (psi, alphas = None))]
fn classify(psi: &PyPureState, alphas: Option<Vec<f64>>) -> PyResult<PyClassification> {
    let grid = alphas.unwrap_or_else(|| monogamy::DEFAULT_CLASSIFY_ALPHAS.to_vec());
    let c = monogamy::classify_pure3(&psi.inner, &grid).py()?;
    Ok(PyClassification {
        label: c.label.tag().to_string(),
        detected_at: c.detected_at,
        purities: c.purities,
        residuals: c
            .residuals
            .iter()
            .map(|r| (r.focus, r.alpha, r.value))
            .collect(),
    })
}

#[pymodule]
fn qmonogamy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureState>()?;
    m.add_class::<PyCheckResult>()?;
    m.add_class::<PyClassification>()?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(pair_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(eof, m)?)?;
    m.add_function(wrap_pyfunction!(pair_eof, m)?)?;
    m.add_function(wrap_pyfunction!(pair_coa, m)?)?;
    m.add_function(wrap_pyfunction!(three_tangle, m)?)?;
    m.add_function(wrap_pyfunction!(residual_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(residual_eof, m)?)?;
    m.add_function(wrap_pyfunction!(f_of, m)?)?;
    m.add_function(wrap_pyfunction!(eoa_bound, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    Ok(())
}
