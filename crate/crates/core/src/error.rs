use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("out of range: {0}")]
    Bounds(String),

    #[error("invalid {what}: {detail}")]
    Validation { what: &'static str, detail: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("alpha = {alpha} is outside the regime {regime}")]
    Regime { alpha: f64, regime: &'static str },

    #[error("expected {expected} qubits, got {got}")]
    Arity { expected: String, got: usize },

    #[error("unknown state `{name}` (valid names: {valid})")]
    UnknownState { name: String, valid: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: field `{field}`: {detail}", path.display())]
    Schema {
        path: PathBuf,
        field: String,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
