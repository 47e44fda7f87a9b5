use std::path::PathBuf;

use thiserror::Error;

use crate::spin::HalfInt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spin: {0}")]
    InvalidSpin(String),

    #[error("m_z = {mz} is not a valid link eigenvalue for S = {spin}")]
    InvalidMz { mz: HalfInt, spin: HalfInt },

    #[error("chain length must be even and at least 2, got {0}")]
    OddLength(usize),

    #[error("chain length {0} exceeds the supported maximum of 32 sites")]
    LengthTooLarge(usize),

    #[error("site index {index} out of range 1..={length}")]
    SiteOutOfRange { index: usize, length: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("basis kind {basis:?} does not match requested builder {requested:?}")]
    ModelKindMismatch {
        basis: crate::model::ModelKind,
        requested: crate::model::ModelKind,
    },

    #[error(
        "Krylov step did not converge: error estimate {estimate:e} > tol {tol:e} \
         with {krylov_dim} vectors at dt = {dt}; use a smaller --dt or larger --krylov-dim"
    )]
    KrylovNotConverged {
        estimate: f64,
        tol: f64,
        krylov_dim: usize,
        dt: f64,
    },

    #[error("invalid value for {flag}: {message}")]
    InvalidConfig { flag: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dense eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(flag: &str, message: impl Into<String>) -> Self {
        Error::InvalidConfig {
            flag: flag.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
