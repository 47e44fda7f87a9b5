//! Dense symmetric eigendecomposition, backed by faer.

pub use faer::Mat;

use crate::error::{Error, Result};

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a real
/// symmetric matrix; only the lower triangle is read.
pub fn symmetric_eigen(m: &Mat<f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let eig = m
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let s = eig.S();
    let values = (0..m.nrows()).map(|k| s[k]).collect();
    Ok((values, eig.U().to_owned()))
}
