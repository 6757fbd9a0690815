use serde::Serialize;

use super::{sym_eig, thin_svd, Matrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MatrixNorms {
    /// Largest singular value.
    pub operator: f64,
    pub frobenius: f64,
    /// `max |λ_i|`, present only for symmetric input.
    pub spectral_radius: Option<f64>,
}

pub fn matrix_norms(a: &Matrix) -> Result<MatrixNorms> {
    let rho = match spectral_radius(a) {
        Ok(r) => Some(r),
        Err(Error::NotSquare { .. } | Error::NotSymmetric { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(MatrixNorms {
        // for symmetric matrices the two coincide
        operator: match rho {
            Some(r) => r,
            None => operator_norm(a)?,
        },
        frobenius: a.frobenius_norm(),
        spectral_radius: rho,
    })
}

pub fn operator_norm(a: &Matrix) -> Result<f64> {
    Ok(thin_svd(a)?.singular_values[0])
}

/// Largest eigenvalue magnitude of a symmetric matrix.
pub fn spectral_radius(a: &Matrix) -> Result<f64> {
    let e = sym_eig(a)?;
    Ok(e.eigenvalues[0].abs().max(e.eigenvalues[e.eigenvalues.len() - 1].abs()))
}
