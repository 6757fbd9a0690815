//! Self-contained dense linear algebra on row-major `f64` matrices.
//!
//! * [`sym_eig`]: cyclic Jacobi eigensolver for symmetric matrices.
//! * [`thin_svd`]: one-sided (Hestenes) Jacobi SVD.
//! * [`partial_svd`]: leading singular triplets by block subspace iteration with
//!   Rayleigh–Ritz, for tall data matrices where a full SVD is wasteful.
//! * [`matrix_norms`]: operator, Frobenius and spectral-radius norms.
//!
//! Repeated eigenvalues/singular values come back with an arbitrary orthonormal
//! basis of their eigenspace; callers must not rely on signs or orientation.

mod eig;
mod matrix;
mod norms;
mod orth;
mod partial;
mod svd;

pub use eig::{sym_eig, EigenDecomposition};
pub use matrix::Matrix;
pub use norms::{matrix_norms, operator_norm, spectral_radius, MatrixNorms};
pub use orth::orthonormalize;
pub use partial::{partial_svd, PartialSvd};
pub use svd::{thin_svd, ThinSvd};

/// Dot product of two equal-length slices.
#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    // four accumulators let the compiler vectorise without reassociation flags
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        let i = 4 * c;
        acc[0] += a[i] * b[i];
        acc[1] += a[i + 1] * b[i + 1];
        acc[2] += a[i + 2] * b[i + 2];
        acc[3] += a[i + 3] * b[i + 3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for i in 4 * chunks..a.len() {
        s += a[i] * b[i];
    }
    s
}

/// `y += alpha * x`
#[inline]
pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[inline]
pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
