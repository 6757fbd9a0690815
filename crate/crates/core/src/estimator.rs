//! Local PCA without mean subtraction, and subspace error metrics.
//!
//! The estimate of the tangent space is the span of the top `m` left singular
//! vectors of the data matrix `X` (equivalently the top `m` eigenvectors of
//! `M = (1/K) X Xᵀ`). It is compared to the true tangent space
//! `E = [e₁ … e_m]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{partial_svd, thin_svd, Matrix};
use crate::sampling::DataMatrix;

/// Frames whose `‖UᵀU − I‖_F` exceeds this are rejected by the metrics.
pub const ORTHONORMALITY_TOLERANCE: f64 = 1e-8;

/// How the leading singular subspace is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PcaRoute {
    /// Full thin SVD; the whole spectrum of `M` is reported.
    #[default]
    Exact,
    /// Block subspace iteration; only the leading part of the spectrum is
    /// reported. Much cheaper for `n, K ≫ m`.
    Partial,
}

#[derive(Clone, Debug, Serialize)]
pub struct TangentEstimate {
    /// `n × m`, orthonormal columns.
    pub basis: Matrix,
    /// Eigenvalues of `M`, descending. With [`PcaRoute::Exact`] there are `n` of
    /// them, trailing zeros included when `K < n`.
    pub eigenvalues: Vec<f64>,
    /// False when `eigenvalues` holds only the leading part of the spectrum.
    pub spectrum_complete: bool,
    /// `‖U₂‖_F`, the norm of rows `m+1..n` of the basis.
    pub u2_frobenius: f64,
    pub angle_radians: f64,
    /// `‖EEᵀ − UUᵀ‖_F`
    pub projection_distance: f64,
    /// `λ_m − λ_{m+1} < 1e−12 λ₁`: the estimated subspace is not well defined.
    pub degenerate_gap: bool,
    /// False if the iterative route hit its iteration cap.
    pub converged: bool,
}

impl TangentEstimate {
    pub fn angle_degrees(&self) -> f64 {
        self.angle_radians.to_degrees()
    }
}

/// Tangent estimate from the exact route.
pub fn local_pca(x: &DataMatrix, m: usize) -> Result<TangentEstimate> {
    local_pca_with(x, m, PcaRoute::Exact)
}

pub fn local_pca_with(x: &DataMatrix, m: usize, route: PcaRoute) -> Result<TangentEstimate> {
    let (n, k) = x.matrix().shape();
    if m == 0 || m >= n {
        return Err(Error::invalid("m", format!("need 1 <= m < n = {n}, got {m}")));
    }
    if k < m {
        return Err(Error::invalid(
            "K",
            format!("need at least m = {m} samples, got {k}"),
        ));
    }
    let scale = 1.0 / k as f64;
    let (basis, mut eigenvalues, complete, converged) = match route {
        PcaRoute::Exact => {
            let s = thin_svd(x.matrix())?;
            let ev: Vec<f64> = s.singular_values.iter().map(|v| v * v * scale).collect();
            (s.left_vectors.col_block(0, m)?, ev, true, true)
        }
        PcaRoute::Partial => {
            let s = partial_svd(x.matrix(), m)?;
            let ev: Vec<f64> = s.singular_values.iter().map(|v| v * v * scale).collect();
            let complete = s.exact;
            (s.left_vectors, ev, complete, s.converged)
        }
    };
    if complete {
        eigenvalues.resize(n, 0.0);
    }
    let degenerate_gap = eigenvalues.len() > m
        && eigenvalues[m - 1] - eigenvalues[m] < 1e-12 * eigenvalues[0];
    let metrics = canonical_metrics(&basis)?;
    Ok(TangentEstimate {
        basis,
        eigenvalues,
        spectrum_complete: complete,
        u2_frobenius: metrics.u2_frobenius,
        angle_radians: metrics.angle,
        projection_distance: metrics.projection_distance,
        degenerate_gap,
        converged,
    })
}

struct Metrics {
    u2_frobenius: f64,
    angle: f64,
    projection_distance: f64,
}

/// Metrics of `u` against the canonical frame, where `EᵀU = U₁` and
/// `(I − EEᵀ)U = [0; U₂]`.
fn canonical_metrics(u: &Matrix) -> Result<Metrics> {
    let m = u.cols();
    let u1 = u.row_block(0, m)?;
    let u2 = u.row_block(m, u.rows())?;
    let u2f = u2.frobenius_norm();
    Ok(Metrics {
        u2_frobenius: u2f,
        angle: angle_from_blocks(&u1, &u2)?,
        projection_distance: std::f64::consts::SQRT_2 * u2f,
    })
}

/// `θ = atan2(sin θ, cos θ)` with `cos θ = Π cos θ_i` from the singular values
/// of the overlap block and `sin² θ = 1 − Π(1 − sin² θ_i)` from the singular
/// values of the residual block, so both tiny and near-right angles keep full
/// relative precision.
fn angle_from_blocks(overlap: &Matrix, residual: &Matrix) -> Result<f64> {
    let cos: f64 = thin_svd(overlap)?
        .singular_values
        .iter()
        .product::<f64>()
        .clamp(0.0, 1.0);
    let log_cos2: f64 = thin_svd(residual)?
        .singular_values
        .iter()
        .map(|s| (-(s * s).min(1.0)).ln_1p())
        .sum();
    let sin = (-log_cos2.exp_m1()).clamp(0.0, 1.0).sqrt();
    Ok(sin.atan2(cos))
}

fn check_frames(u: &Matrix, e: &Matrix) -> Result<()> {
    if u.shape() != e.shape() {
        return Err(Error::DimensionMismatch(format!(
            "frames have shapes {:?} and {:?}",
            u.shape(),
            e.shape()
        )));
    }
    if u.cols() > u.rows() {
        return Err(Error::DimensionMismatch("frames need at most n columns".into()));
    }
    for f in [u, e] {
        let d = f.orthonormality_defect();
        if d > ORTHONORMALITY_TOLERANCE {
            return Err(Error::NotOrthonormal { deviation: d });
        }
    }
    Ok(())
}

/// The angle `arccos √det(WᵀW)`, `W = EᵀU`, between the column spans of two
/// orthonormal `n × m` frames. In `[0, π/2]`.
pub fn subspace_angle(u: &Matrix, e: &Matrix) -> Result<f64> {
    check_frames(u, e)?;
    let w = e.t_matmul(u)?;
    let residual = u.sub(&e.matmul(&w)?)?;
    angle_from_blocks(&w, &residual)
}

/// `‖EEᵀ − UUᵀ‖_F`, computed as `√2 ‖(I − EEᵀ)U‖_F`.
pub fn projection_distance(u: &Matrix, e: &Matrix) -> Result<f64> {
    check_frames(u, e)?;
    let residual = u.sub(&e.matmul(&e.t_matmul(u)?)?)?;
    Ok(std::f64::consts::SQRT_2 * residual.frobenius_norm())
}

/// `arccos √((1 − τ²)^m)`: the largest angle compatible with `‖U₂‖_F < τ`.
/// Vacuous (`π/2`) for `τ ≥ 1`.
pub fn leakage_angle_limit(tau: f64, m: usize) -> f64 {
    let t2 = tau * tau;
    if t2 >= 1.0 {
        return std::f64::consts::FRAC_PI_2;
    }
    let log_cos2 = m as f64 * (-t2).ln_1p();
    let sin = (-log_cos2.exp_m1()).sqrt();
    sin.atan2((0.5 * log_cos2).exp())
}
