use serde::Serialize;

use super::orth::{complement_vector, project_out};
use super::{axpy, dot, norm2, sym_eig, thin_svd, Matrix};
use crate::error::{Error, Result};
use crate::rng;

const MAX_ITERATIONS: usize = 300;
/// Ritz residuals `‖XXᵀu − θu‖` below this fraction of `θ₁` count as converged.
const RESIDUAL_TOLERANCE: f64 = 1e-11;

/// Leading left singular vectors of a (typically wide) data matrix.
#[derive(Clone, Debug, Serialize)]
pub struct PartialSvd {
    /// `rows × k`, orthonormal columns.
    pub left_vectors: Matrix,
    /// Leading singular values, at least `k` of them (the whole iterated block).
    pub singular_values: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// True when the full spectrum was computed.
    pub exact: bool,
}

/// Top-`k` left singular subspace of `x` by block subspace iteration on `x xᵀ`
/// with Rayleigh–Ritz extraction.
///
/// The starting block is a seeded random sketch `x Ω`, so results are
/// deterministic. Small problems are delegated to [`thin_svd`].
pub fn partial_svd(x: &Matrix, k: usize) -> Result<PartialSvd> {
    let (n, kc) = x.shape();
    let r = n.min(kc);
    if k == 0 || k > r {
        return Err(Error::invalid(
            "k",
            format!("need 1 <= k <= min(rows, cols) = {r}, got {k}"),
        ));
    }
    let p = r.min((k + 8).max(2 * k + 2));
    if 2 * p >= r {
        return exact(x, k);
    }

    let mut sketch = rng::stream(rng::tag::SUBSPACE, &[n as u64, kc as u64, k as u64]);
    let omega: Vec<f64> = (0..kc * p).map(|_| rng::symmetric(&mut sketch, 1.0)).collect();
    // Y = X Ω, kept as p columns of length n
    let mut block: Vec<Vec<f64>> = vec![vec![0.0; n]; p];
    for i in 0..n {
        let xi = x.row(i);
        for (c, col) in block.iter_mut().enumerate() {
            col[i] = (0..kc).map(|t| xi[t] * omega[t * p + c]).sum();
        }
    }
    let mut q = orthonormal_block(block, n);

    let mut theta = vec![0.0; p];
    let mut ritz = q.clone();
    for iter in 1..=MAX_ITERATIONS {
        let z = apply_gram(x, &q);
        let h = Matrix::from_fn(p, p, |a, b| 0.5 * (dot(&q[a], &z[b]) + dot(&q[b], &z[a])));
        let eig = sym_eig(&h)?;
        let s = &eig.eigenvectors;
        theta.clone_from(&eig.eigenvalues);
        ritz = combine(&q, s);
        let zs = combine(&z, s);

        let top = theta[0].max(0.0);
        let mut worst = 0.0f64;
        for c in 0..k {
            let mut res = zs[c].clone();
            axpy(-theta[c], &ritz[c], &mut res);
            worst = worst.max(norm2(&res));
        }
        if top == 0.0 || worst <= RESIDUAL_TOLERANCE * top {
            return Ok(finish(&ritz, &theta, k, iter, true));
        }
        q = orthonormal_block(zs, n);
    }
    log::debug!("partial_svd: no convergence after {MAX_ITERATIONS} iterations (n={n}, cols={kc}, k={k})");
    Ok(finish(&ritz, &theta, k, MAX_ITERATIONS, false))
}

fn exact(x: &Matrix, k: usize) -> Result<PartialSvd> {
    let s = thin_svd(x)?;
    Ok(PartialSvd {
        left_vectors: s.left_vectors.col_block(0, k)?,
        singular_values: s.singular_values,
        iterations: 0,
        converged: true,
        exact: true,
    })
}

fn finish(ritz: &[Vec<f64>], theta: &[f64], k: usize, iterations: usize, converged: bool) -> PartialSvd {
    PartialSvd {
        left_vectors: Matrix::from_columns(&ritz[..k]).expect("non-empty block"),
        singular_values: theta.iter().map(|t| t.max(0.0).sqrt()).collect(),
        iterations,
        converged,
        exact: false,
    }
}

/// `X Xᵀ Q` for a column block `Q`, via `W = Xᵀ Q` accumulated row by row.
fn apply_gram(x: &Matrix, q: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let (n, kc) = x.shape();
    let p = q.len();
    // W row-major kc × p
    let mut w = vec![0.0; kc * p];
    let mut qi = vec![0.0; p];
    for i in 0..n {
        for (c, col) in q.iter().enumerate() {
            qi[c] = col[i];
        }
        for (t, &xv) in x.row(i).iter().enumerate() {
            if xv != 0.0 {
                axpy(xv, &qi, &mut w[t * p..(t + 1) * p]);
            }
        }
    }
    let mut z = vec![vec![0.0; n]; p];
    let mut zi = vec![0.0; p];
    for i in 0..n {
        zi.iter_mut().for_each(|v| *v = 0.0);
        for (t, &xv) in x.row(i).iter().enumerate() {
            if xv != 0.0 {
                axpy(xv, &w[t * p..(t + 1) * p], &mut zi);
            }
        }
        for (c, col) in z.iter_mut().enumerate() {
            col[i] = zi[c];
        }
    }
    z
}

/// Columns of `B S` for a column block `B` and small square `S`.
fn combine(b: &[Vec<f64>], s: &Matrix) -> Vec<Vec<f64>> {
    let n = b[0].len();
    (0..s.cols())
        .map(|c| {
            let mut out = vec![0.0; n];
            for (a, col) in b.iter().enumerate() {
                axpy(s[(a, c)], col, &mut out);
            }
            out
        })
        .collect()
}

/// Orthonormalise in column order; numerically dependent columns are replaced
/// by canonical directions orthogonal to the block.
fn orthonormal_block(mut cols: Vec<Vec<f64>>, n: usize) -> Vec<Vec<f64>> {
    let scale = cols.iter().map(|c| norm2(c)).fold(0.0, f64::max);
    for j in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(j);
        let v = &mut rest[0];
        project_out(done, v);
        let nrm = norm2(v);
        if nrm <= 1e-13 * scale || nrm == 0.0 {
            *v = complement_vector(done, n);
        } else {
            v.iter_mut().for_each(|x| *x /= nrm);
        }
    }
    cols
}
