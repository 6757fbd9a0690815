use serde::Serialize;

use super::Matrix;
use crate::error::{Error, Result};

/// Relative asymmetry above which [`sym_eig`] refuses its input.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct EigenDecomposition {
    /// Sorted in non-increasing order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `eigenvalues`.
    pub eigenvectors: Matrix,
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// The input is symmetrised as `(A + Aᵀ)/2` after checking that
/// `max |a_ij − a_ji| ≤ 1e-12 · max |a_ij|`.
pub fn sym_eig(a: &Matrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let asym = a.max_asymmetry().unwrap_or(0.0);
    if asym > SYMMETRY_TOLERANCE * a.max_abs() {
        return Err(Error::NotSymmetric {
            max_asymmetry: asym,
        });
    }

    let mut w = a.as_slice().to_vec();
    for i in 0..n {
        for j in i + 1..n {
            let s = 0.5 * (w[i * n + j] + w[j * n + i]);
            w[i * n + j] = s;
            w[j * n + i] = s;
        }
    }
    let mut v = Matrix::identity(n).into_vec();

    let total = super::norm2(&w);
    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += w[i * n + j] * w[i * n + j];
            }
        }
        if off.sqrt() <= f64::EPSILON * 1e-2 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                let g = 100.0 * apq.abs();
                // once the sweep count is past the quadratic phase, entries that
                // cannot change either diagonal are flushed instead of rotated
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    w[p * n + q] = 0.0;
                    w[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut w, n, p, q, c, s);
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;
                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                rotate_columns(&mut v, n, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[j * n + j].total_cmp(&w[i * n + i]));
    let eigenvalues = order.iter().map(|&i| w[i * n + i]).collect();
    let vecs = Matrix::from_fn(n, n, |r, c| v[r * n + order[c]]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: vecs,
    })
}

/// `W ← Jᵀ W J` for the plane rotation in coordinates `(p, q)`.
fn rotate(w: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    rotate_columns(w, n, p, q, c, s);
    for k in 0..n {
        let wp = w[p * n + k];
        let wq = w[q * n + k];
        w[p * n + k] = c * wp - s * wq;
        w[q * n + k] = s * wp + c * wq;
    }
}

fn rotate_columns(w: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let wp = w[k * n + p];
        let wq = w[k * n + q];
        w[k * n + p] = c * wp - s * wq;
        w[k * n + q] = s * wp + c * wq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(e: &EigenDecomposition) -> Matrix {
        let n = e.eigenvalues.len();
        let v = &e.eigenvectors;
        Matrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * e.eigenvalues[k] * v[(j, k)]).sum()
        })
    }

    #[test]
    fn two_by_two_closed_form() {
        let a = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = sym_eig(&a).unwrap();
        assert!((e.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        let v0 = e.eigenvectors.column(0);
        assert!((v0[0].abs() - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((v0[0] - v0[1]).abs() < 1e-14);
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let a = Matrix::diag(&[1.0, -4.0, 7.0, 0.0]).unwrap();
        let e = sym_eig(&a).unwrap();
        assert_eq!(e.eigenvalues, vec![7.0, 1.0, 0.0, -4.0]);
    }

    #[test]
    fn rejects_asymmetric_and_rectangular() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.1, 1.0]]).unwrap();
        assert!(matches!(sym_eig(&a), Err(Error::NotSymmetric { .. })));
        assert!(matches!(
            sym_eig(&Matrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn repeated_eigenvalues() {
        // rank-one update of the identity: eigenvalues 1 + ‖u‖², then 1 repeated
        let u = [1.0, 2.0, -1.0, 0.5];
        let a = Matrix::from_fn(4, 4, |i, j| u[i] * u[j] + if i == j { 1.0 } else { 0.0 });
        let e = sym_eig(&a).unwrap();
        assert!((e.eigenvalues[0] - 7.25).abs() < 1e-13);
        for &l in &e.eigenvalues[1..] {
            assert!((l - 1.0).abs() < 1e-13);
        }
        assert!(e.eigenvectors.orthonormality_defect() < 1e-13);
        assert!(reconstruct(&e).sub(&a).unwrap().frobenius_norm() < 1e-13);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn symmetric(max_n: usize) -> impl Strategy<Value = Matrix> {
            (1..=max_n).prop_flat_map(|n| {
                proptest::collection::vec(-10.0f64..10.0, n * n).prop_map(move |d| {
                    Matrix::from_fn(n, n, |i, j| {
                        let (a, b) = if i <= j { (i, j) } else { (j, i) };
                        d[a * n + b]
                    })
                })
            })
        }

        proptest! {
            #[test]
            fn reconstructs_and_orthonormal(a in symmetric(12)) {
                let e = sym_eig(&a).unwrap();
                let scale = a.frobenius_norm().max(1e-300);
                prop_assert!(reconstruct(&e).sub(&a).unwrap().frobenius_norm() / scale < 1e-12);
                prop_assert!(e.eigenvectors.orthonormality_defect() < 1e-12);
                prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
                let trace: f64 = (0..a.rows()).map(|i| a[(i, i)]).sum();
                let sum: f64 = e.eigenvalues.iter().sum();
                prop_assert!((trace - sum).abs() <= 1e-11 * scale.max(1.0));
            }
        }
    }
}
