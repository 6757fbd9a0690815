use serde::Serialize;

use super::orth::{complement_vector, project_out};
use super::{dot, norm2, Matrix};
use crate::error::Result;

const MAX_SWEEPS: usize = 80;

/// `X = U diag(σ) Vᵀ` with `r = min(rows, cols)` columns in `U` and `V`.
#[derive(Clone, Debug, Serialize)]
pub struct ThinSvd {
    pub left_vectors: Matrix,
    /// Non-increasing, non-negative.
    pub singular_values: Vec<f64>,
    pub right_vectors: Matrix,
}

/// Thin SVD by one-sided Jacobi rotations applied to the taller orientation.
///
/// Left (or right) vectors belonging to zero singular values are completed to
/// an orthonormal set.
pub fn thin_svd(x: &Matrix) -> Result<ThinSvd> {
    let transposed = x.rows() < x.cols();
    let a = if transposed { x.transpose() } else { x.clone() };
    let (r, c) = a.shape();
    let mut cols = a.columns();
    let mut v: Vec<Vec<f64>> = (0..c)
        .map(|j| {
            let mut e = vec![0.0; c];
            e[j] = 1.0;
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..c {
            for j in i + 1..c {
                let alpha = dot(&cols[i], &cols[i]);
                let beta = dot(&cols[j], &cols[j]);
                let gamma = dot(&cols[i], &cols[j]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta.abs() > 1e150 {
                    0.5 / zeta
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                rotate_pair(&mut cols, i, j, cs, sn);
                rotate_pair(&mut v, i, j, cs, sn);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<(f64, usize)> = cols.iter().enumerate().map(|(k, col)| (norm2(col), k)).collect();
    sigma.sort_by(|a, b| b.0.total_cmp(&a.0));
    let smax = sigma.first().map_or(0.0, |s| s.0);
    // columns this small carry no reliable direction
    let floor = smax * f64::EPSILON * (r.max(c) as f64);

    let mut left: Vec<Vec<f64>> = Vec::with_capacity(c);
    let mut right: Vec<Vec<f64>> = Vec::with_capacity(c);
    let mut values = Vec::with_capacity(c);
    for &(s, k) in &sigma {
        right.push(v[k].clone());
        if s > floor && s > 0.0 {
            let mut u: Vec<f64> = cols[k].iter().map(|x| x / s).collect();
            if s < 1e-6 * smax {
                // rounding in the rotations leaves O(eps·σ₁/σ) cross-talk here
                project_out(&left, &mut u);
                let nrm = norm2(&u);
                if nrm < 0.5 {
                    u = complement_vector(&left, r);
                } else {
                    u.iter_mut().for_each(|x| *x /= nrm);
                }
            }
            left.push(u);
            values.push(s);
        } else {
            let e = complement_vector(&left, r);
            left.push(e);
            values.push(if s > 0.0 { s } else { 0.0 });
        }
    }

    let u = Matrix::from_columns(&left)?;
    let w = Matrix::from_columns(&right)?;
    Ok(if transposed {
        ThinSvd {
            left_vectors: w,
            singular_values: values,
            right_vectors: u,
        }
    } else {
        ThinSvd {
            left_vectors: u,
            singular_values: values,
            right_vectors: w,
        }
    })
}

fn rotate_pair(cols: &mut [Vec<f64>], i: usize, j: usize, c: f64, s: f64) {
    let (head, tail) = cols.split_at_mut(j);
    let (a, b) = (&mut head[i], &mut tail[0]);
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (xi, yi) = (*x, *y);
        *x = c * xi - s * yi;
        *y = s * xi + c * yi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(s: &ThinSvd) -> Matrix {
        let u = &s.left_vectors;
        let v = &s.right_vectors;
        Matrix::from_fn(u.rows(), v.rows(), |i, j| {
            (0..s.singular_values.len())
                .map(|k| u[(i, k)] * s.singular_values[k] * v[(j, k)])
                .sum()
        })
    }

    #[test]
    fn known_singular_values() {
        // rows are orthogonal with norms 3 and 2
        let x = Matrix::from_rows(&[vec![3.0, 0.0, 0.0], vec![0.0, 0.0, -2.0]]).unwrap();
        let s = thin_svd(&x).unwrap();
        assert_eq!(s.left_vectors.shape(), (2, 2));
        assert_eq!(s.right_vectors.shape(), (3, 2));
        assert!((s.singular_values[0] - 3.0).abs() < 1e-15);
        assert!((s.singular_values[1] - 2.0).abs() < 1e-15);
        assert!(reconstruct(&s).sub(&x).unwrap().frobenius_norm() < 1e-14);
    }

    #[test]
    fn zero_and_rank_deficient() {
        let z = Matrix::zeros(4, 3);
        let s = thin_svd(&z).unwrap();
        assert!(s.singular_values.iter().all(|&v| v == 0.0));
        assert!(s.left_vectors.orthonormality_defect() < 1e-14);

        let x = Matrix::from_fn(5, 7, |i, j| (i as f64 + 1.0) * (j as f64 - 3.0));
        let s = thin_svd(&x).unwrap();
        assert!(s.singular_values[1] < 1e-12 * s.singular_values[0]);
        assert!(s.left_vectors.orthonormality_defect() < 1e-13);
        assert!(s.right_vectors.orthonormality_defect() < 1e-13);
        assert!(reconstruct(&s).sub(&x).unwrap().frobenius_norm() < 1e-12 * x.frobenius_norm());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
            (1..=max, 1..=max).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-5.0f64..5.0, r * c)
                    .prop_map(move |d| Matrix::new(r, c, d).unwrap())
            })
        }

        proptest! {
            #[test]
            fn factorisation_holds(x in matrix(10)) {
                let s = thin_svd(&x).unwrap();
                let scale = x.frobenius_norm().max(1e-300);
                prop_assert!(reconstruct(&s).sub(&x).unwrap().frobenius_norm() / scale < 1e-12);
                prop_assert!(s.left_vectors.orthonormality_defect() < 1e-12);
                prop_assert!(s.right_vectors.orthonormality_defect() < 1e-12);
                prop_assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }
}
