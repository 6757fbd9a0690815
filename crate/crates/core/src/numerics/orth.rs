use super::{axpy, dot, norm2, Matrix};
use crate::error::{Error, Result};

/// Orthonormal basis of the column span, in column order (modified Gram–Schmidt
/// with one re-orthogonalisation pass). Fails if the columns are numerically
/// dependent.
pub fn orthonormalize(a: &Matrix) -> Result<Matrix> {
    if a.cols() > a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot orthonormalise {} columns in R^{}",
            a.cols(),
            a.rows()
        )));
    }
    let mut cols = a.columns();
    for j in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(j);
        let v = &mut rest[0];
        let before = norm2(v);
        project_out(done, v);
        let after = norm2(v);
        if before == 0.0 || after <= 1e-12 * before {
            return Err(Error::InvalidParameter {
                name: "columns",
                reason: format!("column {j} is numerically dependent on earlier columns"),
            });
        }
        v.iter_mut().for_each(|x| *x /= after);
    }
    Matrix::from_columns(&cols)
}

/// Two passes of `v ← v − Σ (q·v) q` over orthonormal `basis`.
pub(crate) fn project_out(basis: &[Vec<f64>], v: &mut [f64]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(q, v);
            axpy(-c, q, v);
        }
    }
}

/// Unit vector orthogonal to `basis`, found by trying canonical vectors in
/// turn and keeping the one with the largest residual.
pub(crate) fn complement_vector(basis: &[Vec<f64>], dim: usize) -> Vec<f64> {
    let mut best = vec![0.0; dim];
    let mut best_norm = -1.0;
    for k in 0..dim {
        let mut e = vec![0.0; dim];
        e[k] = 1.0;
        project_out(basis, &mut e);
        let nrm = norm2(&e);
        if nrm > best_norm {
            best_norm = nrm;
            best = e;
        }
        if nrm > 0.7 {
            break;
        }
    }
    // a second pass restores orthogonality lost to cancellation
    project_out(basis, &mut best);
    let nrm = norm2(&best);
    best.iter_mut().for_each(|x| *x /= nrm);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormalises_and_keeps_span() {
        let a = Matrix::from_fn(5, 3, |i, j| ((i + 1) * (j + 2)) as f64 + (i * j) as f64 * 0.3 + if i == j { 1.0 } else { 0.0 });
        let q = orthonormalize(&a).unwrap();
        assert!(q.orthonormality_defect() < 1e-14);
        // projecting A onto span(Q) reproduces A
        let p = q.matmul(&q.t_matmul(&a).unwrap()).unwrap();
        assert!(p.sub(&a).unwrap().frobenius_norm() < 1e-12 * a.frobenius_norm());
    }

    #[test]
    fn dependent_columns_fail() {
        let a = Matrix::from_fn(4, 2, |i, _| i as f64 + 1.0);
        assert!(orthonormalize(&a).is_err());
    }

    #[test]
    fn complement_is_orthogonal() {
        let b = vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.6, 0.8]];
        let c = complement_vector(&b, 3);
        assert!((norm2(&c) - 1.0).abs() < 1e-15);
        assert!(b.iter().all(|q| dot(q, &c).abs() < 1e-15));
    }
}
