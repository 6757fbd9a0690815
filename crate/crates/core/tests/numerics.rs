use proptest::prelude::*;

use tanlab::numerics::{matrix_norms, partial_svd, sym_eig, thin_svd};
use tanlab::Matrix;

fn pseudo(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
    Matrix::from_fn(rows, cols, |_, _| {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    })
}

#[test]
fn wide_svd_matches_gram_eigenvalues() {
    let x = pseudo(20, 60, 1);
    let s = thin_svd(&x).unwrap().singular_values;
    let e = sym_eig(&x.gram_rows()).unwrap().eigenvalues;
    for (sv, ev) in s.iter().zip(&e) {
        assert!((sv * sv - ev).abs() <= 1e-8 * e[0]);
    }
}

#[test]
fn small_norm_examples() {
    let d = Matrix::diag(&[3.0, -4.0]).unwrap();
    let n = matrix_norms(&d).unwrap();
    assert!((n.operator - 4.0).abs() < 1e-14);
    assert!((n.frobenius - 5.0).abs() < 1e-14);
    assert!((n.spectral_radius.unwrap() - 4.0).abs() < 1e-14);
    let v = Matrix::from_rows(&[vec![3.0], vec![4.0]]).unwrap();
    assert!((thin_svd(&v).unwrap().singular_values[0] - 5.0).abs() < 1e-14);
    assert!(thin_svd(&Matrix::zeros(4, 3)).unwrap().singular_values.iter().all(|s| *s == 0.0));
}

#[test]
fn partial_svd_matches_exact_leading_part() {
    let x = pseudo(80, 500, 3);
    let exact = thin_svd(&x).unwrap();
    let part = partial_svd(&x, 4).unwrap();
    assert!(part.converged);
    for i in 0..4 {
        assert!((exact.singular_values[i] - part.singular_values[i]).abs() < 1e-9 * exact.singular_values[0]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn spectral_radius_below_frobenius(n in 1usize..20, seed in any::<u64>()) {
        let g = pseudo(n, n, seed);
        let a = g.add(&g.transpose()).unwrap();
        let norms = matrix_norms(&a).unwrap();
        prop_assert!(norms.spectral_radius.unwrap() <= norms.frobenius * (1.0 + 1e-12));
        prop_assert!(norms.operator <= norms.frobenius * (1.0 + 1e-12));
    }
}
