use std::f64::consts::E;

use proptest::prelude::*;

use tanlab::bounds::{
    angle_bound, expected_quadratic_gram, k_bounds, nu_bound_quad, BoundParams, CorrelationStructure,
};
use tanlab::concentration::{
    bernstein_tail, chernoff_lower_tail, chernoff_upper_tail, validate_tail_bounds, TailBoundQuery, TailKind,
};
use tanlab::manifold::{CurvatureSpectrum, EmbeddingSpec, Family};
use tanlab::par::Execution;

const DENSE: CorrelationStructure = CorrelationStructure::Dense;

#[test]
fn one_dimensional_gram_moment() {
    let (kappa, nu) = (3.0, 0.7);
    let s = CurvatureSpectrum::new(1, 2, kappa, vec![vec![kappa]], None).unwrap();
    let spec = EmbeddingSpec::new(Family::Quadratic, s, None, None).unwrap();
    let g = expected_quadratic_gram(&spec, nu, 1_000_000, 4).unwrap();
    let want = kappa * kappa * nu.powi(4) / 20.0;
    assert!((g.d[(0, 0)] - want).abs() < 0.02 * want, "{} vs {want}", g.d[(0, 0)]);
}

#[test]
fn normal_energy_stays_below_tangent_variance_inside_width_bound() {
    let (m, n, kmax) = (3, 25, 6.0);
    let nu = 0.9 * nu_bound_quad(m, n, kmax, DENSE).unwrap();
    for seed in 0..3 {
        let spec = EmbeddingSpec::generate(Family::Quadratic, m, n, kmax, seed).unwrap();
        let g = expected_quadratic_gram(&spec, nu, 20_000, seed).unwrap();
        assert!(g.spectral_radius < nu * nu / 3.0);
    }
    let flat = EmbeddingSpec::generate(Family::Quadratic, m, n, 0.0, 1).unwrap();
    assert_eq!(expected_quadratic_gram(&flat, 0.3, 1000, 1).unwrap().spectral_radius, 0.0);
}

#[test]
fn flat_manifold_never_fires_curvature_events() {
    for kind in [TailKind::ChernoffUpper, TailKind::Bernstein] {
        let q = TailBoundQuery {
            kind,
            m: 2,
            n: 6,
            kmax: 1e-300,
            nu: 0.5,
            k: 50,
            structure: DENSE,
            threshold: if kind == TailKind::Bernstein { 1e-3 } else { 2.0 * E },
        };
        let r = validate_tail_bounds(&q, 100, 3, Execution::Sequential).unwrap();
        assert_eq!(r.events, 0);
        assert_eq!(r.empirical * r.reps as f64, r.events as f64);
    }
}

#[test]
fn lower_tail_sound_at_small_point() {
    let (m, n, kmax) = (3, 20, 5.0);
    let nu = nu_bound_quad(m, n, kmax, DENSE).unwrap();
    // K chosen so the bound is informative but not vanishing
    let q = TailBoundQuery { kind: TailKind::ChernoffLower, m, n, kmax, nu, k: 400, structure: DENSE, threshold: 0.5 };
    let r = validate_tail_bounds(&q, 200, 8, Execution::default()).unwrap();
    assert!(r.theoretical > 0.0 && r.theoretical < 1.0);
    assert!(r.is_sound(), "{r:?}");
}

#[test]
fn bounds_vanish_as_k_grows() {
    let nu = nu_bound_quad(5, 100, 10.0, DENSE).unwrap();
    let k = 10_000_000;
    assert!(chernoff_lower_tail(5, 100, 10.0, nu, k, 0.5).unwrap() < 1e-12);
    assert!(chernoff_upper_tail(5, 100, 10.0, nu, k, 2.0 * E, DENSE).unwrap() < 1e-12);
    assert!(bernstein_tail(5, 100, 10.0, nu, k, 1e-4, DENSE).unwrap() < 1e-12);
    assert_eq!(chernoff_lower_tail(5, 100, 10.0, nu, 10, 0.999_999).unwrap(), 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tails_decrease_in_k(k in 10usize..5000, m in 1usize..8, extra in 1usize..60, kmax in 0.5f64..20.0) {
        let n = m + extra;
        let nu = 0.7 * nu_bound_quad(m, n, kmax, DENSE).unwrap();
        let lo = |k| chernoff_lower_tail(m, n, kmax, nu, k, 0.5).unwrap();
        let up = |k| chernoff_upper_tail(m, n, kmax, nu, k, 2.0 * E, DENSE).unwrap();
        let s3 = 1e-3 * nu * nu;
        let be = |k| bernstein_tail(m, n, kmax, nu, k, s3, DENSE).unwrap();
        prop_assert!(lo(2 * k) <= lo(k));
        prop_assert!(up(2 * k) <= up(k));
        prop_assert!(be(2 * k) <= be(k));
        prop_assert!(bernstein_tail(m, n, kmax, 1.5 * nu, k, s3, DENSE).unwrap() >= be(k));
    }

    #[test]
    fn k3_decreases_in_s3(s3 in 1e-9f64..1e-5) {
        let nu = 0.5 * nu_bound_quad(5, 100, 10.0, DENSE).unwrap();
        let p = BoundParams { s3, ..BoundParams::new(5, 100, 10.0, nu, DENSE) };
        let q = BoundParams { s3: 2.0 * s3, ..p };
        let (a, b) = (k_bounds(&p).unwrap(), k_bounds(&q).unwrap());
        prop_assert!(b.k3 < a.k3);
        prop_assert_eq!(a.k_bound, a.k1.max(a.k2).max(a.k3));
    }

    #[test]
    fn angle_bound_monotone(tau in 0.0f64..0.3, sf in 0.0f64..0.1, m in 1usize..10) {
        let a = angle_bound(tau, m, sf).unwrap();
        prop_assert!(angle_bound(tau + 0.01, m, sf).unwrap() > a);
        prop_assert!(angle_bound(tau, m, sf + 0.01).unwrap() > a);
        if tau > 0.0 || sf > 0.0 {
            prop_assert!(angle_bound(tau, m + 1, sf).unwrap() > a);
        }
    }
}
