use tanlab::harness::{run, run_angle_vs_k, Experiment, ExperimentConfig, TrialTag};
use tanlab::manifold::Family;
use tanlab::par::Execution;

fn small_angles(family: Family) -> ExperimentConfig {
    let mut c = ExperimentConfig::defaults(Experiment::AngleVsK);
    c.family = family;
    c.m_grid = vec![3];
    c.n_grid = vec![30];
    c.kmax_grid = vec![5.0];
    c.gamma = vec![0.5, 4.0];
    c.k_grid = vec![100, 500, 2000];
    c.trials = 6;
    c
}

#[test]
fn csv_is_byte_identical_across_runs_and_schedulers() {
    let mut c = small_angles(Family::Smooth1Exp);
    c.trials = 1;
    let a = run(&c).unwrap().to_csv_string().unwrap();
    assert_eq!(a, run(&c).unwrap().to_csv_string().unwrap());
    c.execution = Execution::Sequential;
    assert_eq!(a, run(&c).unwrap().to_csv_string().unwrap());
}

#[test]
fn aggregates_are_trial_means_and_angles_are_in_range() {
    let recs = run_angle_vs_k(&small_angles(Family::Smooth3Poly)).unwrap();
    assert!(recs.iter().all(|r| (0.0..=90.0).contains(&r.angle_deg)));
    for chunk in recs.chunks(7) {
        assert_eq!(chunk[6].trial, TrialTag::Aggregate);
        let mean = chunk[..6].iter().map(|r| r.angle_deg).sum::<f64>() / 6.0;
        assert!((chunk[6].angle_deg - mean).abs() <= 1e-12);
    }
}

#[test]
fn narrow_widths_improve_and_wide_widths_degrade_with_k() {
    let recs = run_angle_vs_k(&small_angles(Family::Quadratic)).unwrap();
    let agg = |gamma: f64, k: usize| {
        recs.iter()
            .find(|r| r.gamma == gamma && r.k == k && r.trial == TrialTag::Aggregate)
            .unwrap()
            .angle_deg
    };
    assert!(agg(0.5, 2000) < agg(0.5, 100));
    assert!(agg(4.0, 2000) > 45.0);
}

#[test]
fn min_k_grows_with_curvature() {
    let mut c = ExperimentConfig::defaults(Experiment::MinKVsKmax);
    c.m_grid = vec![2];
    c.n_grid = vec![20];
    c.kmax_grid = vec![1.0, 2.0, 4.0];
    c.k_grid = (20..=4000).step_by(20).collect();
    c.trials = 10;
    let out = tanlab::harness::run_min_k_sweep(&c).unwrap();
    let ks: Vec<usize> = out.iter().map(|r| r.min_k.expect("not censored")).collect();
    assert!(ks.windows(2).all(|w| w[0] <= w[1]), "{ks:?}");
}
