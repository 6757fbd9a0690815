use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tanlab::harness::{run_angle_vs_k, run_max_nu_sweep, Experiment, ExperimentConfig};
use tanlab::par::Execution;

fn angle_config() -> ExperimentConfig {
    let mut c = ExperimentConfig::defaults(Experiment::AngleVsK);
    c.n_grid = vec![100];
    c.gamma = vec![1.2];
    c.k_grid = vec![500, 1000, 2000];
    c.trials = 8;
    c
}

fn max_nu_config() -> ExperimentConfig {
    let mut c = ExperimentConfig::defaults(Experiment::MaxNuVsN);
    c.n_grid = vec![200];
    c.trials = 8;
    c
}

fn trials(crit: &mut Criterion) {
    let mut group = crit.benchmark_group("trials");
    group.sample_size(10);
    for (name, exec) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
        let mut c = angle_config();
        c.execution = exec;
        group.bench_with_input(BenchmarkId::new("angle_vs_k", name), &c, |b, c| {
            b.iter(|| black_box(run_angle_vs_k(c).unwrap()))
        });
        let mut c = max_nu_config();
        c.execution = exec;
        group.bench_with_input(BenchmarkId::new("max_nu", name), &c, |b, c| {
            b.iter(|| black_box(run_max_nu_sweep(c).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, trials);
criterion_main!(benches);
