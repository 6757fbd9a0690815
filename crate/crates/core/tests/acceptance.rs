//! Acceptance checks. Prints one `[PASS]`/`[FAIL]` line per criterion and exits
//! nonzero if any fails.
//!
//! `ACCEPTANCE_ONLY=3,7` runs a subset.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_distr::StandardNormal;

use tanlab::bounds::{nu_bound_quad, nu_bound_quad_from_rl, CorrelationStructure};
use tanlab::concentration::{bernstein_threshold_for, validate_many, TailBoundQuery, TailKind};
use tanlab::estimator::{leakage_angle_limit, local_pca, local_pca_with, projection_distance, subspace_angle, PcaRoute};
use tanlab::harness::{
    run_angle_vs_k, run_max_nu_sweep, run_theory_vs_empirical, stats, Experiment, ExperimentConfig, Series,
    TrialTag,
};
use tanlab::manifold::{EmbeddingSpec, Family};
use tanlab::numerics::{orthonormalize, sym_eig, thin_svd};
use tanlab::rng;
use tanlab::sampling::{embed_cloud, sample_cloud};
use tanlab::Matrix;

const SEED: u64 = 20240611;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

type Check = fn() -> tanlab::Result<Outcome>;

fn gaussian(rng: &mut rng::Stream, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

fn linear_algebra() -> tanlab::Result<Outcome> {
    let mut r = rng::stream(SEED, &[1]);
    let (mut recon, mut orth, mut agree) = (0f64, 0f64, 0f64);
    for _ in 0..100 {
        let n = r.random_range(2..=80);
        let g = gaussian(&mut r, n, n);
        let a = g.add(&g.transpose())?.scaled(0.5);
        let e = sym_eig(&a)?;
        let lam = Matrix::diag(&e.eigenvalues)?;
        let back = e.eigenvectors.matmul(&lam)?.matmul(&e.eigenvectors.transpose())?;
        recon = recon.max(back.sub(&a)?.frobenius_norm() / a.frobenius_norm());
        orth = orth.max(e.eigenvectors.orthonormality_defect());
        let mut abs: Vec<f64> = e.eigenvalues.iter().map(|v| v.abs()).collect();
        abs.sort_by(|x, y| y.total_cmp(x));
        let s = thin_svd(&a)?.singular_values;
        let scale = abs[0].max(f64::MIN_POSITIVE);
        for (x, y) in abs.iter().zip(&s) {
            agree = agree.max((x - y).abs() / scale);
        }
    }
    Ok(outcome(
        recon < 1e-9 && orth < 1e-10 && agree < 1e-8,
        format!("reconstruction {recon:.2e}, orthonormality {orth:.2e}, eig/svd agreement {agree:.2e}"),
    ))
}

fn projection_identity() -> tanlab::Result<Outcome> {
    let mut r = rng::stream(SEED, &[2]);
    let (mut worst, mut violations) = (0f64, 0usize);
    for _ in 0..1000 {
        let n = r.random_range(2..=50);
        let m = r.random_range(1..n);
        let e = Matrix::canonical_frame(n, m);
        // frames from nearly aligned to generic
        let eps = 10f64.powf(r.random_range(-4.0..0.5));
        let u = orthonormalize(&e.add(&gaussian(&mut r, n, m).scaled(eps))?)?;
        let u2 = u.row_block(m, n)?.frobenius_norm();
        let d = projection_distance(&u, &e)?;
        worst = worst.max((d * d - 2.0 * u2 * u2).abs());
        let angle = subspace_angle(&u, &e)?;
        let taus = (1..=20).map(|i| i as f64 * 0.05).chain([u2 * (1.0 + 1e-9)]);
        for tau in taus.filter(|t| u2 < *t) {
            if angle >= leakage_angle_limit(tau, m) {
                violations += 1;
            }
        }
    }
    Ok(outcome(
        worst < 1e-10 && violations == 0,
        format!("max identity error {worst:.2e}, angle-limit violations {violations}"),
    ))
}

fn fourth_moment() -> tanlab::Result<Outcome> {
    let c = sample_cloud(3, 1.0, 1_000_000, SEED, 3)?;
    let got = c.mean_norm4();
    let want = 3.0 * 19.0 / 45.0;
    let rel = (got - want).abs() / want;
    Ok(outcome(rel < 0.01, format!("mean ‖x‖⁴ = {got:.5}, expected {want:.5}, rel err {rel:.2e}")))
}

fn flat_exactness() -> tanlab::Result<Outcome> {
    let spec = EmbeddingSpec::generate(Family::Quadratic, 5, 50, 0.0, SEED)?;
    let x = embed_cloud(&spec, &sample_cloud(5, 1.0, 5, SEED, 4)?)?;
    let a = local_pca(&x, 5)?.angle_degrees();
    Ok(outcome(a < 1e-8, format!("angle {a:.3e} deg")))
}

fn convergence() -> tanlab::Result<Outcome> {
    let (m, n, kmax) = (5, 100, 10.0);
    let nu = 0.8 * nu_bound_quad(m, n, kmax, CorrelationStructure::Dense)?;
    let (mut big, mut small) = (Vec::new(), Vec::new());
    for t in 0..10u64 {
        let spec = EmbeddingSpec::generate(Family::Quadratic, m, n, kmax, rng::derive_seed(SEED, &[5, t]))?;
        let x = embed_cloud(&spec, &sample_cloud(m, nu, 20_000, SEED, 500 + t)?)?;
        big.push(local_pca_with(&x, m, PcaRoute::Partial)?.angle_degrees());
        small.push(local_pca_with(&x.prefix(200)?, m, PcaRoute::Partial)?.angle_degrees());
    }
    let (a, b) = (stats::mean(&big), stats::mean(&small));
    Ok(outcome(
        a < 5.0 && a < 0.25 * b,
        format!("mean angle {a:.3} deg at K=20000, {b:.3} deg at K=200"),
    ))
}

fn trends() -> tanlab::Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for family in Family::ALL {
        let mut c = ExperimentConfig::defaults(Experiment::AngleVsK);
        c.family = family;
        c.n_grid = vec![100];
        c.gamma = vec![1.2, 4.0];
        c.seed = SEED;
        let recs = run_angle_vs_k(&c)?;
        for (gamma, good) in [(1.2, true), (4.0, false)] {
            let (ks, angles): (Vec<f64>, Vec<f64>) = recs
                .iter()
                .filter(|r| r.gamma == gamma && r.trial == TrialTag::Aggregate)
                .map(|r| (r.k as f64, r.angle_deg))
                .unzip();
            let last = *angles.last().expect("non-empty grid");
            let rho = stats::spearman(&ks, &angles);
            let ok = if good { last < 20.0 && rho <= -0.8 } else { last > 45.0 && rho >= 0.8 };
            pass &= ok;
            parts.push(format!("{family} γ={gamma}: {last:.1}° ρ={rho:+.2}"));
        }
    }
    Ok(outcome(pass, parts.join("; ")))
}

fn tail_soundness() -> tanlab::Result<Outcome> {
    let (m, n, kmax, k) = (5, 100, 10.0, 2000);
    let structure = CorrelationStructure::Dense;
    let nu = nu_bound_quad(m, n, kmax, structure)?;
    let q = |kind, threshold| TailBoundQuery { kind, m, n, kmax, nu, k, structure, threshold };
    let mut queries = vec![
        q(TailKind::ChernoffLower, 0.5),
        q(TailKind::ChernoffUpper, 2.0 * std::f64::consts::E),
    ];
    for target in [0.05, 0.3] {
        queries.push(q(TailKind::Bernstein, bernstein_threshold_for(m, n, kmax, nu, k, target, structure)?));
    }
    let res = validate_many(&queries, 500, SEED, Default::default())?;
    let detail = res
        .iter()
        .map(|r| format!("{} {:.3} ≤ {:.3}", r.kind.name(), r.empirical, r.theoretical))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(outcome(res.iter().all(|r| r.is_sound()), detail))
}

fn scaling_laws() -> tanlab::Result<Outcome> {
    let mut c = ExperimentConfig::defaults(Experiment::MaxNuVsN);
    c.seed = SEED;
    c.theta_bound_deg = vec![5.0];
    let vs_n = run_max_nu_sweep(&c)?;
    let ns: Vec<f64> = vs_n.iter().map(|r| r.n as f64).collect();
    let nus: Vec<f64> = vs_n.iter().map(|r| r.max_nu).collect();
    let slope_n = stats::loglog_slope(&ns, &nus);
    let ratio = stats::mean(&vs_n.iter().map(|r| r.gamma_ratio).collect::<Vec<_>>());
    let censored_n = vs_n.iter().filter(|r| r.censored).count();

    let mut c = ExperimentConfig::defaults(Experiment::MaxNuVsKmax);
    c.seed = SEED;
    c.n_grid = vec![100];
    c.theta_bound_deg = vec![5.0];
    let vs_k = run_max_nu_sweep(&c)?;
    let ks: Vec<f64> = vs_k.iter().map(|r| r.kmax).collect();
    let nus: Vec<f64> = vs_k.iter().map(|r| r.max_nu).collect();
    let slope_k = stats::loglog_slope(&ks, &nus);
    let censored_k = vs_k.iter().filter(|r| r.censored).count();

    let pass = (-0.65..=-0.35).contains(&slope_n)
        && (1.0..=2.5).contains(&ratio)
        && (-1.2..=-0.8).contains(&slope_k)
        && censored_n + censored_k == 0;
    Ok(outcome(
        pass,
        format!(
            "slope vs n {slope_n:.3}, mean γ ratio {ratio:.3}, slope vs kmax {slope_k:.3}, censored {}",
            censored_n + censored_k
        ),
    ))
}

fn bound_arithmetic() -> tanlab::Result<Outcome> {
    let dense = nu_bound_quad(5, 100, 10.0, CorrelationStructure::Dense)?;
    let diag = nu_bound_quad(5, 100, 10.0, CorrelationStructure::Diagonal)?;
    let mut worst = 0f64;
    for i in 0..10 {
        for j in 0..10 {
            let m = 1 + i * 3;
            let n = m + 1 + j * 97;
            let kmax = 0.1 * 1.9f64.powi(j as i32 - i as i32 / 2);
            let structure = if (i + j) % 2 == 0 {
                CorrelationStructure::Dense
            } else {
                CorrelationStructure::Diagonal
            };
            let a = nu_bound_quad(m, n, kmax, structure)?;
            let b = nu_bound_quad_from_rl(m, n, kmax, structure)?;
            worst = worst.max((a - b).abs() / b);
        }
    }
    let pass = (dense - 6.5998e-3).abs() <= 1e-7 && (diag - 6.4327e-2).abs() <= 1e-6 && worst < 1e-12;
    Ok(outcome(
        pass,
        format!("dense {dense:.5e}, diagonal {diag:.5e}, route disagreement {worst:.1e}"),
    ))
}

fn theory_vs_empirical() -> tanlab::Result<Outcome> {
    let mut c = ExperimentConfig::defaults(Experiment::TheoryVsEmpirical);
    c.seed = SEED;
    c.n_grid = vec![100];
    c.c_grid = vec![0.4];
    let recs = run_theory_vs_empirical(&c)?;
    let mut theory: Vec<(f64, f64)> = recs
        .iter()
        .filter(|r| r.series == Series::Theoretical)
        .map(|r| (r.angle_deg, r.k))
        .collect();
    theory.sort_by(|a, b| a.0.total_cmp(&b.0));
    let kb: Vec<f64> = theory.iter().map(|p| p.1).collect();
    let empirical: Vec<f64> = recs
        .iter()
        .filter(|r| r.series == Series::Empirical)
        .map(|r| r.angle_deg)
        .collect();
    let smoothed = stats::moving_average(&empirical, 5);
    let pass = kb.len() >= 2
        && stats::is_non_increasing(&kb)
        && empirical.len() >= 2
        && stats::is_non_increasing(&smoothed);
    Ok(outcome(
        pass,
        format!(
            "{} bound points, K_bound {:.3e}..{:.3e}; empirical {:.3}..{:.3} deg",
            kb.len(),
            kb.first().copied().unwrap_or(f64::NAN),
            kb.last().copied().unwrap_or(f64::NAN),
            empirical.first().copied().unwrap_or(f64::NAN),
            empirical.last().copied().unwrap_or(f64::NAN),
        ),
    ))
}

fn main() -> ExitCode {
    let checks: [(&str, Check, Duration); 10] = [
        ("linear algebra contracts", linear_algebra, Duration::from_secs(30)),
        ("projection distance identity and angle limit", projection_identity, Duration::from_secs(60)),
        ("fourth moment closed form", fourth_moment, Duration::from_secs(10)),
        ("flat manifold exactness", flat_exactness, Duration::from_secs(10)),
        ("convergence in K below the width bound", convergence, Duration::from_secs(120)),
        ("angle-vs-K trends for all families", trends, Duration::from_secs(300)),
        ("tail bound soundness", tail_soundness, Duration::from_secs(180)),
        ("max-width scaling laws", scaling_laws, Duration::from_secs(600)),
        ("width bound arithmetic", bound_arithmetic, Duration::from_secs(10)),
        ("theory vs empirical monotonicity", theory_vs_empirical, Duration::from_secs(300)),
    ];
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let mut failed = 0;
    for (i, (name, check, budget)) in checks.iter().enumerate() {
        let id = i + 1;
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && took <= *budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] {id:>2}. {name}: {detail} ({:.1}s, budget {}s)",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
