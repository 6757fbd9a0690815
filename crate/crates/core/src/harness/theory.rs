use crate::bounds::{angle_bound, k_bounds, nu_bound_quad, nu_bound_smooth, smooth_terms, BoundParams, Regime};
use crate::error::Result;
use crate::manifold::estimate_cs;
use crate::par;
use crate::sampling::{embed_cloud, sample_cloud};

use super::{aggregate, angle_deg, cloud_seed, germ, ExperimentConfig, Series, TheoryRecord};

/// Predicted and measured angle against `K` at widths `ν = c·ν_bound_smooth`.
///
/// One germ (trial 0) is used per `(m, n, kmax)` so that `C_s` is estimated
/// once, on `[−ν_bq, ν_bq]^m`; trials vary only the cloud. For the quadratic
/// family `C_s = 0` and `ν_bound_smooth = √(s₁/s₂)·ν_bq`.
///
/// Each theoretical point pairs `angle_bound(τ)` with `⌈K_bound(τ)⌉`, using
/// `s₃ = s3_fraction · s3_bound`. A `c` whose width violates a precondition is
/// skipped and logged; so is a `τ` with `τ² + mσ_f² ≥ 1`.
pub fn run_theory_vs_empirical(cfg: &ExperimentConfig) -> Result<Vec<TheoryRecord>> {
    cfg.validate()?;
    let smooth = cfg.family.is_smooth();
    let regime = if smooth { Regime::Smooth } else { Regime::Quad };
    let mut out = Vec::new();
    for &m in &cfg.m_grid {
        let cseed = cloud_seed(cfg, m);
        for &n in &cfg.n_grid {
            for &kmax in &cfg.kmax_grid {
                let spec = germ(cfg, m, n, kmax, 0)?;
                let nu_bq = nu_bound_quad(m, n, kmax, cfg.structure)?;
                let cs = if smooth { estimate_cs(&spec, nu_bq, cfg.cs_grid_points)?.cs } else { 0.0 };
                log::info!("theory_vs_empirical: m={m} n={n} kmax={kmax} cs={cs:.4e}");
                let mut base = BoundParams::new(m, n, kmax, nu_bq, cfg.structure);
                base.cs = cs;
                base.s1 = cfg.s1;
                base.s2 = cfg.s2;
                base.p1 = cfg.p;
                base.p2 = cfg.p;
                base.p3 = cfg.p;
                let nu_bs = nu_bound_smooth(&base)?;
                for &c in &cfg.c_grid {
                    let nu = c * nu_bs;
                    let record = |series, tau, k: f64, angle_deg| TheoryRecord {
                        experiment: cfg.experiment,
                        family: cfg.family,
                        m,
                        n,
                        kmax,
                        structure: cfg.structure,
                        c,
                        gamma: nu / nu_bq,
                        nu,
                        cs,
                        series,
                        tau,
                        k,
                        angle_deg,
                    };
                    let mut theory = Vec::new();
                    let mut skip = None;
                    for &tau in &cfg.tau_grid {
                        let p = match (BoundParams { nu, tau, ..base }).with_s3_fraction(regime, cfg.s3_fraction) {
                            Ok(p) => p,
                            Err(e) => {
                                skip = Some(e);
                                break;
                            }
                        };
                        let sigma_f = if smooth {
                            match smooth_terms(&p) {
                                Ok(t) => t.sigma_f,
                                Err(e) => {
                                    skip = Some(e);
                                    break;
                                }
                            }
                        } else {
                            0.0
                        };
                        let bound = match angle_bound(tau, m, sigma_f) {
                            Ok(a) => a,
                            Err(e) => {
                                log::info!("c={c} tau={tau}: {e}; point skipped");
                                continue;
                            }
                        };
                        let k = k_bounds(&p)?.ceiling() as f64;
                        theory.push(record(Series::Theoretical, Some(tau), k, bound.to_degrees()));
                    }
                    if let Some(e) = skip {
                        log::warn!("m={m} n={n} kmax={kmax}: c={c} skipped: {e}");
                        continue;
                    }
                    out.extend(theory);

                    let k_max = *cfg.k_grid.last().expect("validated");
                    let per_trial: Vec<Vec<f64>> = par::try_map_range(cfg.execution, cfg.trials, |t| {
                        let x = embed_cloud(&spec, &sample_cloud(m, nu, k_max, cseed, t as u64)?)?;
                        cfg.k_grid
                            .iter()
                            .map(|&k| if k < m { Ok(f64::NAN) } else { angle_deg(&x.prefix(k)?, m) })
                            .collect()
                    })?;
                    for (ki, &k) in cfg.k_grid.iter().enumerate() {
                        if k < m {
                            continue;
                        }
                        let vals: Vec<f64> = per_trial.iter().map(|a| a[ki]).collect();
                        out.push(record(Series::Empirical, None, k as f64, aggregate(cfg, &vals)));
                    }
                }
            }
        }
    }
    Ok(out)
}
