use crate::bounds::nu_bound_quad;
use crate::error::Result;
use crate::manifold::EmbeddingSpec;
use crate::par;
use crate::sampling::{embed_cloud, sample_cloud};

use super::{aggregate, angle_deg, cloud_seed, germ, Experiment, ExperimentConfig, MaxNuRecord, MinKRecord};

fn trial_angles(
    cfg: &ExperimentConfig,
    specs: &[EmbeddingSpec],
    cseed: u64,
    nu: f64,
    k: usize,
) -> Result<f64> {
    let m = specs[0].m();
    let angles = par::try_map_range(cfg.execution, specs.len(), |t| {
        angle_deg(&embed_cloud(&specs[t], &sample_cloud(m, nu, k, cseed, t as u64)?)?, m)
    })?;
    Ok(aggregate(cfg, &angles))
}

fn germs(cfg: &ExperimentConfig, m: usize, n: usize, kmax: f64) -> Result<Vec<EmbeddingSpec>> {
    (0..cfg.trials).map(|t| germ(cfg, m, n, kmax, t)).collect()
}

/// Largest width passing each angle threshold, for every `(m, n, kmax)`.
///
/// The width starts at `nu_start_factor · ν_bq` and shrinks by `nu_decay` per
/// step; the first width whose aggregate angle is below `θ` is reported. Every
/// step reuses the same germs and unit clouds. After `max_steps` the threshold is
/// reported censored at the last width tried.
pub fn run_max_nu_sweep(cfg: &ExperimentConfig) -> Result<Vec<MaxNuRecord>> {
    cfg.validate()?;
    let k = cfg.k_fixed;
    let mut out = Vec::new();
    for &m in &cfg.m_grid {
        let cseed = cloud_seed(cfg, m);
        for &n in &cfg.n_grid {
            for &kmax in &cfg.kmax_grid {
                log::info!("max_nu: m={m} n={n} kmax={kmax}");
                let nu_bq = nu_bound_quad(m, n, kmax, cfg.structure)?;
                let specs = germs(cfg, m, n, kmax)?;
                let mut found: Vec<Option<(f64, usize, f64)>> = vec![None; cfg.theta_bound_deg.len()];
                let mut nu = cfg.nu_start_factor * nu_bq;
                let mut last = (nu, f64::NAN);
                for step in 1..=cfg.max_steps {
                    let a = trial_angles(cfg, &specs, cseed, nu, k)?;
                    last = (nu, a);
                    for (slot, &theta) in found.iter_mut().zip(&cfg.theta_bound_deg) {
                        if slot.is_none() && a < theta {
                            *slot = Some((nu, step, a));
                        }
                    }
                    if found.iter().all(Option::is_some) {
                        break;
                    }
                    nu *= cfg.nu_decay;
                }
                for (slot, &theta) in found.iter().zip(&cfg.theta_bound_deg) {
                    let (max_nu, steps, angle, censored) = match *slot {
                        Some((v, s, a)) => (v, s, a, false),
                        None => (last.0, cfg.max_steps, last.1, true),
                    };
                    out.push(MaxNuRecord {
                        experiment: cfg.experiment,
                        family: cfg.family,
                        m,
                        n,
                        kmax,
                        structure: cfg.structure,
                        k,
                        theta_bound_deg: theta,
                        nu_bound_quad: nu_bq,
                        max_nu,
                        gamma_ratio: max_nu / nu_bq,
                        steps,
                        censored,
                        angle_deg: angle,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Smallest grid `K` passing each angle threshold, for every `(m, n, kmax)`.
///
/// The width is frozen across the swept axis: `ν = ν_bq(m, n_max, kmax)` for
/// [`Experiment::MinKVsN`] and `ν = ν_bq(m, n, kmax_max)` otherwise. A flat
/// germ (`kmax = 0`) under the `n` sweep uses `ν = 1`.
pub fn run_min_k_sweep(cfg: &ExperimentConfig) -> Result<Vec<MinKRecord>> {
    cfg.validate()?;
    let n_max = *cfg.n_grid.last().expect("validated");
    let kmax_max = *cfg.kmax_grid.last().expect("validated");
    let mut out = Vec::new();
    for &m in &cfg.m_grid {
        let cseed = cloud_seed(cfg, m);
        for &n in &cfg.n_grid {
            for &kmax in &cfg.kmax_grid {
                let nu = match cfg.experiment {
                    Experiment::MinKVsN if kmax > 0.0 => nu_bound_quad(m, n_max, kmax, cfg.structure)?,
                    Experiment::MinKVsN => 1.0,
                    _ => nu_bound_quad(m, n, kmax_max, cfg.structure)?,
                };
                log::info!("min_k: m={m} n={n} kmax={kmax} nu={nu:.4e}");
                let specs = germs(cfg, m, n, kmax)?;
                let mut found: Vec<Option<(usize, f64)>> = vec![None; cfg.theta_bound_deg.len()];
                let mut last = f64::NAN;
                for &k in cfg.k_grid.iter().filter(|&&k| k >= m) {
                    let a = trial_angles(cfg, &specs, cseed, nu, k)?;
                    last = a;
                    for (slot, &theta) in found.iter_mut().zip(&cfg.theta_bound_deg) {
                        if slot.is_none() && a < theta {
                            *slot = Some((k, a));
                        }
                    }
                    if found.iter().all(Option::is_some) {
                        break;
                    }
                }
                for (slot, &theta) in found.iter().zip(&cfg.theta_bound_deg) {
                    out.push(MinKRecord {
                        experiment: cfg.experiment,
                        family: cfg.family,
                        m,
                        n,
                        kmax,
                        structure: cfg.structure,
                        nu,
                        theta_bound_deg: theta,
                        min_k: slot.map(|s| s.0),
                        censored: slot.is_none(),
                        angle_deg: slot.map_or(last, |s| s.1),
                    });
                }
            }
        }
    }
    Ok(out)
}
