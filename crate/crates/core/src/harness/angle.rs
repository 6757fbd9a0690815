use crate::bounds::nu_bound_quad;
use crate::error::Result;
use crate::par;
use crate::sampling::{embed_cloud, sample_cloud};

use super::{aggregate, angle_deg, cloud_seed, germ, AngleRecord, ExperimentConfig, TrialTag};

/// Angle against `K` at widths `ν = γ·ν_bq`, for every `(m, n, kmax, γ)`.
///
/// Rows come grouped by `(m, n, kmax, γ, K)`: one row per trial, then the
/// aggregate.
pub fn run_angle_vs_k(cfg: &ExperimentConfig) -> Result<Vec<AngleRecord>> {
    cfg.validate()?;
    let k_max = *cfg.k_grid.last().expect("validated");
    let mut out = Vec::new();
    for &m in &cfg.m_grid {
        let cseed = cloud_seed(cfg, m);
        for &n in &cfg.n_grid {
            for &kmax in &cfg.kmax_grid {
                let nu_bq = nu_bound_quad(m, n, kmax, cfg.structure)?;
                log::info!("angle_vs_k: m={m} n={n} kmax={kmax}");
                // per trial: angles[γ][K]
                let per_trial: Vec<Vec<Vec<f64>>> = par::try_map_range(cfg.execution, cfg.trials, |t| {
                    let spec = germ(cfg, m, n, kmax, t)?;
                    cfg.gamma
                        .iter()
                        .map(|g| {
                            let cloud = sample_cloud(m, g * nu_bq, k_max, cseed, t as u64)?;
                            let x = embed_cloud(&spec, &cloud)?;
                            cfg.k_grid
                                .iter()
                                .map(|&k| if k < m { Ok(f64::NAN) } else { angle_deg(&x.prefix(k)?, m) })
                                .collect::<Result<Vec<f64>>>()
                        })
                        .collect::<Result<Vec<_>>>()
                })?;
                for (gi, &gamma) in cfg.gamma.iter().enumerate() {
                    for (ki, &k) in cfg.k_grid.iter().enumerate() {
                        if k < m {
                            continue;
                        }
                        let base = AngleRecord {
                            experiment: cfg.experiment,
                            family: cfg.family,
                            m,
                            n,
                            kmax,
                            structure: cfg.structure,
                            gamma,
                            nu: gamma * nu_bq,
                            k,
                            trial: TrialTag::Aggregate,
                            angle_deg: 0.0,
                        };
                        let vals: Vec<f64> = per_trial.iter().map(|a| a[gi][ki]).collect();
                        for (t, &a) in vals.iter().enumerate() {
                            out.push(AngleRecord {
                                trial: TrialTag::Trial(t),
                                angle_deg: a,
                                ..base.clone()
                            });
                        }
                        out.push(AngleRecord {
                            angle_deg: aggregate(cfg, &vals),
                            ..base
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}
