use crate::bounds::nu_bound_quad;
use crate::concentration::{bernstein_threshold_for, validate_many, TailBoundQuery, TailKind, ValidationResult};
use crate::error::Result;

use super::ExperimentConfig;

/// Empirical frequency of each tail event against its bound, for every
/// `(m, n, kmax, γ, K)` with `ν = γ·ν_bq`.
///
/// The lower and upper tails use `s₁` and `s₂`; the Bernstein tail is queried
/// at the `s₃` values where its bound equals each of `bernstein_targets`.
pub fn run_validate_bounds(cfg: &ExperimentConfig) -> Result<Vec<ValidationResult>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &m in &cfg.m_grid {
        for &n in &cfg.n_grid {
            for &kmax in &cfg.kmax_grid {
                let nu_bq = nu_bound_quad(m, n, kmax, cfg.structure)?;
                for &gamma in &cfg.gamma {
                    let nu = gamma * nu_bq;
                    for &k in &cfg.k_grid {
                        log::info!("validate: m={m} n={n} kmax={kmax} nu={nu:.4e} K={k}");
                        let query = |kind, threshold| TailBoundQuery {
                            kind,
                            m,
                            n,
                            kmax,
                            nu,
                            k,
                            structure: cfg.structure,
                            threshold,
                        };
                        let mut queries = vec![
                            query(TailKind::ChernoffLower, cfg.s1),
                            query(TailKind::ChernoffUpper, cfg.s2),
                        ];
                        for &target in &cfg.bernstein_targets {
                            let s3 = bernstein_threshold_for(m, n, kmax, nu, k, target, cfg.structure)?;
                            queries.push(query(TailKind::Bernstein, s3));
                        }
                        out.extend(validate_many(&queries, cfg.reps, cfg.seed, cfg.execution)?);
                    }
                }
            }
        }
    }
    Ok(out)
}
