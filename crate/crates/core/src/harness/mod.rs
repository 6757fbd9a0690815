//! Experiment drivers.
//!
//! Every experiment is a function of an [`ExperimentConfig`]. Random streams are
//! addressed by parameter values rather than loop positions:
//!
//! * the germ of trial `t` comes from `(seed, MANIFOLD, m, t)`. Spectra are drawn
//!   row by row and scaled by `kmax`, so germs for different `n` or `kmax`
//!   share their leading rows up to scale;
//! * the cloud of trial `t` comes from `(seed, CLOUD, m)` and trial index `t`,
//!   so clouds for different widths are rescalings and clouds for different `K`
//!   are prefixes of each other.
//!
//! Comparisons across `K`, `ν`, `n` and `kmax` therefore use common random
//! numbers, and output never depends on scheduling.

mod angle;
mod config;
mod records;
pub mod stats;
mod svg;
mod sweeps;
mod theory;
mod validate;

pub use angle::run_angle_vs_k;
pub use config::{float_grid, int_grid, Aggregate, Experiment, ExperimentConfig};
pub use records::{
    AngleRecord, ExperimentOutput, MaxNuRecord, MinKRecord, Series, TheoryRecord, TrialTag,
};
pub use svg::{chart, Chart, ChartSeries};
pub use sweeps::{run_max_nu_sweep, run_min_k_sweep};
pub use theory::run_theory_vs_empirical;
pub use validate::run_validate_bounds;

use crate::error::Result;
use crate::estimator::{local_pca_with, PcaRoute};
use crate::manifold::EmbeddingSpec;
use crate::rng::{self, tag};
use crate::sampling::DataMatrix;

/// Run whichever experiment `cfg` names.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    match cfg.experiment {
        Experiment::AngleVsK => run_angle_vs_k(cfg).map(ExperimentOutput::Angles),
        Experiment::TheoryVsEmpirical => run_theory_vs_empirical(cfg).map(ExperimentOutput::Theory),
        Experiment::MaxNuVsN | Experiment::MaxNuVsKmax => run_max_nu_sweep(cfg).map(ExperimentOutput::MaxNu),
        Experiment::MinKVsN | Experiment::MinKVsKmax => run_min_k_sweep(cfg).map(ExperimentOutput::MinK),
        Experiment::ValidateBounds => run_validate_bounds(cfg).map(ExperimentOutput::Validation),
    }
}

pub(crate) fn germ(cfg: &ExperimentConfig, m: usize, n: usize, kmax: f64, trial: usize) -> Result<EmbeddingSpec> {
    EmbeddingSpec::generate(
        cfg.family,
        m,
        n,
        kmax,
        rng::derive_seed(cfg.seed, &[tag::MANIFOLD, m as u64, trial as u64]),
    )
}

pub(crate) fn cloud_seed(cfg: &ExperimentConfig, m: usize) -> u64 {
    rng::derive_seed(cfg.seed, &[tag::CLOUD, m as u64])
}

pub(crate) fn angle_deg(x: &DataMatrix, m: usize) -> Result<f64> {
    let est = local_pca_with(x, m, PcaRoute::Partial)?;
    if !est.converged {
        log::warn!("subspace iteration did not converge; angle may be inaccurate");
    }
    Ok(est.angle_degrees())
}

pub(crate) fn aggregate(cfg: &ExperimentConfig, values: &[f64]) -> f64 {
    match cfg.aggregate {
        Aggregate::Mean => stats::mean(values),
        Aggregate::Median => stats::median(values),
    }
}
