use std::f64::consts::E;

use serde::Serialize;

use crate::bounds::CorrelationStructure;
use crate::error::{Error, Result};
use crate::manifold::Family;
use crate::par::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    AngleVsK,
    TheoryVsEmpirical,
    MaxNuVsN,
    MaxNuVsKmax,
    MinKVsN,
    MinKVsKmax,
    ValidateBounds,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::AngleVsK => "angle_vs_k",
            Experiment::TheoryVsEmpirical => "theory_vs_empirical",
            Experiment::MaxNuVsN => "max_nu_vs_n",
            Experiment::MaxNuVsKmax => "max_nu_vs_kmax",
            Experiment::MinKVsN => "min_k_vs_n",
            Experiment::MinKVsKmax => "min_k_vs_kmax",
            Experiment::ValidateBounds => "validate_bounds",
        }
    }
}

/// How per-trial angles are reduced to one value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregate {
    #[default]
    Mean,
    Median,
}

/// Everything an experiment needs. Grids are run as a cartesian product
/// `m × n × kmax` unless the experiment says otherwise.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub family: Family,
    pub m_grid: Vec<usize>,
    pub n_grid: Vec<usize>,
    pub kmax_grid: Vec<f64>,
    /// Width multipliers `ν = γ·ν_bq` (angle-vs-K, validation).
    pub gamma: Vec<f64>,
    /// Sample counts (angle-vs-K, empirical theory series, min-K search grid).
    pub k_grid: Vec<usize>,
    /// Fixed sample count of the max-ν sweeps.
    pub k_fixed: usize,
    pub trials: usize,
    pub theta_bound_deg: Vec<f64>,
    pub structure: CorrelationStructure,
    pub seed: u64,
    pub aggregate: Aggregate,
    /// Scale factors `c` of the theory-vs-empirical comparison.
    pub c_grid: Vec<f64>,
    pub tau_grid: Vec<f64>,
    pub s1: f64,
    pub s2: f64,
    pub p: f64,
    /// `s₃ = s3_fraction · s3_bound`.
    pub s3_fraction: f64,
    /// Max-ν sweep: start at `nu_start_factor · ν_bq`, multiply by `nu_decay`
    /// per step, give up after `max_steps`.
    pub nu_start_factor: f64,
    pub nu_decay: f64,
    pub max_steps: usize,
    /// Grid points per axis for the `C_s` scan when `m` is small.
    pub cs_grid_points: usize,
    /// Monte-Carlo reps of the tail-bound validation.
    pub reps: usize,
    /// Bernstein targets used to pick `s₃` in the validation.
    pub bernstein_targets: Vec<f64>,
    #[serde(skip)]
    pub execution: Execution,
}

/// Inclusive arithmetic grid `start, start+step, …, ≤ stop`.
pub fn float_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::invalid("grid", format!("bad grid {start}:{stop}:{step}")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    // multiply rather than accumulate so grid points stay exact decimals where possible
    Ok((0..count).map(|i| round12(start + step * i as f64)).collect())
}

fn round12(v: f64) -> f64 {
    (v * 1e12).round() / 1e12
}

/// Inclusive integer grid `start, start+step, …, ≤ stop`.
pub fn int_grid(start: usize, stop: usize, step: usize) -> Result<Vec<usize>> {
    if step == 0 || stop < start {
        return Err(Error::invalid("grid", format!("bad grid {start}:{stop}:{step}")));
    }
    Ok((start..=stop).step_by(step).collect())
}

impl ExperimentConfig {
    fn base(experiment: Experiment) -> Self {
        ExperimentConfig {
            experiment,
            family: Family::Quadratic,
            m_grid: vec![5],
            n_grid: vec![100],
            kmax_grid: vec![10.0],
            gamma: vec![0.5, 1.2, 2.0, 4.0],
            k_grid: (100..=2000).step_by(100).collect(),
            k_fixed: 2000,
            trials: 25,
            theta_bound_deg: vec![5.0],
            structure: CorrelationStructure::Dense,
            seed: 42,
            aggregate: Aggregate::Mean,
            c_grid: vec![0.2, 0.4, 0.6, 0.8],
            tau_grid: (1..=20).map(|i| i as f64 / 100.0).collect(),
            s1: 0.5,
            s2: 2.0 * E,
            p: 0.01,
            s3_fraction: 0.99,
            nu_start_factor: 3.0,
            nu_decay: 0.95,
            max_steps: 200,
            cs_grid_points: 41,
            reps: 500,
            bernstein_targets: vec![0.05, 0.3],
            execution: Execution::default(),
        }
    }

    /// Desk-scale defaults for each experiment.
    pub fn defaults(experiment: Experiment) -> Self {
        let mut c = Self::base(experiment);
        let kmax_sweep: Vec<f64> = (1..=20).map(|i| i as f64 * 0.5).collect();
        match experiment {
            Experiment::AngleVsK => c.n_grid = vec![100, 500, 1000],
            Experiment::TheoryVsEmpirical => c.n_grid = vec![100, 500, 1000],
            Experiment::MaxNuVsN => c.n_grid = (100..=1000).step_by(50).collect(),
            Experiment::MaxNuVsKmax => {
                c.n_grid = vec![100, 500, 1000];
                c.kmax_grid = kmax_sweep;
            }
            Experiment::MinKVsN => {
                c.m_grid = vec![5, 10, 15];
                c.n_grid = (100..=1000).step_by(100).collect();
                c.k_grid = (100..=10_000).step_by(100).collect();
            }
            Experiment::MinKVsKmax => {
                c.n_grid = vec![100, 500, 1000];
                c.kmax_grid = kmax_sweep;
                c.k_grid = (100..=10_000).step_by(100).collect();
            }
            Experiment::ValidateBounds => {
                c.gamma = vec![1.0];
                c.k_grid = vec![2000];
            }
        }
        c
    }

    /// Default `c` grid for the theory comparison of a family.
    pub fn default_c_grid(family: Family) -> Vec<f64> {
        if family.is_smooth() {
            vec![0.1, 0.2, 0.3, 0.4]
        } else {
            vec![0.2, 0.4, 0.6, 0.8]
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn increasing<T: PartialOrd + Copy>(name: &'static str, v: &[T]) -> Result<()> {
            if v.is_empty() {
                return Err(Error::invalid(name, "grid is empty"));
            }
            if v.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::invalid(name, "grid must be strictly increasing"));
            }
            Ok(())
        }
        increasing("m", &self.m_grid)?;
        increasing("n", &self.n_grid)?;
        increasing("kmax", &self.kmax_grid)?;
        increasing("K", &self.k_grid)?;
        increasing("theta_bound", &self.theta_bound_deg)?;
        if self.trials == 0 {
            return Err(Error::invalid("trials", "must be >= 1"));
        }
        if self.m_grid[0] == 0 {
            return Err(Error::invalid("m", "must be >= 1"));
        }
        let m_max = *self.m_grid.last().expect("non-empty");
        if self.n_grid[0] <= m_max {
            return Err(Error::invalid("n", format!("every n must exceed m = {m_max}")));
        }
        if self.kmax_grid.iter().any(|k| !(k.is_finite() && *k >= 0.0)) {
            return Err(Error::invalid("kmax", "values must be finite and >= 0"));
        }
        if self.gamma.is_empty() || self.gamma.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
            return Err(Error::invalid("gamma", "need at least one positive value"));
        }
        if self.theta_bound_deg.iter().any(|t| !(*t > 0.0 && *t <= 90.0)) {
            return Err(Error::invalid("theta_bound", "values must lie in (0, 90]"));
        }
        if !(self.nu_decay > 0.0 && self.nu_decay < 1.0) {
            return Err(Error::invalid("nu_decay", "must lie in (0, 1)"));
        }
        if self.k_fixed == 0 {
            return Err(Error::invalid("k_fixed", "must be >= 1"));
        }
        let needs_positive_kmax = matches!(
            self.experiment,
            Experiment::AngleVsK
                | Experiment::TheoryVsEmpirical
                | Experiment::MaxNuVsN
                | Experiment::MaxNuVsKmax
                | Experiment::ValidateBounds
        );
        if needs_positive_kmax && self.kmax_grid[0] <= 0.0 {
            return Err(Error::invalid(
                "kmax",
                "this experiment scales widths by nu_bound_quad, which needs kmax > 0",
            ));
        }
        if self.experiment == Experiment::MinKVsKmax && *self.kmax_grid.last().expect("non-empty") <= 0.0 {
            return Err(Error::invalid("kmax", "largest kmax must be > 0"));
        }
        Ok(())
    }
}
