use std::io::Write;

use serde::{Serialize, Serializer};

use crate::bounds::CorrelationStructure;
use crate::concentration::ValidationResult;
use crate::error::Result;
use crate::manifold::Family;

use super::config::Experiment;

/// A trial index, or the aggregate over all trials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialTag {
    Trial(usize),
    Aggregate,
}

impl Serialize for TrialTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TrialTag::Trial(i) => s.serialize_u64(*i as u64),
            TrialTag::Aggregate => s.serialize_str("AGGREGATE"),
        }
    }
}

/// One angle measurement (or the aggregate of a group of them).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleRecord {
    pub experiment: Experiment,
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub kmax: f64,
    pub structure: CorrelationStructure,
    pub gamma: f64,
    pub nu: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub trial: TrialTag,
    pub angle_deg: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Series {
    Theoretical,
    Empirical,
}

/// A point of either series of the theory-vs-empirical comparison.
///
/// Theoretical points pair the angle bound at `tau` with the sample count
/// `⌈K_bound⌉`; empirical points pair a grid `K` with the aggregate angle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoryRecord {
    pub experiment: Experiment,
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub kmax: f64,
    pub structure: CorrelationStructure,
    pub c: f64,
    pub gamma: f64,
    pub nu: f64,
    pub cs: f64,
    pub series: Series,
    pub tau: Option<f64>,
    #[serde(rename = "K")]
    pub k: f64,
    pub angle_deg: f64,
}

/// Largest width (on the decaying schedule) whose aggregate angle passes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxNuRecord {
    pub experiment: Experiment,
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub kmax: f64,
    pub structure: CorrelationStructure,
    #[serde(rename = "K")]
    pub k: usize,
    pub theta_bound_deg: f64,
    pub nu_bound_quad: f64,
    /// The passing width, or the last width tried when censored.
    pub max_nu: f64,
    /// `max_nu / nu_bound_quad`
    pub gamma_ratio: f64,
    pub steps: usize,
    pub censored: bool,
    pub angle_deg: f64,
}

/// Smallest grid `K` whose aggregate angle passes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinKRecord {
    pub experiment: Experiment,
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub kmax: f64,
    pub structure: CorrelationStructure,
    pub nu: f64,
    pub theta_bound_deg: f64,
    /// Empty when censored.
    pub min_k: Option<usize>,
    pub censored: bool,
    /// Aggregate angle at `min_k`, or at the largest grid `K` when censored.
    pub angle_deg: f64,
}

/// Output of one experiment run.
#[derive(Clone, Debug)]
pub enum ExperimentOutput {
    Angles(Vec<AngleRecord>),
    Theory(Vec<TheoryRecord>),
    MaxNu(Vec<MaxNuRecord>),
    MinK(Vec<MinKRecord>),
    Validation(Vec<ValidationResult>),
}

impl ExperimentOutput {
    pub fn len(&self) -> usize {
        match self {
            ExperimentOutput::Angles(r) => r.len(),
            ExperimentOutput::Theory(r) => r.len(),
            ExperimentOutput::MaxNu(r) => r.len(),
            ExperimentOutput::MinK(r) => r.len(),
            ExperimentOutput::Validation(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// CSV with a header row, even when there are no records.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        match self {
            ExperimentOutput::Angles(r) => write_csv(out, r, ANGLE_HEADER),
            ExperimentOutput::Theory(r) => write_csv(out, r, THEORY_HEADER),
            ExperimentOutput::MaxNu(r) => write_csv(out, r, MAX_NU_HEADER),
            ExperimentOutput::MinK(r) => write_csv(out, r, MIN_K_HEADER),
            ExperimentOutput::Validation(r) => write_csv(out, r, VALIDATION_HEADER),
        }
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

const ANGLE_HEADER: &[&str] = &[
    "experiment", "family", "m", "n", "kmax", "structure", "gamma", "nu", "K", "trial", "angle_deg",
];
const THEORY_HEADER: &[&str] = &[
    "experiment", "family", "m", "n", "kmax", "structure", "c", "gamma", "nu", "cs", "series", "tau", "K",
    "angle_deg",
];
const MAX_NU_HEADER: &[&str] = &[
    "experiment", "family", "m", "n", "kmax", "structure", "K", "theta_bound_deg", "nu_bound_quad", "max_nu",
    "gamma_ratio", "steps", "censored", "angle_deg",
];
const MIN_K_HEADER: &[&str] = &[
    "experiment", "family", "m", "n", "kmax", "structure", "nu", "theta_bound_deg", "min_k", "censored",
    "angle_deg",
];
const VALIDATION_HEADER: &[&str] = &[
    "kind", "m", "n", "kmax", "nu", "K", "structure", "threshold", "theoretical", "empirical", "events", "reps",
    "seed",
];

fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T], header: &[&str]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
