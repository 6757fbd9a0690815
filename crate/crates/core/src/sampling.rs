//! Seeded uniform clouds in tangent coordinates and their embedded data matrices.
//!
//! A cloud for `(master_seed, trial_index)` is drawn from the stream
//! `rng::stream(master_seed, [CLOUD, trial_index])`, row by row. Two
//! consequences the harness relies on:
//!
//! * the first `K₁` rows of a `K₂`-point cloud (`K₁ < K₂`) are the `K₁`-point cloud;
//! * clouds of different widths with equal seeds are exact rescalings of each other.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::manifold::EmbeddingSpec;
use crate::numerics::Matrix;
use crate::rng::{self, tag};

/// `K` points of `[−ν, ν]^m`, stored row-major (`K × m`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleCloud {
    m: usize,
    nu: f64,
    coords: Vec<f64>,
    master_seed: u64,
    trial_index: u64,
}

impl SampleCloud {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.coords.len() / self.m
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn trial_index(&self) -> u64 {
        self.trial_index
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.m..(i + 1) * self.m]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.m)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The first `k` points.
    pub fn prefix(&self, k: usize) -> Result<SampleCloud> {
        if k == 0 || k > self.len() {
            return Err(Error::invalid("k", format!("prefix length {k} outside 1..={}", self.len())));
        }
        Ok(SampleCloud {
            coords: self.coords[..k * self.m].to_vec(),
            ..self.clone()
        })
    }

    /// Sample mean of `‖x‖₂⁴`.
    pub fn mean_norm4(&self) -> f64 {
        let s: f64 = self
            .points()
            .map(|p| {
                let r2: f64 = p.iter().map(|v| v * v).sum();
                r2 * r2
            })
            .sum();
        s / self.len() as f64
    }
}

/// Draw `k` points uniformly from `[−ν, ν]^m`.
pub fn sample_cloud(m: usize, nu: f64, k: usize, master_seed: u64, trial_index: u64) -> Result<SampleCloud> {
    if m == 0 {
        return Err(Error::invalid("m", "must be >= 1"));
    }
    if k == 0 {
        return Err(Error::invalid("K", "must be >= 1"));
    }
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::invalid("nu", format!("must be finite and >= 0, got {nu}")));
    }
    let mut s = rng::stream(master_seed, &[tag::CLOUD, trial_index]);
    let coords = (0..k * m).map(|_| rng::symmetric(&mut s, nu)).collect();
    Ok(SampleCloud {
        m,
        nu,
        coords,
        master_seed,
        trial_index,
    })
}

/// `n × K` matrix whose column `i` is the embedded point `i` (no centring).
#[derive(Clone, Debug, PartialEq)]
pub struct DataMatrix(Matrix);

impl DataMatrix {
    /// Wrap an arbitrary `n × K` matrix whose columns are samples.
    pub fn from_matrix(x: Matrix) -> Self {
        DataMatrix(x)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Ambient dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.0.rows()
    }

    /// Number of samples `K`.
    pub fn samples(&self) -> usize {
        self.0.cols()
    }

    /// The first `k` samples.
    pub fn prefix(&self, k: usize) -> Result<DataMatrix> {
        Ok(DataMatrix(self.0.col_block(0, k)?))
    }

    /// `(1/K) X Xᵀ`
    pub fn covariance(&self) -> Matrix {
        self.0.gram_rows().scaled(1.0 / self.samples() as f64)
    }
}

/// Embed every cloud point with `spec`.
pub fn embed_cloud(spec: &EmbeddingSpec, cloud: &SampleCloud) -> Result<DataMatrix> {
    if spec.m() != cloud.m() {
        return Err(Error::DimensionMismatch(format!(
            "cloud has m = {}, embedding has m = {}",
            cloud.m(),
            spec.m()
        )));
    }
    let (n, m, k) = (spec.n(), spec.m(), cloud.len());
    let mut x = Matrix::zeros(n, k);
    let mut normals = vec![0.0; n - m];
    let data = x.as_mut_slice();
    for (i, p) in cloud.points().enumerate() {
        for (j, v) in p.iter().enumerate() {
            data[j * k + i] = *v;
        }
        spec.normals_into(p, &mut normals);
        for (l, v) in normals.iter().enumerate() {
            data[(m + l) * k + i] = *v;
        }
    }
    Ok(DataMatrix(x))
}

/// Write clouds as CSV with header `trial,i,x_1,…,x_m` (`i` counts from 0).
pub fn write_cloud_csv<W: Write>(out: W, clouds: &[SampleCloud]) -> Result<()> {
    let m = clouds.first().map_or(0, SampleCloud::m);
    if clouds.iter().any(|c| c.m() != m) {
        return Err(Error::DimensionMismatch("clouds differ in m".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["trial".to_string(), "i".to_string()];
    header.extend((1..=m).map(|j| format!("x_{j}")));
    w.write_record(&header)?;
    for c in clouds {
        for (i, p) in c.points().enumerate() {
            let mut row = vec![c.trial_index().to_string(), i.to_string()];
            row.extend(p.iter().map(|v| v.to_string()));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}
