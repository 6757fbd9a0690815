//! Matrix concentration tail bounds for the covariance blocks of a quadratic
//! germ, and their Monte-Carlo validation.
//!
//! `M = (1/K) X Xᵀ` is partitioned as `[[A, B], [Bᵀ, D]]` with `A` the `m × m`
//! tangent block. The controlled events are
//!
//! | kind             | bad event                 | bound                                        |
//! |------------------|---------------------------|----------------------------------------------|
//! | `chernoff_lower` | `λ_m(M) ≤ s₁ν²/3`         | `(n−m+1) exp(−(1−s₁)²K/(6R_M))`              |
//! | `chernoff_upper` | `ρ(D) ≥ s₂RLν⁴`           | `(n−m) (e/s₂)^{s₂RLK/R_D}`                   |
//! | `bernstein`      | `‖B‖ > s₃`                | `n exp(−(s₃²/2)K/(ν⁶R_σ + R_Bν³s₃/3))`       |
//!
//! All bounds are clamped to `[0, 1]`.

use std::f64::consts::E;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::{curvature_l, r_b, r_m, r_sigma, CorrelationStructure};
use crate::error::{Error, Result};
use crate::manifold::{EmbeddingSpec, Family};
use crate::numerics::{operator_norm, sym_eig, Matrix};
use crate::par::{self, Execution};
use crate::rng::{self, tag};
use crate::sampling::{embed_cloud, sample_cloud, DataMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    ChernoffLower,
    ChernoffUpper,
    Bernstein,
}

impl TailKind {
    pub const ALL: [TailKind; 3] = [TailKind::ChernoffLower, TailKind::ChernoffUpper, TailKind::Bernstein];

    pub fn name(self) -> &'static str {
        match self {
            TailKind::ChernoffLower => "chernoff_lower",
            TailKind::ChernoffUpper => "chernoff_upper",
            TailKind::Bernstein => "bernstein",
        }
    }
}

fn check(m: usize, n: usize, kmax: f64, nu: f64, k: usize) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::invalid("m", format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    if !(kmax >= 0.0 && kmax.is_finite()) {
        return Err(Error::invalid("kmax", format!("must be >= 0, got {kmax}")));
    }
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::invalid("nu", format!("must be > 0, got {nu}")));
    }
    if k == 0 {
        return Err(Error::invalid("K", "must be >= 1"));
    }
    Ok(())
}

/// Bound on `P(λ_m(M) ≤ s₁ν²/3)`.
pub fn chernoff_lower_tail(m: usize, n: usize, kmax: f64, nu: f64, k: usize, s1: f64) -> Result<f64> {
    check(m, n, kmax, nu, k)?;
    if !(s1 > 0.0 && s1 < 1.0) {
        return Err(Error::invalid("s1", format!("must lie in (0, 1), got {s1}")));
    }
    let rm = r_m(m, n, kmax, nu);
    let v = (n - m + 1) as f64 * (-(1.0 - s1).powi(2) * k as f64 / (6.0 * rm)).exp();
    Ok(v.clamp(0.0, 1.0))
}

/// Bound on `P(ρ(D) ≥ s₂RLν⁴)`.
///
/// The exponent `s₂RLK/R_D` does not depend on `κ` or `ν` (`RL/R_D =
/// R(5m+4)/(45m(n−m))`), so it is evaluated in that reduced form.
pub fn chernoff_upper_tail(
    m: usize,
    n: usize,
    kmax: f64,
    nu: f64,
    k: usize,
    s2: f64,
    structure: CorrelationStructure,
) -> Result<f64> {
    check(m, n, kmax, nu, k)?;
    if !(s2 > E && s2.is_finite()) {
        return Err(Error::invalid("s2", format!("must exceed e, got {s2}")));
    }
    let mf = m as f64;
    let rl_over_rd = structure.r(m, n) * (5.0 * mf + 4.0) / (45.0 * mf * (n - m) as f64);
    let exponent = s2 * rl_over_rd * k as f64;
    let v = (n - m) as f64 * (exponent * (E / s2).ln()).exp();
    Ok(v.clamp(0.0, 1.0))
}

/// Bound on `P(‖B‖ > s₃)`.
pub fn bernstein_tail(
    m: usize,
    n: usize,
    kmax: f64,
    nu: f64,
    k: usize,
    s3: f64,
    structure: CorrelationStructure,
) -> Result<f64> {
    check(m, n, kmax, nu, k)?;
    if !(s3 > 0.0 && s3.is_finite()) {
        return Err(Error::invalid("s3", format!("must be > 0, got {s3}")));
    }
    let nu3 = nu.powi(3);
    let den = nu3 * nu3 * r_sigma(m, n, kmax, structure) + r_b(m, n, kmax) * nu3 * s3 / 3.0;
    if den == 0.0 {
        // B is identically zero
        return Ok(0.0);
    }
    let v = n as f64 * (-(s3 * s3 / 2.0) * k as f64 / den).exp();
    Ok(v.clamp(0.0, 1.0))
}

/// `s₃` at which the Bernstein bound equals `target` (inverse of
/// [`bernstein_tail`] before clamping). Requires `0 < target < n`.
pub fn bernstein_threshold_for(
    m: usize,
    n: usize,
    kmax: f64,
    nu: f64,
    k: usize,
    target: f64,
    structure: CorrelationStructure,
) -> Result<f64> {
    check(m, n, kmax, nu, k)?;
    if !(target > 0.0 && target < n as f64) {
        return Err(Error::invalid("target", format!("must lie in (0, n), got {target}")));
    }
    // (s²/2)K = c (a + b s) with c = ln(n/target): solve the quadratic in s
    let c = (n as f64 / target).ln();
    let nu3 = nu.powi(3);
    let a = nu3 * nu3 * r_sigma(m, n, kmax, structure);
    let b = r_b(m, n, kmax) * nu3 / 3.0;
    let kf = k as f64;
    let s = (c * b + ((c * b).powi(2) + 2.0 * kf * c * a).sqrt()) / kf;
    Ok(s)
}

/// One validation request.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailBoundQuery {
    pub kind: TailKind,
    pub m: usize,
    pub n: usize,
    pub kmax: f64,
    pub nu: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub structure: CorrelationStructure,
    /// `s₁`, `s₂` or `s₃` according to `kind`.
    pub threshold: f64,
}

impl TailBoundQuery {
    pub fn theoretical_bound(&self) -> Result<f64> {
        let q = self;
        match q.kind {
            TailKind::ChernoffLower => chernoff_lower_tail(q.m, q.n, q.kmax, q.nu, q.k, q.threshold),
            TailKind::ChernoffUpper => chernoff_upper_tail(q.m, q.n, q.kmax, q.nu, q.k, q.threshold, q.structure),
            TailKind::Bernstein => bernstein_tail(q.m, q.n, q.kmax, q.nu, q.k, q.threshold, q.structure),
        }
    }

    /// The eigenvalue / norm level that defines the bad event.
    fn event_level(&self) -> f64 {
        let nu2 = self.nu * self.nu;
        match self.kind {
            TailKind::ChernoffLower => self.threshold * nu2 / 3.0,
            TailKind::ChernoffUpper => {
                self.threshold * self.structure.r(self.m, self.n) * curvature_l(self.m, self.kmax) * nu2 * nu2
            }
            TailKind::Bernstein => self.threshold,
        }
    }
}

/// One CSV row of a validation run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ValidationResult {
    pub kind: TailKind,
    pub m: usize,
    pub n: usize,
    pub kmax: f64,
    pub nu: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub structure: CorrelationStructure,
    pub threshold: f64,
    pub theoretical: f64,
    pub empirical: f64,
    pub events: usize,
    pub reps: usize,
    pub seed: u64,
}

impl ValidationResult {
    /// `empirical ≤ theoretical + 3√(b(1−b)/reps)`
    pub fn is_sound(&self) -> bool {
        let b = self.theoretical;
        self.empirical <= b + 3.0 * (b * (1.0 - b) / self.reps as f64).sqrt()
    }
}

/// Blocks of `M = (1/K) X Xᵀ` and the statistics the tail events use.
#[derive(Clone, Debug)]
pub struct CovarianceBlocks {
    pub a: Matrix,
    pub b: Matrix,
    pub d: Matrix,
    /// Eigenvalues of the full `M`, descending.
    pub eigenvalues: Vec<f64>,
}

impl CovarianceBlocks {
    /// `λ_m(M)`
    pub fn lambda_m(&self) -> f64 {
        self.eigenvalues[self.a.rows() - 1]
    }

    /// Largest eigenvalue of the positive semidefinite block `D`.
    pub fn rho_d(&self) -> Result<f64> {
        Ok(sym_eig(&self.d)?.eigenvalues[0].max(0.0))
    }

    /// Largest singular value of `B`.
    pub fn b_norm(&self) -> Result<f64> {
        operator_norm(&self.b)
    }

    /// Reassemble `M` from its blocks.
    pub fn assemble(&self) -> Matrix {
        let m = self.a.rows();
        let n = m + self.d.rows();
        Matrix::from_fn(n, n, |i, j| match (i < m, j < m) {
            (true, true) => self.a[(i, j)],
            (true, false) => self.b[(i, j - m)],
            (false, true) => self.b[(j, i - m)],
            (false, false) => self.d[(i - m, j - m)],
        })
    }
}

pub fn covariance_blocks(x: &DataMatrix, m: usize) -> Result<CovarianceBlocks> {
    let n = x.ambient_dim();
    if m == 0 || m >= n {
        return Err(Error::invalid("m", format!("need 1 <= m < n = {n}, got {m}")));
    }
    let cov = x.covariance();
    let eigenvalues = sym_eig(&cov)?.eigenvalues;
    let a = Matrix::from_fn(m, m, |i, j| cov[(i, j)]);
    let b = Matrix::from_fn(m, n - m, |i, j| cov[(i, m + j)]);
    let d = Matrix::from_fn(n - m, n - m, |i, j| cov[(m + i, m + j)]);
    Ok(CovarianceBlocks { a, b, d, eigenvalues })
}

/// Frequency of the query's bad event over `reps` independent quadratic germs
/// and clouds (rep `r` uses manifold and cloud streams indexed by `r`).
pub fn validate_tail_bounds(q: &TailBoundQuery, reps: usize, seed: u64, exec: Execution) -> Result<ValidationResult> {
    Ok(validate_many(std::slice::from_ref(q), reps, seed, exec)?.remove(0))
}

/// Validate several queries on one shared set of reps. Queries must agree on
/// `(m, n, kmax, nu, K)`.
pub fn validate_many(
    queries: &[TailBoundQuery],
    reps: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<ValidationResult>> {
    let q0 = queries
        .first()
        .ok_or_else(|| Error::invalid("queries", "need at least one query"))?;
    if reps < 100 {
        return Err(Error::invalid("reps", format!("need at least 100, got {reps}")));
    }
    if queries
        .iter()
        .any(|q| (q.m, q.n, q.k) != (q0.m, q0.n, q0.k) || q.kmax != q0.kmax || q.nu != q0.nu)
    {
        return Err(Error::invalid("queries", "ensemble parameters must agree"));
    }
    let theoretical: Vec<f64> = queries.iter().map(|q| q.theoretical_bound()).collect::<Result<_>>()?;
    let levels: Vec<f64> = queries.iter().map(|q| q.event_level()).collect();
    let need_d = queries.iter().any(|q| q.kind == TailKind::ChernoffUpper);
    let need_b = queries.iter().any(|q| q.kind == TailKind::Bernstein);

    let fired: Vec<Vec<bool>> = par::try_map_range(exec, reps, |r| -> Result<Vec<bool>> {
        let r = r as u64;
        let spec = EmbeddingSpec::generate(
            Family::Quadratic,
            q0.m,
            q0.n,
            q0.kmax,
            rng::derive_seed(seed, &[tag::MANIFOLD, r]),
        )?;
        let cloud = sample_cloud(q0.m, q0.nu, q0.k, seed, r)?;
        let blocks = covariance_blocks(&embed_cloud(&spec, &cloud)?, q0.m)?;
        let rho = if need_d { blocks.rho_d()? } else { 0.0 };
        let bn = if need_b { blocks.b_norm()? } else { 0.0 };
        Ok(queries
            .iter()
            .zip(&levels)
            .map(|(q, &level)| match q.kind {
                TailKind::ChernoffLower => blocks.lambda_m() <= level,
                // a zero block cannot exceed the (then zero) level
                TailKind::ChernoffUpper => rho > 0.0 && rho >= level,
                TailKind::Bernstein => bn > level,
            })
            .collect())
    })?;

    Ok(queries
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let events = fired.iter().filter(|f| f[i]).count();
            ValidationResult {
                kind: q.kind,
                m: q.m,
                n: q.n,
                kmax: q.kmax,
                nu: q.nu,
                k: q.k,
                structure: q.structure,
                threshold: q.threshold,
                theoretical: theoretical[i],
                empirical: events as f64 / reps as f64,
                events,
                reps,
                seed,
            }
        })
        .collect())
}

/// Write results as CSV with a header row.
pub fn write_validation_csv<W: Write>(out: W, results: &[ValidationResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::nu_bound_quad;

    fn nu_bq() -> f64 {
        nu_bound_quad(5, 100, 10.0, CorrelationStructure::Dense).unwrap()
    }

    #[test]
    fn lower_tail_reference_point() {
        let nu = nu_bq();
        let v = chernoff_lower_tail(5, 100, 10.0, nu, 2000, 0.5).unwrap();
        let rm = r_m(5, 100, 10.0, nu);
        assert!((v - 96.0 * (-500.0 / (6.0 * rm)).exp()).abs() < 1e-15);
        assert!((v - 1.6e-3).abs() < 1e-4);
        assert_eq!(chernoff_lower_tail(5, 100, 10.0, nu, 1, 0.999).unwrap(), 1.0);
    }

    #[test]
    fn upper_tail_matches_unreduced_form() {
        let nu = nu_bq();
        let v = chernoff_upper_tail(5, 100, 10.0, nu, 500, 2.0 * E, CorrelationStructure::Dense).unwrap();
        let rl = 95.0 * curvature_l(5, 10.0);
        let rd = crate::bounds::r_d(5, 100, 10.0);
        let direct = (95.0 * (E / (2.0 * E)).powf(2.0 * E * rl * 500.0 / rd)).min(1.0);
        assert!((v - direct).abs() <= 1e-12 * direct);
        assert!(chernoff_upper_tail(5, 100, 10.0, nu, 500, E, CorrelationStructure::Dense).is_err());
        let later = chernoff_upper_tail(5, 100, 10.0, nu, 1000, 2.0 * E, CorrelationStructure::Dense).unwrap();
        assert!(later < v);
    }

    #[test]
    fn bernstein_inverse() {
        let nu = nu_bq();
        for target in [0.05, 0.3] {
            let s3 = bernstein_threshold_for(5, 100, 10.0, nu, 2000, target, CorrelationStructure::Dense).unwrap();
            let b = bernstein_tail(5, 100, 10.0, nu, 2000, s3, CorrelationStructure::Dense).unwrap();
            assert!((b - target).abs() < 1e-12);
        }
        assert_eq!(bernstein_tail(5, 100, 0.0, nu, 10, 0.1, CorrelationStructure::Dense).unwrap(), 0.0);
    }

    #[test]
    fn blocks_reassemble() {
        let spec = EmbeddingSpec::generate(Family::Quadratic, 2, 6, 3.0, 1).unwrap();
        let cloud = sample_cloud(2, 0.4, 50, 1, 0).unwrap();
        let x = embed_cloud(&spec, &cloud).unwrap();
        let b = covariance_blocks(&x, 2).unwrap();
        assert_eq!(b.assemble(), x.covariance());
    }

    #[test]
    fn flat_ensemble_never_fires_upper_or_bernstein() {
        let base = TailBoundQuery {
            kind: TailKind::ChernoffUpper,
            m: 2,
            n: 6,
            kmax: 0.0,
            nu: 0.1,
            k: 20,
            structure: CorrelationStructure::Dense,
            threshold: 2.0 * E,
        };
        let bern = TailBoundQuery {
            kind: TailKind::Bernstein,
            threshold: 1e-9,
            ..base
        };
        let out = validate_many(&[base, bern], 100, 3, Execution::Sequential).unwrap();
        assert!(out.iter().all(|r| r.events == 0 && r.empirical == 0.0));
    }
}
