//! Closed-form sampling-width, sampling-density and angle bounds.
//!
//! Notation: `L = m(5m+4)κ²/180` with `κ = |K_max|`, and `R = n − m` for a dense
//! correlation matrix `D` or `R = 1` for a diagonal one. All logarithms are
//! natural.
//!
//! The quadratic regime admits widths `ν < ν_bq = 1/√(3RL)`. With finite samples
//! the three failure events
//!
//! * `λ_m(M) ≤ s₁ν²/3` (Chernoff, lower tail),
//! * `ρ(D̂) ≥ s₂RLν⁴` (Chernoff, upper tail),
//! * `‖B̂‖ > s₃` (rectangular Bernstein)
//!
//! each have probability below `p_i` once `K > K_i`. A curvature remainder
//! `|R_l(x)| ≤ C_s‖x‖³` perturbs the covariance, which adds a bias term `σ`
//! to the angle bound and tightens the width bound to `ν_bound_smooth`.
//!
//! A sparse `D` sits between the dense and diagonal regimes and is not modelled.

use std::f64::consts::E;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifold::{quadratic_part, EmbeddingSpec};
use crate::numerics::{spectral_radius, Matrix};
use crate::sampling::sample_cloud;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationStructure {
    #[default]
    Dense,
    Diagonal,
}

impl CorrelationStructure {
    /// `R`: `n − m` when dense, 1 when diagonal.
    pub fn r(self, m: usize, n: usize) -> f64 {
        match self {
            CorrelationStructure::Dense => (n - m) as f64,
            CorrelationStructure::Diagonal => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CorrelationStructure::Dense => "dense",
            CorrelationStructure::Diagonal => "diagonal",
        }
    }
}

impl std::str::FromStr for CorrelationStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(CorrelationStructure::Dense),
            "diagonal" => Ok(CorrelationStructure::Diagonal),
            _ => Err(Error::invalid("structure", format!("expected dense or diagonal, got `{s}`"))),
        }
    }
}

impl std::fmt::Display for CorrelationStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which `s₃` bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Quad,
    Smooth,
}

/// Parameter point for the finite-sample bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub m: usize,
    pub n: usize,
    pub kmax: f64,
    pub nu: f64,
    pub cs: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub tau: f64,
    pub structure: CorrelationStructure,
}

impl BoundParams {
    /// `s₁ = 0.5`, `s₂ = 2e`, `p_i = 0.01`, `τ = 0.1`, `C_s = 0` and `s₃ = 1`
    /// (replace it, e.g. with [`BoundParams::with_s3_fraction`]).
    pub fn new(m: usize, n: usize, kmax: f64, nu: f64, structure: CorrelationStructure) -> Self {
        BoundParams {
            m,
            n,
            kmax,
            nu,
            cs: 0.0,
            s1: 0.5,
            s2: 2.0 * E,
            s3: 1.0,
            p1: 0.01,
            p2: 0.01,
            p3: 0.01,
            tau: 0.1,
            structure,
        }
    }

    /// Set `s₃ = fraction · s3_bound(regime)`.
    pub fn with_s3_fraction(mut self, regime: Regime, fraction: f64) -> Result<Self> {
        self.s3 = fraction * s3_bound(&self, regime)?;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        dims(self.m, self.n)?;
        let open_unit = |name: &'static str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(Error::invalid(name, format!("must lie in (0, 1), got {v}")))
            }
        };
        open_unit("s1", self.s1)?;
        open_unit("p1", self.p1)?;
        open_unit("p2", self.p2)?;
        open_unit("p3", self.p3)?;
        open_unit("tau", self.tau)?;
        if !(self.s2 > E && self.s2.is_finite()) {
            return Err(Error::invalid("s2", format!("must exceed e, got {}", self.s2)));
        }
        if !(self.s3 > 0.0 && self.s3.is_finite()) {
            return Err(Error::invalid("s3", format!("must be > 0, got {}", self.s3)));
        }
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::invalid("nu", format!("must be > 0, got {}", self.nu)));
        }
        if !(self.kmax >= 0.0 && self.kmax.is_finite()) {
            return Err(Error::invalid("kmax", format!("must be >= 0, got {}", self.kmax)));
        }
        if !(self.cs >= 0.0 && self.cs.is_finite()) {
            return Err(Error::invalid("cs", format!("must be >= 0, got {}", self.cs)));
        }
        Ok(())
    }

    fn r(&self) -> f64 {
        self.structure.r(self.m, self.n)
    }

    fn rl(&self) -> f64 {
        self.r() * curvature_l(self.m, self.kmax)
    }

    /// `s₁ν²/3 − s₂RLν⁴`
    fn finite_gap(&self) -> f64 {
        let nu2 = self.nu * self.nu;
        self.s1 * nu2 / 3.0 - self.s2 * self.rl() * nu2 * nu2
    }
}

fn dims(m: usize, n: usize) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::invalid("m", format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    Ok(())
}

fn positive_kmax(kmax: f64) -> Result<()> {
    if kmax > 0.0 && kmax.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(
            "kmax",
            format!("must be > 0 (a flat manifold admits any width), got {kmax}"),
        ))
    }
}

/// `L = m(5m+4)κ²/180`; `RLν⁴` bounds every `|[D]_{l,k}|`.
pub fn curvature_l(m: usize, kmax: f64) -> f64 {
    let m = m as f64;
    m * (5.0 * m + 4.0) * kmax * kmax / 180.0
}

/// Width bound of the quadratic regime as an explicit radical:
/// `√(60/(m(n−m)(5m+4)κ²))` (dense) or `√(60/(m(5m+4)κ²))` (diagonal).
pub fn nu_bound_quad(m: usize, n: usize, kmax: f64, structure: CorrelationStructure) -> Result<f64> {
    dims(m, n)?;
    positive_kmax(kmax)?;
    let mf = m as f64;
    let base = mf * (5.0 * mf + 4.0) * kmax * kmax;
    Ok(match structure {
        CorrelationStructure::Dense => (60.0 / (base * (n - m) as f64)).sqrt(),
        CorrelationStructure::Diagonal => (60.0 / base).sqrt(),
    })
}

/// The same bound as `1/√(3RL)`.
pub fn nu_bound_quad_from_rl(m: usize, n: usize, kmax: f64, structure: CorrelationStructure) -> Result<f64> {
    dims(m, n)?;
    positive_kmax(kmax)?;
    Ok(1.0 / (3.0 * structure.r(m, n) * curvature_l(m, kmax)).sqrt())
}

/// Monte-Carlo estimate of `D = E[q qᵀ]` with `q = (q_1(x), …, q_{n−m}(x))`.
#[derive(Clone, Debug)]
pub struct QuadraticGram {
    pub d: Matrix,
    pub spectral_radius: f64,
}

pub fn expected_quadratic_gram(spec: &EmbeddingSpec, nu: f64, mc_samples: usize, seed: u64) -> Result<QuadraticGram> {
    if mc_samples < 1000 {
        return Err(Error::invalid("mc_samples", "need at least 1000"));
    }
    let p = spec.n() - spec.m();
    let cloud = sample_cloud(spec.m(), nu, mc_samples, seed, 0)?;
    let mut acc = vec![0.0; p * p];
    for x in cloud.points() {
        let q = quadratic_part(spec, x)?;
        for l in 0..p {
            if q[l] == 0.0 {
                continue;
            }
            for k in l..p {
                acc[l * p + k] += q[l] * q[k];
            }
        }
    }
    let inv = 1.0 / mc_samples as f64;
    let d = Matrix::from_fn(p, p, |i, j| {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        acc[a * p + b] * inv
    });
    let rho = spectral_radius(&d)?;
    Ok(QuadraticGram { d, spectral_radius: rho })
}

/// `R_M = m + ¼(n−m)m²ν²κ²`
pub fn r_m(m: usize, n: usize, kmax: f64, nu: f64) -> f64 {
    let mf = m as f64;
    mf + 0.25 * (n - m) as f64 * mf * mf * nu * nu * kmax * kmax
}

/// `R_D = ¼(n−m)m²κ²`
pub fn r_d(m: usize, n: usize, kmax: f64) -> f64 {
    let mf = m as f64;
    0.25 * (n - m) as f64 * mf * mf * kmax * kmax
}

/// `R_σ = (m²κ²/12)·max{n−m, R(5m+4)/15}`
pub fn r_sigma(m: usize, n: usize, kmax: f64, structure: CorrelationStructure) -> f64 {
    let mf = m as f64;
    let r = structure.r(m, n);
    mf * mf * kmax * kmax / 12.0 * ((n - m) as f64).max(r * (5.0 * mf + 4.0) / 15.0)
}

/// `R_B = ½m^{3/2}√(n−m)κ`
pub fn r_b(m: usize, n: usize, kmax: f64) -> f64 {
    0.5 * (m as f64).powf(1.5) * ((n - m) as f64).sqrt() * kmax
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KBounds {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k_bound: f64,
}

impl KBounds {
    /// Smallest integer sample count exceeding every bound.
    pub fn ceiling(&self) -> u64 {
        self.k_bound.ceil().max(1.0) as u64
    }
}

/// Sample counts beyond which each failure event has probability below `p_i`.
pub fn k_bounds(p: &BoundParams) -> Result<KBounds> {
    p.validate()?;
    positive_kmax(p.kmax)?;
    let (m, n) = (p.m, p.n);
    let nm = (n - m) as f64;
    let k1 = 6.0 * r_m(m, n, p.kmax, p.nu) / (1.0 - p.s1).powi(2) * ((nm + 1.0) / p.p1).ln();
    let k2 = r_d(m, n, p.kmax) / (p.s2 * p.rl()) * (nm / p.p2).ln() / (p.s2 / E).ln();
    let nu3 = p.nu.powi(3);
    let k3 = (nu3 * nu3 * r_sigma(m, n, p.kmax, p.structure) + r_b(m, n, p.kmax) * nu3 * p.s3 / 3.0)
        / (p.s3 * p.s3 / 2.0)
        * (n as f64 / p.p3).ln();
    Ok(KBounds {
        k1,
        k2,
        k3,
        k_bound: k1.max(k2).max(k3),
    })
}

/// Terms of the smooth (non-quadratic) regime.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SmoothTerms {
    /// `δ(ν) = C_s m^{3/2} ν³`
    pub delta_nu: f64,
    /// `√(m(n−m)) C_s m^{3/2} ν⁴`
    pub b1_fbound: f64,
    /// `(n−m) C_s m^{5/2} ν⁵ (C_s m^{1/2} ν + κ)`
    pub d1_fbound: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub beta4: f64,
    pub alpha: f64,
    pub nu_bound_smooth: f64,
    pub sigma_inf: f64,
    pub sigma_f: f64,
}

/// Smooth-regime terms where the width-dependent ones may be undefined.
#[derive(Clone, Copy, Debug)]
struct SmoothRaw {
    delta_nu: f64,
    b1: f64,
    d1: f64,
    beta2: f64,
    beta3: f64,
    beta4: f64,
    alpha: f64,
    nu_bound_smooth: f64,
    sigma_inf: Option<f64>,
    sigma_f: Option<f64>,
}

fn smooth_raw(p: &BoundParams) -> Result<SmoothRaw> {
    p.validate()?;
    positive_kmax(p.kmax)?;
    let (mf, nm) = (p.m as f64, (p.n - p.m) as f64);
    let (cs, nu, kmax) = (p.cs, p.nu, p.kmax);
    let rl = p.rl();

    let delta_nu = cs * mf.powf(1.5) * nu.powi(3);
    let b1 = (mf * nm).sqrt() * cs * mf.powf(1.5) * nu.powi(4);
    let d1 = nm * cs * mf.powf(2.5) * nu.powi(5) * (cs * mf.sqrt() * nu + kmax);
    let beta2 = 4.0 * cs * mf * mf * nm.sqrt();
    let beta3 = 2.0 * nm * cs * mf.powf(2.5) * kmax;
    let beta4 = 2.0 * nm * mf.powi(3) * cs * cs;
    // (3β)^{-1/k} is +∞ for β = 0, which min() discards
    let alpha = (3.0 * (beta2 + rl))
        .powf(-0.5)
        .min((3.0 * beta3).powf(-1.0 / 3.0))
        .min((3.0 * beta4).powf(-0.25));
    let nu_bound_smooth =
        (p.s1 / (3.0 * ((beta2 + p.s2 * rl) + beta3 * alpha + beta4 * alpha * alpha))).sqrt();

    let nu2 = nu * nu;
    let den_inf = nu2 / 3.0 - rl * nu2 * nu2 - 2.0 * (b1 + d1);
    let den_f = p.finite_gap() - 2.0 * (b1 + d1);
    Ok(SmoothRaw {
        delta_nu,
        b1,
        d1,
        beta2,
        beta3,
        beta4,
        alpha,
        nu_bound_smooth,
        sigma_inf: (den_inf > 0.0).then(|| b1 / den_inf),
        sigma_f: (den_f > 0.0).then(|| b1 / den_f),
    })
}

/// All smooth-regime terms. Fails when `ν` is too large for either bias term
/// to be defined.
pub fn smooth_terms(p: &BoundParams) -> Result<SmoothTerms> {
    let r = smooth_raw(p)?;
    let sigma_inf = r.sigma_inf.ok_or_else(|| {
        Error::Precondition(format!(
            "width too large for smooth regime: nu^2/3 - RL nu^4 - 2(b1 + d1) <= 0 at nu = {}",
            p.nu
        ))
    })?;
    let sigma_f = r.sigma_f.ok_or_else(|| {
        Error::Precondition(format!(
            "width too large for smooth regime: (s1 nu^2/3 - s2 RL nu^4) - 2(b1 + d1) <= 0 at nu = {}",
            p.nu
        ))
    })?;
    Ok(SmoothTerms {
        delta_nu: r.delta_nu,
        b1_fbound: r.b1,
        d1_fbound: r.d1,
        beta2: r.beta2,
        beta3: r.beta3,
        beta4: r.beta4,
        alpha: r.alpha,
        nu_bound_smooth: r.nu_bound_smooth,
        sigma_inf,
        sigma_f,
    })
}

/// `ν_bound_smooth` alone; equals `√(s₁/s₂)·ν_bq` when `C_s = 0`.
pub fn nu_bound_smooth(p: &BoundParams) -> Result<f64> {
    Ok(smooth_raw(p)?.nu_bound_smooth)
}

/// Largest admissible `s₃` for the quadratic or smooth angle bound.
pub fn s3_bound(p: &BoundParams, regime: Regime) -> Result<f64> {
    p.validate()?;
    positive_kmax(p.kmax)?;
    let mf = p.m as f64;
    match regime {
        Regime::Quad => {
            let limit = (p.s1 / p.s2).sqrt() * nu_bound_quad_from_rl(p.m, p.n, p.kmax, p.structure)?;
            if p.nu >= limit {
                return Err(Error::Precondition(format!(
                    "nu < sqrt(s1/s2) * nu_bound_quad violated: {} >= {limit}",
                    p.nu
                )));
            }
            Ok(p.finite_gap() * p.tau / mf.sqrt())
        }
        Regime::Smooth => {
            let r = smooth_raw(p)?;
            if p.nu >= r.nu_bound_smooth {
                return Err(Error::Precondition(format!(
                    "nu < nu_bound_smooth violated: {} >= {}",
                    p.nu, r.nu_bound_smooth
                )));
            }
            let sigma_f = r.sigma_f.ok_or_else(|| {
                Error::Precondition("finite-sample bias denominator is not positive".into())
            })?;
            let gap = p.finite_gap() - 2.0 * (r.b1 + r.d1);
            Ok(gap * (p.tau * p.tau / mf + sigma_f * sigma_f).sqrt() - r.b1)
        }
    }
}

/// `arccos √((1 − τ² − mσ_f²)^m)`
pub fn angle_bound(tau: f64, m: usize, sigma_f: f64) -> Result<f64> {
    let base = 1.0 - tau * tau - m as f64 * sigma_f * sigma_f;
    if !(base > 0.0) || tau < 0.0 || sigma_f < 0.0 {
        return Err(Error::Precondition(format!(
            "tau^2 + m sigma_f^2 < 1 violated (1 - tau^2 - m sigma_f^2 = {base})"
        )));
    }
    // atan2 form keeps precision for small angles
    let log_cos2 = m as f64 * (-(tau * tau + m as f64 * sigma_f * sigma_f)).ln_1p();
    Ok((-log_cos2.exp_m1()).max(0.0).sqrt().atan2((0.5 * log_cos2).exp()))
}

/// Residual angle as `K → ∞` in the smooth regime: `arccos √((1 − mσ_∞²)^m)`.
pub fn asymptotic_angle_bound(m: usize, sigma_inf: f64) -> Result<f64> {
    angle_bound(0.0, m, sigma_inf)
}

/// Order-of-magnitude ambient radius of a tangent width: `ν√(n/m)`. A
/// heuristic, not a bound.
pub fn ambient_width_estimate(nu: f64, n: usize, m: usize) -> Result<f64> {
    if m == 0 || m > n {
        return Err(Error::invalid("m", format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    Ok(nu * (n as f64 / m as f64).sqrt())
}

/// Every closed-form quantity at one parameter point.
///
/// Quantities whose preconditions fail at this point are `None` (empty CSV
/// cell, JSON `null`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "R_M")]
    pub r_m: f64,
    #[serde(rename = "R_D")]
    pub r_d: f64,
    #[serde(rename = "R_sigma")]
    pub r_sigma: f64,
    #[serde(rename = "R_B")]
    pub r_b: f64,
    pub nu_bound_quad: f64,
    pub nu_bound_smooth: f64,
    pub delta_nu: f64,
    pub b1_fbound: f64,
    pub d1_fbound: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub beta4: f64,
    pub alpha: f64,
    pub sigma_inf: Option<f64>,
    pub sigma_f: Option<f64>,
    pub s3_bound_quad: Option<f64>,
    pub s3_bound_smooth: Option<f64>,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k_bound: f64,
    pub angle_bound_quad: f64,
    pub angle_bound_smooth: Option<f64>,
    /// `⌈k_bound⌉`
    pub k_bound_ceil: u64,
}

impl BoundReport {
    pub fn compute(p: &BoundParams) -> Result<BoundReport> {
        p.validate()?;
        positive_kmax(p.kmax)?;
        let (m, n, kmax) = (p.m, p.n, p.kmax);
        let raw = smooth_raw(p)?;
        let kb = k_bounds(p)?;
        let angle_bound_smooth = raw.sigma_f.and_then(|s| angle_bound(p.tau, m, s).ok());
        Ok(BoundReport {
            l: curvature_l(m, kmax),
            r_m: r_m(m, n, kmax, p.nu),
            r_d: r_d(m, n, kmax),
            r_sigma: r_sigma(m, n, kmax, p.structure),
            r_b: r_b(m, n, kmax),
            nu_bound_quad: nu_bound_quad(m, n, kmax, p.structure)?,
            nu_bound_smooth: raw.nu_bound_smooth,
            delta_nu: raw.delta_nu,
            b1_fbound: raw.b1,
            d1_fbound: raw.d1,
            beta2: raw.beta2,
            beta3: raw.beta3,
            beta4: raw.beta4,
            alpha: raw.alpha,
            sigma_inf: raw.sigma_inf,
            sigma_f: raw.sigma_f,
            s3_bound_quad: s3_bound(p, Regime::Quad).ok(),
            s3_bound_smooth: s3_bound(p, Regime::Smooth).ok(),
            k1: kb.k1,
            k2: kb.k2,
            k3: kb.k3,
            k_bound: kb.k_bound,
            angle_bound_quad: angle_bound(p.tau, m, 0.0)?,
            angle_bound_smooth,
            k_bound_ceil: kb.ceiling(),
        })
    }

    /// Header line plus one data row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.serialize(self)?;
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_width_reference_values() {
        let d = nu_bound_quad(5, 100, 10.0, CorrelationStructure::Dense).unwrap();
        assert!((d - 6.5998e-3).abs() < 1e-7);
        let g = nu_bound_quad(5, 100, 10.0, CorrelationStructure::Diagonal).unwrap();
        assert!((g - 6.4327e-2).abs() < 1e-6);
        let half = nu_bound_quad(5, 100, 20.0, CorrelationStructure::Dense).unwrap();
        assert!((half - d / 2.0).abs() < 1e-18);
        assert!(nu_bound_quad(5, 100, 0.0, CorrelationStructure::Dense).is_err());
        assert!(nu_bound_quad(5, 5, 1.0, CorrelationStructure::Dense).is_err());
    }

    #[test]
    fn k1_reference_point() {
        let nu = nu_bound_quad(5, 100, 10.0, CorrelationStructure::Dense).unwrap();
        let rm = r_m(5, 100, 10.0, nu);
        assert!((rm - 7.586).abs() < 1e-3);
        let mut p = BoundParams::new(5, 100, 10.0, nu, CorrelationStructure::Dense);
        p.s1 = 0.5;
        p.p1 = 0.01;
        let k = k_bounds(&p).unwrap();
        assert!((k.k1 - 6.0 * rm / 0.25 * (96.0f64 / 0.01).ln()).abs() < 1e-9 * k.k1);
        assert_eq!(k.k_bound, k.k1.max(k.k2).max(k.k3));
    }

    #[test]
    fn s2_must_exceed_e() {
        let mut p = BoundParams::new(5, 100, 10.0, 1e-3, CorrelationStructure::Dense);
        p.s2 = E;
        assert!(k_bounds(&p).is_err());
    }

    #[test]
    fn smooth_collapses_without_remainder() {
        let nu_q = nu_bound_quad(5, 100, 10.0, CorrelationStructure::Dense).unwrap();
        let p = BoundParams::new(5, 100, 10.0, 0.5 * (0.5 / (2.0 * E)).sqrt() * nu_q, CorrelationStructure::Dense);
        let t = smooth_terms(&p).unwrap();
        assert_eq!((t.delta_nu, t.b1_fbound, t.d1_fbound), (0.0, 0.0, 0.0));
        assert_eq!((t.sigma_inf, t.sigma_f), (0.0, 0.0));
        let want = (p.s1 / p.s2).sqrt() * nu_q;
        assert!((t.nu_bound_smooth - want).abs() < 1e-14 * want);
        let q = s3_bound(&p, Regime::Quad).unwrap();
        let s = s3_bound(&p, Regime::Smooth).unwrap();
        assert!(q > 0.0);
        assert!((q - s).abs() < 1e-14 * q);
    }

    #[test]
    fn quad_precondition_named() {
        let nu_q = nu_bound_quad(5, 100, 10.0, CorrelationStructure::Dense).unwrap();
        let p = BoundParams::new(5, 100, 10.0, nu_q, CorrelationStructure::Dense);
        match s3_bound(&p, Regime::Quad) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("sqrt(s1/s2)")),
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn angle_bound_values() {
        assert_eq!(angle_bound(0.0, 5, 0.0).unwrap(), 0.0);
        let a = angle_bound(0.1, 5, 0.0).unwrap();
        assert!((a - 0.2233).abs() < 1e-4);
        assert!(angle_bound(0.9, 5, 0.3).is_err());
        assert!(angle_bound(0.1, 6, 0.0).unwrap() > a);
        assert!(angle_bound(0.1, 5, 0.01).unwrap() > a);
    }

    #[test]
    fn ambient_width() {
        assert_eq!(ambient_width_estimate(0.3, 4, 4).unwrap(), 0.3);
        assert_eq!(ambient_width_estimate(0.3, 20, 5).unwrap(), 0.6);
        assert!(ambient_width_estimate(0.3, 3, 4).is_err());
    }

    #[test]
    fn report_csv_order() {
        let nu_q = nu_bound_quad(5, 100, 10.0, CorrelationStructure::Dense).unwrap();
        let p = BoundParams::new(5, 100, 10.0, 0.2 * nu_q, CorrelationStructure::Dense)
            .with_s3_fraction(Regime::Quad, 0.99)
            .unwrap();
        let r = BoundReport::compute(&p).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert!(header.starts_with("L,R_M,R_D,R_sigma,R_B,nu_bound_quad,nu_bound_smooth,delta_nu"));
        assert!(header.contains("k_bound,angle_bound_quad,angle_bound_smooth"));
        assert_eq!(text.lines().count(), 2);
    }
}
