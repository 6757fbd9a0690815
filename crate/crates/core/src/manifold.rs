//! Synthetic manifold germs `x ↦ [x, f_1(x), …, f_{n−m}(x)]` around a point whose
//! tangent space is spanned by the first `m` canonical axes.
//!
//! Every normal coordinate is built from a quadratic form
//! `q_l(x) = ½ Σ_j κ_{l,j} ⟨x, v_{l,j}⟩²`:
//!
//! | family         | `f_l(x)`                                   |
//! |----------------|--------------------------------------------|
//! | `quadratic`    | `q_l(x)`                                   |
//! | `smooth1_exp`  | `1 − exp(q_l(x))`                          |
//! | `smooth2_sin`  | `sin(q_l(x))`                              |
//! | `smooth3_poly` | `Σ_j ½κ_{l,j}x_j² + a x_j³ + b x_j⁴ + c x_j⁵` |
//!
//! The *remainder* `R_l` is `f_l` minus its second-order Taylor polynomial at 0.
//! For `smooth1_exp` that polynomial is `−q_l`, so `R_l = −(e^{q} − 1 − q)`.

use std::fmt;
use std::str::FromStr;

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{orthonormalize, Matrix};
use crate::rng::{self, tag};

/// Multiplier applied to the largest observed remainder ratio in [`estimate_cs`].
pub const CS_SAFETY_FACTOR: f64 = 1.2;
/// Upper end of the uniform range for the smooth3 polynomial coefficients.
pub const POLY_COEFF_MAX: f64 = 10.0;

/// Largest intrinsic dimension for which [`estimate_cs`] scans a full grid.
pub const FULL_GRID_MAX_DIM: usize = 4;
const SEARCH_SAMPLES: usize = 100_000;
const SEARCH_RESTARTS: usize = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "quadratic")]
    Quadratic,
    #[serde(rename = "smooth1_exp")]
    Smooth1Exp,
    #[serde(rename = "smooth2_sin")]
    Smooth2Sin,
    #[serde(rename = "smooth3_poly")]
    Smooth3Poly,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Quadratic,
        Family::Smooth1Exp,
        Family::Smooth2Sin,
        Family::Smooth3Poly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Quadratic => "quadratic",
            Family::Smooth1Exp => "smooth1_exp",
            Family::Smooth2Sin => "smooth2_sin",
            Family::Smooth3Poly => "smooth3_poly",
        }
    }

    pub fn is_smooth(self) -> bool {
        self != Family::Quadratic
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                Error::invalid(
                    "family",
                    format!("unknown family `{s}` (expected quadratic, smooth1_exp, smooth2_sin or smooth3_poly)"),
                )
            })
    }
}

/// Principal curvatures `κ_{l,j}` of each normal coordinate, plus optional
/// eigenvector frames `V_l` (identity when absent).
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureSpectrum {
    m: usize,
    n: usize,
    kmax: f64,
    kappa: Vec<Vec<f64>>,
    rotations: Option<Vec<Matrix>>,
}

impl CurvatureSpectrum {
    /// Validating constructor. `kappa` has `n − m` rows of length `m`.
    pub fn new(
        m: usize,
        n: usize,
        kmax: f64,
        kappa: Vec<Vec<f64>>,
        rotations: Option<Vec<Matrix>>,
    ) -> Result<Self> {
        check_dims(m, n)?;
        if !(kmax.is_finite() && kmax >= 0.0) {
            return Err(Error::invalid("kmax", format!("must be finite and >= 0, got {kmax}")));
        }
        if kappa.len() != n - m || kappa.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "curvature array must be {}x{m}",
                n - m
            )));
        }
        for row in &kappa {
            for &k in row {
                if !k.is_finite() || k.abs() > kmax {
                    return Err(Error::invalid(
                        "kappa",
                        format!("curvature {k} exceeds declared |kmax| = {kmax}"),
                    ));
                }
            }
        }
        if let Some(rots) = &rotations {
            if rots.len() != n - m {
                return Err(Error::DimensionMismatch(format!(
                    "need {} rotation frames, got {}",
                    n - m,
                    rots.len()
                )));
            }
            for v in rots {
                if v.shape() != (m, m) {
                    return Err(Error::DimensionMismatch(format!(
                        "rotation frames must be {m}x{m}"
                    )));
                }
                let d = v.orthonormality_defect();
                if d > 1e-10 * m as f64 {
                    return Err(Error::NotOrthonormal { deviation: d });
                }
            }
        }
        Ok(CurvatureSpectrum {
            m,
            n,
            kmax,
            kappa,
            rotations,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kmax(&self) -> f64 {
        self.kmax
    }

    pub fn kappa(&self) -> &[Vec<f64>] {
        &self.kappa
    }

    pub fn rotations(&self) -> Option<&[Matrix]> {
        self.rotations.as_deref()
    }

    /// Replace the frames `V_l`; validated as in [`CurvatureSpectrum::new`].
    pub fn with_rotations(self, rotations: Vec<Matrix>) -> Result<Self> {
        CurvatureSpectrum::new(self.m, self.n, self.kmax, self.kappa, Some(rotations))
    }

    /// Largest `|κ_{l,j}|` actually present.
    pub fn largest_curvature(&self) -> f64 {
        self.kappa
            .iter()
            .flatten()
            .fold(0.0, |a: f64, k| a.max(k.abs()))
    }

    /// `q_l(x)` for every normal index `l`, written into `out`.
    fn quadratic_into(&self, x: &[f64], out: &mut [f64]) {
        match &self.rotations {
            None => {
                for (o, row) in out.iter_mut().zip(&self.kappa) {
                    let mut s = 0.0;
                    for (k, xi) in row.iter().zip(x) {
                        s += k * xi * xi;
                    }
                    *o = 0.5 * s;
                }
            }
            Some(rots) => {
                for ((o, row), v) in out.iter_mut().zip(&self.kappa).zip(rots) {
                    let mut s = 0.0;
                    for (j, k) in row.iter().enumerate() {
                        let proj: f64 = (0..self.m).map(|i| x[i] * v[(i, j)]).sum();
                        s += k * proj * proj;
                    }
                    *o = 0.5 * s;
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpectrumOptions {
    /// Overwrite one randomly chosen curvature with `±kmax` so the declared
    /// maximum is attained.
    pub force_extreme: bool,
}

/// Random spectrum: each row i.i.d. uniform on `[0, kmax]^m`, then multiplied by
/// one fair ±1 sign.
pub fn generate_spectrum(m: usize, n: usize, kmax: f64, seed: u64) -> Result<CurvatureSpectrum> {
    generate_spectrum_with(m, n, kmax, seed, SpectrumOptions::default())
}

pub fn generate_spectrum_with(
    m: usize,
    n: usize,
    kmax: f64,
    seed: u64,
    options: SpectrumOptions,
) -> Result<CurvatureSpectrum> {
    check_dims(m, n)?;
    if !(kmax.is_finite() && kmax >= 0.0) {
        return Err(Error::invalid("kmax", format!("must be finite and >= 0, got {kmax}")));
    }
    let mut s = rng::stream(seed, &[tag::SPECTRUM]);
    let mut kappa: Vec<Vec<f64>> = (0..n - m)
        .map(|_| {
            let row: Vec<f64> = (0..m).map(|_| kmax * rng::unit(&mut s)).collect();
            let sign = rng::sign(&mut s);
            row.into_iter().map(|k| sign * k).collect()
        })
        .collect();
    if options.force_extreme && kmax > 0.0 {
        let mut e = rng::stream(seed, &[tag::EXTREME]);
        let l = (rng::unit(&mut e) * (n - m) as f64) as usize;
        let j = (rng::unit(&mut e) * m as f64) as usize;
        // keep the row's common sign
        let sign = if kappa[l].iter().any(|k| *k < 0.0) { -1.0 } else { 1.0 };
        kappa[l][j] = sign * kmax;
    }
    CurvatureSpectrum::new(m, n, kmax, kappa, None)
}

/// `n − m` Haar-distributed orthogonal `m×m` frames.
pub fn random_rotations(m: usize, n: usize, seed: u64) -> Result<Vec<Matrix>> {
    check_dims(m, n)?;
    let mut s = rng::stream(seed, &[tag::ROTATION]);
    (0..n - m)
        .map(|_| {
            let g = Matrix::from_fn(m, m, |_, _| StandardNormal.sample(&mut s));
            orthonormalize(&g)
        })
        .collect()
}

/// Polynomial coefficients `(a, b, c)` for smooth3, i.i.d. uniform on `[0, 10]`.
pub fn generate_poly_coeffs(m: usize, n: usize, seed: u64) -> Result<Vec<Vec<[f64; 3]>>> {
    check_dims(m, n)?;
    let mut s = rng::stream(seed, &[tag::POLY]);
    Ok((0..n - m)
        .map(|_| {
            (0..m)
                .map(|_| {
                    [
                        POLY_COEFF_MAX * rng::unit(&mut s),
                        POLY_COEFF_MAX * rng::unit(&mut s),
                        POLY_COEFF_MAX * rng::unit(&mut s),
                    ]
                })
                .collect()
        })
        .collect())
}

fn check_dims(m: usize, n: usize) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::invalid("m", format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    Ok(())
}

/// A complete, replayable description of one synthetic germ.
///
/// JSON form: `{"family", "m", "n", "kmax", "kappa", "poly_coeffs", "seed"}`
/// plus an optional `"rotations"` array of `m×m` row arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecDocument", into = "SpecDocument")]
pub struct EmbeddingSpec {
    family: Family,
    spectrum: CurvatureSpectrum,
    poly_coeffs: Option<Vec<Vec<[f64; 3]>>>,
    seed: Option<u64>,
}

impl EmbeddingSpec {
    pub fn new(
        family: Family,
        spectrum: CurvatureSpectrum,
        poly_coeffs: Option<Vec<Vec<[f64; 3]>>>,
        seed: Option<u64>,
    ) -> Result<Self> {
        match (family, &poly_coeffs) {
            (Family::Smooth3Poly, None) => {
                return Err(Error::invalid("poly_coeffs", "required for smooth3_poly"))
            }
            (Family::Smooth3Poly, Some(pc)) => {
                if pc.len() != spectrum.n - spectrum.m || pc.iter().any(|r| r.len() != spectrum.m) {
                    return Err(Error::DimensionMismatch(format!(
                        "poly_coeffs must be {}x{}x3",
                        spectrum.n - spectrum.m,
                        spectrum.m
                    )));
                }
                if pc
                    .iter()
                    .flatten()
                    .flatten()
                    .any(|c| !(0.0..=POLY_COEFF_MAX).contains(c))
                {
                    return Err(Error::invalid("poly_coeffs", "coefficients must lie in [0, 10]"));
                }
                if spectrum.rotations.is_some() {
                    return Err(Error::invalid(
                        "rotations",
                        "smooth3_poly is axis-aligned and takes no rotations",
                    ));
                }
            }
            (_, Some(_)) => {
                return Err(Error::invalid(
                    "poly_coeffs",
                    format!("only smooth3_poly takes coefficients, family is {family}"),
                ))
            }
            (_, None) => {}
        }
        Ok(EmbeddingSpec {
            family,
            spectrum,
            poly_coeffs,
            seed,
        })
    }

    /// Random germ: spectrum (and smooth3 coefficients) drawn from `seed`.
    pub fn generate(family: Family, m: usize, n: usize, kmax: f64, seed: u64) -> Result<Self> {
        Self::generate_with(family, m, n, kmax, seed, SpectrumOptions::default())
    }

    pub fn generate_with(
        family: Family,
        m: usize,
        n: usize,
        kmax: f64,
        seed: u64,
        options: SpectrumOptions,
    ) -> Result<Self> {
        let spectrum = generate_spectrum_with(m, n, kmax, seed, options)?;
        let poly = match family {
            Family::Smooth3Poly => Some(generate_poly_coeffs(m, n, seed)?),
            _ => None,
        };
        EmbeddingSpec::new(family, spectrum, poly, Some(seed))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn spectrum(&self) -> &CurvatureSpectrum {
        &self.spectrum
    }

    pub fn poly_coeffs(&self) -> Option<&[Vec<[f64; 3]>]> {
        self.poly_coeffs.as_deref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn m(&self) -> usize {
        self.spectrum.m
    }

    pub fn n(&self) -> usize {
        self.spectrum.n
    }

    pub fn kmax(&self) -> f64 {
        self.spectrum.kmax
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "tangent vector has length {}, expected m = {}",
                x.len(),
                self.m()
            )));
        }
        Ok(())
    }

    /// Normal coordinates `f_1(x) … f_{n−m}(x)` into `out` (length `n − m`).
    pub(crate) fn normals_into(&self, x: &[f64], out: &mut [f64]) {
        match self.family {
            Family::Quadratic => self.spectrum.quadratic_into(x, out),
            Family::Smooth1Exp => {
                self.spectrum.quadratic_into(x, out);
                out.iter_mut().for_each(|q| *q = -q.exp_m1());
            }
            Family::Smooth2Sin => {
                self.spectrum.quadratic_into(x, out);
                out.iter_mut().for_each(|q| *q = q.sin());
            }
            Family::Smooth3Poly => {
                let pc = self.poly_coeffs.as_ref().expect("validated");
                for ((o, krow), prow) in out.iter_mut().zip(&self.spectrum.kappa).zip(pc) {
                    let mut s = 0.0;
                    for ((k, [a, b, c]), &xj) in krow.iter().zip(prow).zip(x) {
                        let x2 = xj * xj;
                        s += 0.5 * k * x2 + x2 * xj * (a + xj * (b + xj * c));
                    }
                    *o = s;
                }
            }
        }
    }

    /// `R_l(x)` for every `l`, evaluated without cancellation near 0.
    fn remainders_into(&self, x: &[f64], out: &mut [f64]) {
        match self.family {
            Family::Quadratic => out.iter_mut().for_each(|r| *r = 0.0),
            Family::Smooth1Exp => {
                self.spectrum.quadratic_into(x, out);
                out.iter_mut().for_each(|q| *q = -expm1_minus_linear(*q));
            }
            Family::Smooth2Sin => {
                self.spectrum.quadratic_into(x, out);
                out.iter_mut().for_each(|q| *q = sin_minus_linear(*q));
            }
            Family::Smooth3Poly => {
                let pc = self.poly_coeffs.as_ref().expect("validated");
                for (o, prow) in out.iter_mut().zip(pc) {
                    let mut s = 0.0;
                    for ([a, b, c], &xj) in prow.iter().zip(x) {
                        s += xj * xj * xj * (a + xj * (b + xj * c));
                    }
                    *o = s;
                }
            }
        }
    }
}

/// `e^q − 1 − q`
fn expm1_minus_linear(q: f64) -> f64 {
    if q.abs() < 0.1 {
        // Σ_{k≥2} q^k / k!, Horner form
        let mut s = 0.0;
        for k in (2..=14).rev() {
            s = (s + 1.0) * q / k as f64;
        }
        s * q
    } else {
        q.exp_m1() - q
    }
}

/// `sin q − q`
fn sin_minus_linear(q: f64) -> f64 {
    if q.abs() < 0.5 {
        // Σ_{k≥1} (−1)^k q^{2k+1} / (2k+1)!
        let q2 = q * q;
        let mut term = q;
        let mut s = 0.0;
        for k in 1..=10 {
            term *= -q2 / ((2 * k) * (2 * k + 1)) as f64;
            s += term;
        }
        s
    } else {
        q.sin() - q
    }
}

/// `q_l(x) = ½ Σ_j κ_{l,j} ⟨x, v_{l,j}⟩²` for every normal index.
pub fn quadratic_part(spec: &EmbeddingSpec, x: &[f64]) -> Result<Vec<f64>> {
    spec.check_point(x)?;
    let mut out = vec![0.0; spec.n() - spec.m()];
    spec.spectrum.quadratic_into(x, &mut out);
    Ok(out)
}

/// The point `[x, f_1(x), …, f_{n−m}(x)] ∈ R^n`.
pub fn evaluate_embedding(spec: &EmbeddingSpec, x: &[f64]) -> Result<Vec<f64>> {
    spec.check_point(x)?;
    let m = spec.m();
    let mut out = vec![0.0; spec.n()];
    out[..m].copy_from_slice(x);
    spec.normals_into(x, &mut out[m..]);
    Ok(out)
}

/// Third-order Taylor remainder `R_l(x)` of every normal coordinate.
pub fn remainder(spec: &EmbeddingSpec, x: &[f64]) -> Result<Vec<f64>> {
    spec.check_point(x)?;
    let mut out = vec![0.0; spec.n() - spec.m()];
    spec.remainders_into(x, &mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviationEstimate {
    /// `max_l per_normal[l]`
    pub cs: f64,
    pub per_normal: Vec<f64>,
    /// Points per axis of the full grid, or the number of low-discrepancy
    /// samples when the grid was replaced by a search.
    pub grid_resolution: usize,
    pub domain_halfwidth: f64,
}

/// Upper estimate of `C_s`, the smallest constant with `|R_l(x)| ≤ C_s ‖x‖³` on
/// `[−ν, ν]^m`, inflated by [`CS_SAFETY_FACTOR`].
///
/// For `m ≤ 4` every point of a `grid_points_per_axis^m` grid is evaluated.
/// Above that, 10⁵ Halton points plus 10³ restarts of a compass search on
/// `max_l |R_l(x)|/‖x‖³` replace the grid. Points with `‖x‖ < 1e−6·ν` are skipped.
pub fn estimate_cs(spec: &EmbeddingSpec, nu: f64, grid_points_per_axis: usize) -> Result<DeviationEstimate> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::invalid("nu", format!("must be > 0, got {nu}")));
    }
    if grid_points_per_axis < 3 {
        return Err(Error::invalid("grid_points_per_axis", "need at least 3"));
    }
    let m = spec.m();
    let normals = spec.n() - m;
    let mut best = vec![0.0; normals];
    if spec.family == Family::Quadratic {
        return Ok(DeviationEstimate {
            cs: 0.0,
            per_normal: best,
            grid_resolution: grid_points_per_axis,
            domain_halfwidth: nu,
        });
    }

    let mut probe = Probe {
        spec,
        floor: 1e-6 * nu,
        scratch: vec![0.0; normals],
    };
    let resolution = if m <= FULL_GRID_MAX_DIM {
        let g = grid_points_per_axis;
        let step = 2.0 * nu / (g - 1) as f64;
        let mut idx = vec![0usize; m];
        let mut x = vec![0.0; m];
        loop {
            for (xi, &i) in x.iter_mut().zip(&idx) {
                *xi = -nu + step * i as f64;
            }
            probe.eval(&x, &mut best);
            // odometer increment
            let mut d = 0;
            while d < m {
                idx[d] += 1;
                if idx[d] < g {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == m {
                break;
            }
        }
        g
    } else {
        search(&mut probe, nu, &mut best)
    };

    let per_normal: Vec<f64> = best.iter().map(|b| CS_SAFETY_FACTOR * b).collect();
    Ok(DeviationEstimate {
        cs: per_normal.iter().copied().fold(0.0, f64::max),
        per_normal,
        grid_resolution: resolution,
        domain_halfwidth: nu,
    })
}

struct Probe<'a> {
    spec: &'a EmbeddingSpec,
    floor: f64,
    scratch: Vec<f64>,
}

impl Probe<'_> {
    /// Update per-normal maxima with the point `x`; returns `max_l` ratio at `x`.
    fn eval(&mut self, x: &[f64], best: &mut [f64]) -> f64 {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r < self.floor {
            return 0.0;
        }
        self.spec.remainders_into(x, &mut self.scratch);
        let inv = 1.0 / (r * r * r);
        let mut top = 0.0f64;
        for (b, v) in best.iter_mut().zip(&self.scratch) {
            let ratio = v.abs() * inv;
            *b = b.max(ratio);
            top = top.max(ratio);
        }
        top
    }
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

fn search(probe: &mut Probe<'_>, nu: f64, best: &mut [f64]) -> usize {
    let m = probe.spec.m();
    let seed = probe.spec.seed.unwrap_or(0);
    let mut s = rng::stream(seed, &[tag::SEARCH]);
    let mut x = vec![0.0; m];

    // corners and signed axis endpoints, where the ratios of these families peak
    if m <= 16 {
        for mask in 0..(1u64 << m) {
            for (j, xj) in x.iter_mut().enumerate() {
                *xj = if mask >> j & 1 == 1 { nu } else { -nu };
            }
            probe.eval(&x, best);
        }
    }
    for j in 0..m {
        for sgn in [-1.0, 1.0] {
            x.iter_mut().for_each(|v| *v = 0.0);
            x[j] = sgn * nu;
            probe.eval(&x, best);
        }
    }

    for i in 1..=SEARCH_SAMPLES as u64 {
        for (j, xj) in x.iter_mut().enumerate() {
            let u = if j < PRIMES.len() {
                radical_inverse(i, PRIMES[j])
            } else {
                rng::unit(&mut s)
            };
            *xj = -nu + 2.0 * nu * u;
        }
        probe.eval(&x, best);
    }

    for _ in 0..SEARCH_RESTARTS {
        for xj in x.iter_mut() {
            *xj = rng::symmetric(&mut s, nu);
        }
        compass_ascent(probe, &mut x, nu, best);
    }
    SEARCH_SAMPLES
}

/// Coordinate pattern search for a local maximum of `max_l |R_l|/‖x‖³` in the box.
fn compass_ascent(probe: &mut Probe<'_>, x: &mut [f64], nu: f64, best: &mut [f64]) {
    let mut value = probe.eval(x, best);
    let mut h = 0.25 * nu;
    let mut trial = x.to_vec();
    for _ in 0..200 {
        if h < 1e-4 * nu {
            break;
        }
        let mut improved = false;
        for j in 0..x.len() {
            for sgn in [1.0, -1.0] {
                trial.copy_from_slice(x);
                trial[j] = (x[j] + sgn * h).clamp(-nu, nu);
                let v = probe.eval(&trial, best);
                if v > value {
                    value = v;
                    x.copy_from_slice(&trial);
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SpecDocument {
    family: Family,
    m: usize,
    n: usize,
    kmax: f64,
    kappa: Vec<Vec<f64>>,
    poly_coeffs: Option<Vec<Vec<[f64; 3]>>>,
    seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotations: Option<Vec<Matrix>>,
}

impl TryFrom<SpecDocument> for EmbeddingSpec {
    type Error = Error;

    fn try_from(d: SpecDocument) -> Result<Self> {
        let spectrum = CurvatureSpectrum::new(d.m, d.n, d.kmax, d.kappa, d.rotations)?;
        EmbeddingSpec::new(d.family, spectrum, d.poly_coeffs, d.seed)
    }
}

impl From<EmbeddingSpec> for SpecDocument {
    fn from(s: EmbeddingSpec) -> Self {
        SpecDocument {
            family: s.family,
            m: s.spectrum.m,
            n: s.spectrum.n,
            kmax: s.spectrum.kmax,
            kappa: s.spectrum.kappa,
            poly_coeffs: s.poly_coeffs,
            seed: s.seed,
            rotations: s.spectrum.rotations,
        }
    }
}
