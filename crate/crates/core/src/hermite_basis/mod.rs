//! Hermite-Gaussian wavefunctions, projection of sampled states onto them and
//! phase-space moment estimates.

mod io;
mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

pub use io::{
    coefficients_json, format_float, read_coefficients, read_wavefunction_csv, write_coefficients,
    write_wavefunction_csv,
};
pub use quadrature::{gauss_hermite, inner_product_phi, inner_product_phi_tilde};

/// Smallest support half-width, in units of `√𝒜`, accepted by [`project`].
pub const SUPPORT_WIDTHS: f64 = 8.0;

/// Below this degree the closed-form normalization is used directly.
const DIRECT_LIMIT: usize = 30;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HermiteError {
    #[error("grid [{lo}, {hi}] does not cover the required support [{need_lo}, {need_hi}]")]
    InsufficientSupport {
        lo: f64,
        hi: f64,
        need_lo: f64,
        need_hi: f64,
    },
    #[error("wavefunction norm² is {norm2}, expected 1 within 1e-6")]
    NotNormalized { norm2: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid basis parameters: {0}")]
    InvalidParams(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

/// `(X, P, 𝓑)` with `𝒜 = 1/(4𝓑)` derived.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct BasisParams {
    x: f64,
    p: f64,
    b: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    #[serde(rename = "X")]
    x: f64,
    #[serde(rename = "P")]
    p: f64,
    #[serde(rename = "B")]
    b: f64,
}

impl TryFrom<RawParams> for BasisParams {
    type Error = HermiteError;
    fn try_from(r: RawParams) -> Result<Self, Self::Error> {
        Self::new(r.x, r.p, r.b)
    }
}

impl From<BasisParams> for RawParams {
    fn from(p: BasisParams) -> Self {
        RawParams {
            x: p.x,
            p: p.p,
            b: p.b,
        }
    }
}

impl BasisParams {
    pub fn new(x: f64, p: f64, b: f64) -> Result<Self, HermiteError> {
        if !(x.is_finite() && p.is_finite()) {
            return Err(HermiteError::InvalidParams("X and P must be finite".into()));
        }
        if !(b.is_finite() && b > 0.0) {
            return Err(HermiteError::InvalidParams(format!(
                "B must be positive, got {b}"
            )));
        }
        Ok(Self { x, p, b })
    }

    /// Centered basis with `𝓑 = ½`, so `𝒜 = ½` as well.
    pub fn standard() -> Self {
        Self {
            x: 0.0,
            p: 0.0,
            b: 0.5,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Momentum dispersion 𝓑 = (Δp)².
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Coordinate dispersion 𝒜 = (Δx)² = 1/(4𝓑).
    pub fn a(&self) -> f64 {
        0.25 / self.b
    }
}

/// Samples of `⟨x|ψ⟩` on a uniform ascending grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledWavefunction {
    grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl SampledWavefunction {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self, HermiteError> {
        validate_grid(&grid)?;
        if grid.len() != values.len() {
            return Err(HermiteError::InvalidGrid(format!(
                "{} grid points but {} values",
                grid.len(),
                values.len()
            )));
        }
        if let Some(i) = values
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(HermiteError::InvalidGrid(format!(
                "non-finite amplitude at row {i}"
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Vec<f64>, f: impl Fn(f64) -> Complex64) -> Result<Self, HermiteError> {
        let values = grid.iter().map(|&x| f(x)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn spacing(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }

    /// Trapezoidal `∫|ψ|² dx`.
    pub fn norm_sqr(&self) -> f64 {
        trapezoid(self.spacing(), self.values.iter().map(|v| v.norm_sqr()))
    }
}

/// `n` equally spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(
        n >= 2 && hi > lo,
        "grid needs two or more points and hi > lo"
    );
    let h = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + h * i as f64).collect()
}

fn validate_grid(grid: &[f64]) -> Result<(), HermiteError> {
    if grid.len() < 2 {
        return Err(HermiteError::InvalidGrid("need at least two points".into()));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(HermiteError::InvalidGrid("non-finite coordinate".into()));
    }
    let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    if h <= 0.0 {
        return Err(HermiteError::InvalidGrid(
            "grid must be strictly ascending".into(),
        ));
    }
    let scale = grid[0].abs().max(grid[grid.len() - 1].abs()).max(h);
    for (i, w) in grid.windows(2).enumerate() {
        let d = w[1] - w[0];
        if d <= 0.0 {
            return Err(HermiteError::InvalidGrid(format!(
                "not ascending at row {}",
                i + 1
            )));
        }
        // spacing is compared against the spacing itself, with slack for the
        // rounding of coordinates of magnitude `scale`
        if (d - h).abs() > 1e-12 * h + 4.0 * f64::EPSILON * scale {
            return Err(HermiteError::InvalidGrid(format!(
                "non-uniform spacing at row {}: {d} vs {h}",
                i + 1
            )));
        }
    }
    Ok(())
}

fn trapezoid(h: f64, values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    let sum: f64 = values
        .enumerate()
        .map(|(i, v)| if i == 0 || i + 1 == n { 0.5 * v } else { v })
        .sum();
    sum * h
}

/// Coefficients `c_n`, `0 ≤ n < cutoff`, over the basis fixed by `params`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientExpansion {
    pub params: BasisParams,
    pub coeffs: Vec<Complex64>,
}

impl CoefficientExpansion {
    pub fn new(params: BasisParams, coeffs: Vec<Complex64>) -> Result<Self, HermiteError> {
        if coeffs.is_empty() {
            return Err(HermiteError::Parse("cutoff must be at least 1".into()));
        }
        Ok(Self { params, coeffs })
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Coefficients over the ladder kets `|n, X, P, 𝒷⟩ = iⁿ·phi(n)`, the basis
    /// the truncated Fock-space matrices act in.
    pub fn ket_coefficients(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * ket_phase(n).conj())
            .collect()
    }

    /// Inverse of [`ket_coefficients`](Self::ket_coefficients).
    pub fn from_ket_coefficients(
        params: BasisParams,
        kets: &[Complex64],
    ) -> Result<Self, HermiteError> {
        Self::new(
            params,
            kets.iter()
                .enumerate()
                .map(|(n, d)| d * ket_phase(n))
                .collect(),
        )
    }
}

/// Phase `iⁿ` relating the ladder ket to the real Hermite function: with
/// `𝔷⁻ = (𝔭 − i𝔵)/√2` each lowering step of `phi(n)` carries a factor `−i`.
pub fn ket_phase(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Physicists' Hermite polynomial by the three-term recurrence.
pub fn hermite_polynomial(n: usize, t: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * t);
    if n == 0 {
        return h0;
    }
    for k in 1..n {
        (h0, h1) = (h1, 2.0 * t * h1 - 2.0 * k as f64 * h0);
    }
    h1
}

/// `H_n(t)/√(2ⁿ n! √π)` for all `n ≤ n_max`, by the normalized recurrence.
pub(crate) fn normalized_hermite_all(n_max: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(PI.powf(-0.25));
    if n_max >= 1 {
        out.push(2f64.sqrt() * t * out[0]);
    }
    for k in 1..n_max {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * t * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// `ĥ_n(t) e^{−t²/2}`, the unit-scale Hermite function.
fn hermite_function(n: usize, t: f64) -> f64 {
    let g = (-0.5 * t * t).exp();
    if n < DIRECT_LIMIT {
        let norm = (2f64.powi(n as i32) * factorial(n) * PI.sqrt()).sqrt();
        hermite_polynomial(n, t) / norm * g
    } else {
        // The scaled recurrence keeps every intermediate of order one; the
        // Gaussian is folded in stepwise to avoid under- and overflow.
        scaled_hermite_function(n, t)
    }
}

fn scaled_hermite_function(n: usize, t: f64) -> f64 {
    // Carry ψ_k = ĥ_k(t)·e^{−t²/2} with a running exponent to keep magnitudes
    // representable for large |t|.
    let mut log_scale = -0.5 * t * t - 0.25 * PI.ln();
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * t * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        let m = cur.abs().max(prev.abs());
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            log_scale += m.ln();
            cur /= m;
            prev /= m;
        }
    }
    cur * log_scale.exp()
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Coordinate wavefunction
/// `H_n((x−X)/√(2𝒜)) / √(2ⁿ n! √(2π𝒜)) · exp(−(x−X)²/(4𝒜) + iPx)`.
pub fn phi(n: usize, x: f64, params: &BasisParams) -> Complex64 {
    let a = params.a();
    let t = (x - params.x) / (2.0 * a).sqrt();
    let amp = hermite_function(n, t) * (2.0 * a).powf(-0.25);
    Complex64::from_polar(1.0, params.p * x) * amp
}

/// Momentum wavefunction
/// `H_n((p−P)/√(2𝓑)) / √(2ⁿ n! √(2π𝓑)) · exp(−(p−P)²/(4𝓑) − iX(p−P))`.
pub fn phi_tilde(n: usize, p: f64, params: &BasisParams) -> Complex64 {
    let b = params.b;
    let t = (p - params.p) / (2.0 * b).sqrt();
    let amp = hermite_function(n, t) * (2.0 * b).powf(-0.25);
    Complex64::from_polar(1.0, -params.x * (p - params.p)) * amp
}

fn check_support(grid: &[f64], params: &BasisParams) -> Result<(), HermiteError> {
    let half = SUPPORT_WIDTHS * params.a().sqrt();
    let (need_lo, need_hi) = (params.x - half, params.x + half);
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    if lo > need_lo || hi < need_hi {
        return Err(HermiteError::InsufficientSupport {
            lo,
            hi,
            need_lo,
            need_hi,
        });
    }
    Ok(())
}

/// Trapezoidal `c_n = ∫ phi(n, x)* ψ(x) dx`.
pub fn project(
    wf: &SampledWavefunction,
    params: &BasisParams,
    cutoff: usize,
) -> Result<CoefficientExpansion, HermiteError> {
    check_support(&wf.grid, params)?;
    let h = wf.spacing();
    let last = wf.grid.len() - 1;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); cutoff];
    for (j, (&x, &v)) in wf.grid.iter().zip(&wf.values).enumerate() {
        let w = if j == 0 || j == last { 0.5 * h } else { h };
        let a = params.a();
        let t = (x - params.x) / (2.0 * a).sqrt();
        let phase = Complex64::from_polar(1.0, -params.p * x);
        let hs = basis_values(cutoff, t, (2.0 * a).powf(-0.25));
        for (c, hn) in coeffs.iter_mut().zip(hs) {
            *c += phase * v * (hn * w);
        }
    }
    CoefficientExpansion::new(*params, coeffs)
}

/// `ĥ_n(t)·e^{−t²/2}·pref` for `n < cutoff`, switching to the scaled
/// evaluation far out where `ĥ_n(t)` alone could overflow.
fn basis_values(cutoff: usize, t: f64, pref: f64) -> Vec<f64> {
    if t.abs() < 20.0 {
        let g = (-0.5 * t * t).exp() * pref;
        normalized_hermite_all(cutoff.saturating_sub(1), t)
            .into_iter()
            .take(cutoff)
            .map(|h| h * g)
            .collect()
    } else {
        (0..cutoff)
            .map(|n| scaled_hermite_function(n, t) * pref)
            .collect()
    }
}

/// `ψ(x) = Σ_n c_n phi(n, x)` on `grid`.
pub fn synthesize(
    expansion: &CoefficientExpansion,
    grid: Vec<f64>,
) -> Result<SampledWavefunction, HermiteError> {
    validate_grid(&grid)?;
    let params = expansion.params;
    let a = params.a();
    let cutoff = expansion.cutoff();
    let values = grid
        .iter()
        .map(|&x| {
            let t = (x - params.x) / (2.0 * a).sqrt();
            let sum: Complex64 = basis_values(cutoff, t, (2.0 * a).powf(-0.25))
                .into_iter()
                .zip(&expansion.coeffs)
                .map(|(h, c)| c * h)
                .sum();
            sum * Complex64::from_polar(1.0, params.p * x)
        })
        .collect();
    SampledWavefunction::new(grid, values)
}

/// Samples of the unitary Fourier image `(2π)^{-1/2} ∫ e^{−ipx} ψ(x) dx`,
/// returned on an ascending momentum grid. The input is zero-padded to at
/// least four times its length to refine the momentum spacing.
pub fn fourier_transform(wf: &SampledWavefunction) -> (Vec<f64>, Vec<Complex64>) {
    let n_in = wf.grid.len();
    let n = (4 * n_in).next_power_of_two();
    let h = wf.spacing();
    let mut buf: Vec<Complex64> = wf.values.clone();
    buf.resize(n, Complex64::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let x0 = wf.grid[0];
    let dp = 2.0 * PI / (n as f64 * h);
    let half = n / 2;
    let mut p = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for k in 0..n {
        // ascending order: negative frequencies first
        let idx = (k + half) % n;
        let freq = if idx >= half {
            idx as f64 - n as f64
        } else {
            idx as f64
        };
        let pk = freq * dp;
        p.push(pk);
        v.push(buf[idx] * Complex64::from_polar(h / (2.0 * PI).sqrt(), -pk * x0));
    }
    (p, v)
}

/// Mean position and momentum with their dispersions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseSpaceMoments {
    #[serde(rename = "X")]
    pub x_mean: f64,
    #[serde(rename = "P")]
    pub p_mean: f64,
    pub dx2: f64,
    pub dp2: f64,
}

pub fn dispersion_estimate(wf: &SampledWavefunction) -> Result<PhaseSpaceMoments, HermiteError> {
    let norm2 = wf.norm_sqr();
    if (norm2 - 1.0).abs() > 1e-6 {
        return Err(HermiteError::NotNormalized { norm2 });
    }
    let h = wf.spacing();
    let dens: Vec<f64> = wf.values.iter().map(|v| v.norm_sqr()).collect();
    let (x_mean, dx2) = moments(&wf.grid, &dens, h);
    let (p, vt) = fourier_transform(wf);
    let dp = p[1] - p[0];
    let pdens: Vec<f64> = vt.iter().map(|v| v.norm_sqr()).collect();
    let (p_mean, dp2) = moments(&p, &pdens, dp);
    Ok(PhaseSpaceMoments {
        x_mean,
        p_mean,
        dx2,
        dp2,
    })
}

fn moments(grid: &[f64], dens: &[f64], h: f64) -> (f64, f64) {
    let mass = trapezoid(h, dens.iter().copied());
    let mean = trapezoid(h, grid.iter().zip(dens).map(|(x, d)| x * d)) / mass;
    let var = trapezoid(
        h,
        grid.iter().zip(dens).map(|(x, d)| (x - mean).powi(2) * d),
    ) / mass;
    (mean, var)
}

/// Phase `γ_n` with `F[phi(n)] ≈ e^{iγ_n}·phi_tilde(n)`, measured at the
/// momentum sample where `|phi_tilde(n)|` is largest, together with the
/// largest modulus mismatch over the momentum grid.
pub fn fourier_phase(n: usize, params: &BasisParams, points: usize) -> (f64, f64) {
    let a = params.a();
    let half = (12.0 + 2.0 * (n as f64).sqrt()) * a.sqrt();
    let grid = uniform_grid(params.x - half, params.x + half, points);
    let wf = SampledWavefunction::from_fn(grid, |x| phi(n, x, params)).expect("uniform grid");
    let (p, vt) = fourier_transform(&wf);
    let mut best = (0usize, 0.0f64);
    let mut max_mod_err = 0.0f64;
    for (k, (&pk, v)) in p.iter().zip(&vt).enumerate() {
        let exact = phi_tilde(n, pk, params);
        max_mod_err = max_mod_err.max((v.norm() - exact.norm()).abs());
        if exact.norm() > best.1 {
            best = (k, exact.norm());
        }
    }
    let k = best.0;
    let gamma = (vt[k] / phi_tilde(n, p[k], params)).arg();
    (gamma, max_mod_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_values() {
        assert_eq!(hermite_polynomial(0, 3.7), 1.0);
        assert_eq!(hermite_polynomial(1, 0.5), 1.0);
        assert_eq!(hermite_polynomial(3, 1.0), -4.0);
        assert_eq!(hermite_polynomial(4, 0.0), 12.0);
    }

    #[test]
    fn ground_state_value() {
        let v = phi(0, 0.0, &BasisParams::standard());
        assert!((v.re - PI.powf(-0.25)).abs() < 1e-15);
        let v = phi_tilde(0, 0.0, &BasisParams::standard());
        assert!((v.re - PI.powf(-0.25)).abs() < 1e-15);
    }

    #[test]
    fn direct_and_scaled_agree_at_switch() {
        for &t in &[-3.1, -0.4, 0.0, 1.7, 5.2] {
            let n = DIRECT_LIMIT - 1;
            let d = hermite_function(n, t);
            let s = scaled_hermite_function(n, t);
            assert!((d - s).abs() < 1e-12 * (1.0 + d.abs()), "t={t}: {d} vs {s}");
        }
    }

    #[test]
    fn high_degree_is_finite() {
        let v = hermite_function(400, 25.0);
        assert!(v.is_finite());
        assert!(hermite_function(400, 40.0).abs() < 1e-30);
    }

    #[test]
    fn params_validation() {
        assert!(BasisParams::new(0.0, 0.0, 0.0).is_err());
        assert!(BasisParams::new(0.0, 0.0, -1.0).is_err());
        let p = BasisParams::new(1.0, 2.0, 2.0).unwrap();
        assert_eq!(p.a() * p.b(), 0.25);
    }

    #[test]
    fn grid_validation() {
        let g = uniform_grid(-1.0, 1.0, 5);
        assert!(validate_grid(&g).is_ok());
        assert!(validate_grid(&[0.0, 1.0, 3.0]).is_err());
        assert!(validate_grid(&[1.0, 0.0]).is_err());
    }
}
