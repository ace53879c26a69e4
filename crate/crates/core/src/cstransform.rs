//! The half-line transforms
//!
//! ```text
//! (Cx)(t) = √(2/π) ∫₀^∞ cos(tξ) x(ξ) dξ,   (Sx)(t) = √(2/π) ∫₀^∞ sin(tξ) x(ξ) dξ
//! ```
//!
//! on log-grid functions, and the Hermite functions.
//!
//! The reference path is product integration: on each panel of six grid
//! intervals `x` is replaced by its degree-6 interpolant and the kernel is
//! integrated against it exactly through the moments
//! `μ_k(ω) = ∫_{-1}^{1} s^k e^{iωs} ds`. The sliver `[0, t_0]` takes `x`
//! as constant. Cost is `O(N²)`, spread over output rows with rayon.
//!
//! The fast path resamples onto a uniform `ξ` grid and applies a DCT-I or
//! DST-I through an FFT of the even or odd extension, then interpolates the
//! result back onto the log grid.

use crate::grid::{l2_norm, resample_order, GridFunction, RadialGrid};
use crate::quad::{gl20, lagrange_uniform};
use crate::{Error, Family, Result, Sign};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::f64::consts::{FRAC_2_PI, PI};

pub const HERMITE_BUDGET: usize = 200;
/// Environment variable overriding [`TransformConfig::tol`].
pub const TOL_ENV: &str = "SELFRECIP_TOL";

const PANEL: usize = 6;
const MIN_UNIFORM: usize = 1024;
/// Oversampling of the fast path's frequency grid relative to `t_hi`.
const FAST_OVERSAMPLING: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformMethod {
    ReferenceQuadrature,
    FastUniform,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TransformConfig {
    pub method: TransformMethod,
    /// Number of uniform intervals used by the fast path.
    pub uniform_count: usize,
    pub tol: f64,
    /// Run both paths and fail when they differ by more than `tol`.
    pub cross_check: bool,
}

impl Default for TransformConfig {
    fn default() -> Self {
        TransformConfig {
            method: TransformMethod::ReferenceQuadrature,
            uniform_count: 1 << 16,
            tol: 1e-6,
            cross_check: false,
        }
    }
}

impl TransformConfig {
    pub fn fast() -> Self {
        TransformConfig {
            method: TransformMethod::FastUniform,
            ..Self::default()
        }
    }

    /// Default configuration with `tol` taken from `SELFRECIP_TOL` if set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(text) = std::env::var(TOL_ENV) {
            cfg.tol = text
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{TOL_ENV}=`{text}` is not a number")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Config(format!("tol must lie in (0, 1), got {}", self.tol)));
        }
        let fast_used = self.method == TransformMethod::FastUniform || self.cross_check;
        if fast_used && self.uniform_count < MIN_UNIFORM {
            return Err(Error::Config(format!(
                "uniform_count must be at least {MIN_UNIFORM}, got {}",
                self.uniform_count
            )));
        }
        Ok(())
    }
}

/// `|x(t_N)|·t_N ≤ tol·max|x|`.
pub fn check_tail(x: &GridFunction, tol: f64) -> Result<()> {
    let n = x.grid().len();
    let edge = x.values()[n - 1].norm() * x.grid().t_hi();
    let limit = tol * x.max_abs();
    if edge > limit {
        return Err(Error::TailTooHeavy { edge, limit });
    }
    Ok(())
}

pub fn cosine_transform(x: &GridFunction, cfg: &TransformConfig) -> Result<GridFunction> {
    transform(Family::Cosine, x, cfg)
}

pub fn sine_transform(x: &GridFunction, cfg: &TransformConfig) -> Result<GridFunction> {
    transform(Family::Sine, x, cfg)
}

/// `C x` or `S x`, sampled on the grid of `x`.
pub fn transform(family: Family, x: &GridFunction, cfg: &TransformConfig) -> Result<GridFunction> {
    cfg.validate()?;
    check_tail(x, cfg.tol)?;
    let out = match cfg.method {
        TransformMethod::ReferenceQuadrature => reference(family, x),
        TransformMethod::FastUniform => fast(family, x, cfg.uniform_count)?,
    };
    if cfg.cross_check {
        let other = match cfg.method {
            TransformMethod::ReferenceQuadrature => fast(family, x, cfg.uniform_count)?,
            TransformMethod::FastUniform => reference(family, x),
        };
        let scale = l2_norm(&out).max(l2_norm(x));
        let diff = if scale == 0.0 {
            0.0
        } else {
            l2_norm(&out.sub(&other)?) / scale
        };
        if diff > cfg.tol {
            return Err(Error::PathDisagreement(diff));
        }
    }
    Ok(out)
}

/// `μ_k(ω) = ∫_{-1}^{1} s^k e^{iωs} ds`, `k = 0..=deg`.
fn moments(omega: f64, deg: usize, out: &mut [Complex64]) {
    if omega.abs() < 6.0 {
        moments_quadrature(omega, deg, out)
    } else {
        moments_recursive(omega, deg, out)
    }
}

fn moments_quadrature(omega: f64, deg: usize, out: &mut [Complex64]) {
    for m in out.iter_mut().take(deg + 1) {
        *m = Complex64::new(0.0, 0.0);
    }
    for (s, w) in gl20().on(-1.0, 1.0) {
        let e = Complex64::from_polar(w, omega * s);
        let mut p = 1.0;
        for m in out.iter_mut().take(deg + 1) {
            *m += e * p;
            p *= s;
        }
    }
}

// upward recursion, stable while k ≤ |ω|
fn moments_recursive(omega: f64, deg: usize, out: &mut [Complex64]) {
    let ep = Complex64::from_polar(1.0, omega);
    let em = ep.conj();
    let iw = Complex64::new(0.0, omega);
    out[0] = Complex64::new(2.0 * omega.sin() / omega, 0.0);
    for k in 1..=deg {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out[k] = (ep - em * sign) / iw - out[k - 1] * (k as f64) / iw;
    }
}

/// Monomial coefficients of the Lagrange basis on the given nodes:
/// `ℓ_i(s) = Σ_k coeff[i][k] s^k`.
fn lagrange_monomials(nodes: &[f64]) -> Vec<Vec<f64>> {
    let q = nodes.len();
    (0..q)
        .map(|i| {
            let mut poly = vec![1.0];
            let mut denom = 1.0;
            for (j, &sj) in nodes.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![0.0; poly.len() + 1];
                for (k, &c) in poly.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * sj;
                }
                poly = next;
                denom *= nodes[i] - sj;
            }
            poly.iter().map(|c| c / denom).collect()
        })
        .collect()
}

/// Panel geometry shared by every panel with `m` intervals: in the local
/// coordinate the nodes of a geometric panel do not depend on its position.
struct PanelShape {
    m: usize,
    coeffs: Vec<Vec<f64>>,
}

impl PanelShape {
    fn new(m: usize, h: f64) -> Self {
        let span = (m as f64 * h).exp_m1();
        let nodes: Vec<f64> = (0..=m)
            .map(|j| 2.0 * (j as f64 * h).exp_m1() / span - 1.0)
            .collect();
        PanelShape {
            m,
            coeffs: lagrange_monomials(&nodes),
        }
    }
}

fn reference(family: Family, x: &GridFunction) -> GridFunction {
    let grid = *x.grid();
    let n = grid.len();
    let nodes = grid.nodes();
    let xs = x.values();
    let full = PanelShape::new(PANEL, grid.h());
    let rem = (n - 1) % PANEL;
    let last = (rem > 0).then(|| PanelShape::new(rem, grid.h()));
    let mut panels: Vec<(usize, &PanelShape)> = (0..(n - 1) / PANEL)
        .map(|p| (p * PANEL, &full))
        .collect();
    if let Some(shape) = &last {
        panels.push((n - 1 - rem, shape));
    }
    panels.retain(|&(start, shape)| {
        xs[start..=start + shape.m]
            .iter()
            .any(|v| *v != Complex64::new(0.0, 0.0))
    });
    let x0 = xs[0];
    let t0 = nodes[0];
    let norm = FRAC_2_PI.sqrt();

    let values = nodes
        .par_iter()
        .map(|&t| {
            let mut mu = [Complex64::new(0.0, 0.0); PANEL + 1];
            let mut acc = match family {
                Family::Cosine => x0 * ((t * t0).sin() / t),
                Family::Sine => x0 * (2.0 * (0.5 * t * t0).sin().powi(2) / t),
            };
            for &(start, shape) in &panels {
                let a = nodes[start];
                let b = nodes[start + shape.m];
                let c = 0.5 * (a + b);
                let half = 0.5 * (b - a);
                moments(t * half, shape.m, &mut mu);
                let phase = Complex64::from_polar(1.0, t * c);
                let mut kern = [0.0; PANEL + 1];
                for (k, slot) in kern.iter_mut().enumerate().take(shape.m + 1) {
                    let z = phase * mu[k];
                    *slot = match family {
                        Family::Cosine => z.re,
                        Family::Sine => z.im,
                    };
                }
                for (i, coeff) in shape.coeffs.iter().enumerate() {
                    let w: f64 = coeff.iter().zip(&kern).map(|(a, b)| a * b).sum();
                    acc += xs[start + i] * (w * half);
                }
            }
            acc * norm
        })
        .collect();
    GridFunction::new(grid, values).expect("same length")
}

fn fast(family: Family, x: &GridFunction, uniform_count: usize) -> Result<GridFunction> {
    let grid = *x.grid();
    let t_hi = grid.t_hi();
    let m = uniform_count;
    // frequency grid reaches 2·t_hi; ξ grid spans FAST_OVERSAMPLING·t_hi
    let delta = PI / (2.0 * t_hi);
    let span = m as f64 * delta;
    if span < FAST_OVERSAMPLING * t_hi {
        return Err(Error::Config(format!(
            "uniform_count {m} is too small for t_hi = {t_hi}: need at least {}",
            (FAST_OVERSAMPLING * t_hi / delta).ceil()
        )));
    }
    let t_lo = grid.t_lo();
    let x_lo = x.values()[0];
    let last = (grid.len() - 1) as f64;
    let samples: Vec<Complex64> = (0..=m)
        .map(|k| {
            let xi = k as f64 * delta;
            if xi > t_hi {
                Complex64::new(0.0, 0.0)
            } else if xi < t_lo {
                match family {
                    Family::Cosine => x_lo,
                    Family::Sine => x_lo * (xi / t_lo),
                }
            } else {
                let pos = grid.position(xi).clamp(0.0, last);
                lagrange_uniform(x.values(), pos, 8)
            }
        })
        .collect();
    let len = 2 * m;
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    match family {
        Family::Cosine => {
            buf[..=m].copy_from_slice(&samples);
            for k in 1..m {
                buf[len - k] = samples[k];
            }
        }
        Family::Sine => {
            for k in 1..m {
                buf[k] = samples[k];
                buf[len - k] = -samples[k];
            }
        }
    }
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let factor = match family {
        Family::Cosine => Complex64::new(0.5, 0.0),
        Family::Sine => Complex64::new(0.0, 0.5),
    } * (FRAC_2_PI.sqrt() * delta);
    let spectrum: Vec<Complex64> = buf[..=m].iter().map(|v| v * factor).collect();
    let dt = PI / span;
    let values = (0..grid.len())
        .map(|j| lagrange_uniform(&spectrum, grid.t(j) / dt, 8))
        .collect();
    GridFunction::new(grid, values)
}

/// `h_k(t) = e^{t²/2} d^k/dt^k e^{-t²}` at a single point.
pub fn hermite_value(k: usize, t: f64) -> Result<f64> {
    if k > HERMITE_BUDGET {
        return Err(Error::HermiteBudget(k));
    }
    let h0 = (-0.5 * t * t).exp();
    if k == 0 {
        return Ok(h0);
    }
    let mut prev = h0;
    let mut cur = -2.0 * t * h0;
    for j in 2..=k {
        let next = -2.0 * t * cur - 2.0 * (j - 1) as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `h_k` sampled on `grid`, via `h_k = -2t h_{k-1} - 2(k-1) h_{k-2}`.
pub fn hermite(k: usize, grid: &RadialGrid) -> Result<GridFunction> {
    if k > HERMITE_BUDGET {
        return Err(Error::HermiteBudget(k));
    }
    let values = (0..grid.len())
        .map(|j| hermite_value(k, grid.t(j)).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(*grid, values)
}

/// Transform and eigenvalue for which `h_k|ℝ₊` is an eigenfunction.
pub fn hermite_eigen(k: usize) -> (Family, Sign) {
    match k % 4 {
        0 => (Family::Cosine, Sign::Plus),
        1 => (Family::Sine, Sign::Plus),
        2 => (Family::Cosine, Sign::Minus),
        _ => (Family::Sine, Sign::Minus),
    }
}

/// `| ‖Tx‖² - ‖x‖² | / ‖x‖²`, zero for `x = 0`.
pub fn parseval_residual(family: Family, x: &GridFunction, cfg: &TransformConfig) -> Result<f64> {
    let nx = l2_norm(x);
    if nx == 0.0 {
        return Ok(0.0);
    }
    let tx = transform(family, x, cfg)?;
    let nt = l2_norm(&tx);
    Ok((nt * nt - nx * nx).abs() / (nx * nx))
}

/// `‖Tx ∓ x‖ / ‖x‖`.
pub fn eigen_residual(
    x: &GridFunction,
    family: Family,
    sign: Sign,
    cfg: &TransformConfig,
) -> Result<f64> {
    let nx = l2_norm(x);
    if nx == 0.0 {
        return Ok(0.0);
    }
    let tx = transform(family, x, cfg)?;
    let diff = tx.sub(&x.scale(Complex64::new(sign.value(), 0.0)))?;
    Ok(l2_norm(&diff) / nx)
}

/// `‖T(Tx) - x‖ / ‖x‖`.
pub fn involution_residual(family: Family, x: &GridFunction, cfg: &TransformConfig) -> Result<f64> {
    let nx = l2_norm(x);
    if nx == 0.0 {
        return Ok(0.0);
    }
    let once = transform(family, x, cfg)?;
    let twice = transform(family, &once, cfg)?;
    Ok(l2_norm(&twice.sub(x)?) / nx)
}

/// `(x ± Tx)/2`.
pub fn involution_projector(
    family: Family,
    sign: Sign,
    x: &GridFunction,
    cfg: &TransformConfig,
) -> Result<GridFunction> {
    let tx = transform(family, x, cfg)?;
    let s = sign.value();
    x.zip_with(&tx, |a, b| (a + b * s) * 0.5)
}

/// Resamples `x` with 8-point interpolation; used when a transform output is
/// needed on another grid.
pub fn resample_fine(x: &GridFunction, target: &RadialGrid) -> Result<GridFunction> {
    resample_order(x, target, 8)
}
