//! Generalized eigenfunctions, continuous eigenchains and the synthesis
//! operators built from them.
//!
//! For `a` in the strip,
//!
//! ```text
//! E±(t, a) = √κ(1-a) t^{-a} ± √κ(a) t^{a-1}
//! ```
//!
//! satisfies `T E± = ±E±` in the regularized sense. On the critical line the
//! two powers become `t^{-½∓iτ}` and the real combinations
//!
//! ```text
//! e+(t, τ) = (1/2√π) (t^{-½-iτ} c(τ) + t^{-½+iτ} c(-τ))
//! e-(t, τ) = (1/2i√π)(t^{-½-iτ} c(τ) - t^{-½+iτ} c(-τ))
//! ```
//!
//! (with `s(τ)` in place of `c(τ)` for the sine transform) are the chains.
//! `T±φ = ∫₀^∞ e±(·, τ) φ(τ) dτ` maps `L²(0, ∞)` isometrically onto the
//! `±1` eigenspace, and `T± T±*` is the orthogonal projector onto it.
//!
//! `T±φ` is computed two ways: by direct quadrature in `τ`, and by building
//! its Mellin image `Φ(½+iτ) = √π c(τ) φ(|τ|)` (minus: `(√π/i) sgn(τ) c(τ)
//! φ(|τ|)`) and inverting on the log grid. The adjoint reads `φ` back off
//! the Mellin image of `x`:
//! `T±*x(τ) = (c(τ)Φ_x(½-iτ) ± c(-τ)Φ_x(½+iτ)) / (2√π)`, divided by `i`
//! for the minus sign.

use crate::cstransform::{eigen_residual, TransformConfig};
use crate::grid::{inner_product, l2_norm, read_tau_csv, write_tau_csv, GridFunction, RadialGrid};
use crate::mellin::{mellin_forward, mellin_inverse, mellin_inverse_with, DECAY_TOL};
use crate::oscquad::truncated_at;
use crate::quad::{gl16, lagrange_uniform};
use crate::special::{kappa, phase_value, StripPoint};
use crate::{Error, Family, Result, Sign};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{FRAC_2_PI, PI, TAU};
use std::io::{Read, Write};

/// Disagreement between the two synthesis routes treated as a fault.
pub const PATH_TOL: f64 = 1e-5;

fn sqrt_pi() -> f64 {
    PI.sqrt()
}

/// `(family, sign, τ)` with `τ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainCoordinate {
    pub family: Family,
    pub sign: Sign,
    tau: f64,
}

impl ChainCoordinate {
    pub fn new(family: Family, sign: Sign, tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::NonPositive { name: "tau", value: tau });
        }
        Ok(ChainCoordinate { family, sign, tau })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// `E±(t, a)` as the pair of amplitudes on `t^{-a}` and `t^{a-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedEigenfunction {
    pub family: Family,
    pub sign: Sign,
    pub a: StripPoint,
    /// Coefficient of `t^{-a}`.
    pub amplitude_lower: Complex64,
    /// Coefficient of `t^{a-1}`.
    pub amplitude_upper: Complex64,
}

impl GeneralizedEigenfunction {
    pub fn new(family: Family, sign: Sign, a: StripPoint) -> Result<Self> {
        let k = kappa(family, a)?;
        Ok(GeneralizedEigenfunction {
            family,
            sign,
            a,
            amplitude_lower: k.sqrt_kappa_one_minus_a,
            amplitude_upper: k.sqrt_kappa_a * sign.value(),
        })
    }

    pub fn eval(&self, t: f64) -> Result<Complex64> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::NonPositive { name: "t", value: t });
        }
        let a = self.a.value();
        let lt = t.ln();
        Ok(self.amplitude_lower * (-a * lt).exp() + self.amplitude_upper * ((a - 1.0) * lt).exp())
    }
}

/// `E±(t, a)`. At `a = ½` the minus function vanishes identically and the
/// plus function is `2t^{-½}`.
pub fn evaluate_big_e(family: Family, sign: Sign, a: StripPoint, t: f64) -> Result<Complex64> {
    GeneralizedEigenfunction::new(family, sign, a)?.eval(t)
}

/// Amplitudes `(A, B)` with `e(t, τ) = A t^{-½-iτ} + B t^{-½+iτ}`.
pub fn chain_amplitudes(family: Family, sign: Sign, tau: f64) -> (Complex64, Complex64) {
    let c = phase_value(family, tau);
    let cm = c.conj();
    let k = 1.0 / (2.0 * sqrt_pi());
    match sign {
        Sign::Plus => (c * k, cm * k),
        Sign::Minus => {
            let ki = Complex64::new(0.0, -k);
            (c * ki, -cm * ki)
        }
    }
}

/// `e(t, τ)` before the imaginary rounding residue is discarded; any real
/// `τ` is accepted.
pub fn chain_value(family: Family, sign: Sign, t: f64, tau: f64) -> Complex64 {
    let (a, b) = chain_amplitudes(family, sign, tau);
    let lt = t.ln();
    let scale = t.sqrt().recip();
    let rot = Complex64::from_polar(1.0, -tau * lt);
    (a * rot + b * rot.conj()) * scale
}

/// `e±(t, τ)`, which is real.
pub fn evaluate_e(coord: ChainCoordinate, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::NonPositive { name: "t", value: t });
    }
    let v = chain_value(coord.family, coord.sign, t, coord.tau);
    debug_assert!(
        v.im.abs() <= 1e-13 * t.sqrt().recip().max(1.0),
        "imaginary residue {} at t = {t}",
        v.im
    );
    Ok(v.re)
}

/// Samples `φ(τ_k)`, `τ_k = k·tau_step`, `k ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainDensity {
    tau_step: f64,
    values: Vec<Complex64>,
}

impl ChainDensity {
    pub fn new(tau_step: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(tau_step > 0.0 && tau_step.is_finite()) {
            return Err(Error::NonPositive { name: "tau_step", value: tau_step });
        }
        if values.len() < 8 {
            return Err(Error::Integrability(format!(
                "need at least 8 density samples, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Integrability("density has non-finite samples".into()));
        }
        Ok(ChainDensity { tau_step, values })
    }

    /// Samples `f` on `[0, tau_max]`.
    pub fn from_fn(tau_step: f64, tau_max: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let count = (tau_max / tau_step).round() as usize + 1;
        Self::new(tau_step, (0..count).map(|k| f(k as f64 * tau_step)).collect())
    }

    pub fn tau_step(&self) -> f64 {
        self.tau_step
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tau(&self, k: usize) -> f64 {
        k as f64 * self.tau_step
    }

    pub fn tau_max(&self) -> f64 {
        self.tau(self.values.len() - 1)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// 8-point interpolation; zero beyond `tau_max`.
    pub fn eval(&self, tau: f64) -> Complex64 {
        let pos = tau.abs() / self.tau_step;
        let last = (self.values.len() - 1) as f64;
        if pos > last + 1e-9 {
            return Complex64::new(0.0, 0.0);
        }
        lagrange_uniform(&self.values, pos.min(last), 8)
    }

    fn trapezoid(&self, f: impl Fn(usize, Complex64) -> f64) -> f64 {
        let n = self.values.len();
        let mut s = 0.0;
        for (k, v) in self.values.iter().enumerate() {
            let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
            s += w * f(k, *v);
        }
        s * self.tau_step
    }

    pub fn l1_norm(&self) -> f64 {
        self.trapezoid(|_, v| v.norm())
    }

    pub fn l2_norm(&self) -> f64 {
        self.trapezoid(|_, v| v.norm_sqr()).sqrt()
    }

    /// `∫ |φ(τ)| e^{πτ/2} dτ` on the sample range.
    pub fn weighted_l1_norm(&self) -> f64 {
        self.trapezoid(|k, v| v.norm() * (PI * self.tau(k) / 2.0).exp())
    }

    /// `∫ conj(φ) ψ dτ` on a shared grid.
    pub fn inner_product(&self, other: &ChainDensity) -> Result<Complex64> {
        if self.values.len() != other.values.len()
            || (self.tau_step - other.tau_step).abs() > 1e-12 * self.tau_step
        {
            return Err(Error::GridMismatch("densities live on different τ grids".into()));
        }
        let n = self.values.len();
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let w = if k == 0 || k == n - 1 { 0.5 } else { 1.0 };
            s += self.values[k].conj() * other.values[k] * w;
        }
        Ok(s * self.tau_step)
    }

    /// CSV with header `tau,re,im`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let taus: Vec<f64> = (0..self.len()).map(|k| self.tau(k)).collect();
        write_tau_csv(out, &taus, &self.values)
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let (taus, values) = read_tau_csv(input)?;
        if taus.len() < 2 || taus[0] != 0.0 {
            return Err(Error::Parse("density rows must start at tau = 0".into()));
        }
        let step = taus[1];
        for (k, &tau) in taus.iter().enumerate() {
            if (tau - k as f64 * step).abs() > 1e-9 * step.max(tau) {
                return Err(Error::Parse(format!("tau column is not uniform at row {}", k + 1)));
            }
        }
        ChainDensity::new(step, values).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Rejects densities that have not decayed by the end of their grid.
fn check_density(phi: &ChainDensity) -> Result<()> {
    let peak = phi.max_abs();
    let edge = phi.values[phi.len() - 1].norm();
    if edge > 1e-6 * peak {
        return Err(Error::Integrability(format!(
            "|φ(τ_max)| = {edge:.3e} is not small against max|φ| = {peak:.3e}; extend the τ grid"
        )));
    }
    Ok(())
}

fn check_even_grid(grid: &RadialGrid) -> Result<()> {
    if !grid.len().is_multiple_of(2) {
        return Err(Error::GridMismatch(format!(
            "synthesis needs an even node count, got {}",
            grid.len()
        )));
    }
    Ok(())
}

/// Mellin image of `T±φ` on the τ grid dual to `grid`.
fn synthesis_image(
    family: Family,
    sign: Sign,
    phi: &ChainDensity,
    grid: &RadialGrid,
) -> Result<crate::grid::CriticalLineFunction> {
    let n = grid.len();
    let dtau = TAU / (n as f64 * grid.h());
    crate::grid::CriticalLineFunction::from_fn(dtau, n, |tau| {
        let c = phase_value(family, tau);
        let v = phi.eval(tau.abs()) * c * sqrt_pi();
        match sign {
            Sign::Plus => v,
            Sign::Minus => {
                if tau == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    v * Complex64::new(0.0, -tau.signum())
                }
            }
        }
    })
}

/// `T±φ` by Mellin inversion.
pub fn t_apply_mellin(
    family: Family,
    sign: Sign,
    phi: &ChainDensity,
    grid: &RadialGrid,
) -> Result<GridFunction> {
    check_even_grid(grid)?;
    let image = synthesis_image(family, sign, phi, grid)?;
    mellin_inverse(&image, grid)
}

/// Gauss–Legendre nodes in `τ` with the density and chain amplitudes
/// folded into two weights per node; nodes where `φ` is negligible are
/// dropped.
fn tau_rule(
    family: Family,
    sign: Sign,
    phi: &ChainDensity,
    width: f64,
) -> Vec<(f64, Complex64, Complex64)> {
    // samples below the noise floor of a Mellin-derived density are skipped
    let floor = 1e-13 * phi.max_abs();
    let last = phi.values.iter().rposition(|v| v.norm() > floor).unwrap_or(0);
    let tau_end = phi.tau((last + 8).min(phi.len() - 1));
    let panels = (tau_end / width).ceil().max(1.0) as usize;
    let step = tau_end / panels as f64;
    let rule = gl16();
    (0..panels)
        .flat_map(|p| rule.on(p as f64 * step, (p + 1) as f64 * step).collect::<Vec<_>>())
        .filter_map(|(tau, w)| {
            let f = phi.eval(tau);
            if f.norm() <= floor {
                return None;
            }
            let (a, b) = chain_amplitudes(family, sign, tau);
            Some((tau, a * f * w, b * f * w))
        })
        .collect()
}

fn synthesize_at(rule: &[(f64, Complex64, Complex64)], t: f64) -> Complex64 {
    let lt = t.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for &(tau, a, b) in rule {
        let rot = Complex64::from_polar(1.0, -tau * lt);
        acc += a * rot + b * rot.conj();
    }
    acc / t.sqrt()
}

/// `T±φ` by composite Gauss–Legendre quadrature in `τ`.
pub fn t_apply_quadrature(
    family: Family,
    sign: Sign,
    phi: &ChainDensity,
    grid: &RadialGrid,
) -> Result<GridFunction> {
    let u_abs = grid.u_min().abs().max(grid.u(grid.len() - 1).abs()).max(1.0);
    let rule = tau_rule(family, sign, phi, (3.0 / u_abs).min(0.25));
    let values = (0..grid.len())
        .into_par_iter()
        .map(|j| synthesize_at(&rule, grid.t(j)))
        .collect();
    GridFunction::new(*grid, values)
}

/// `(T±φ)(t)` at individual points by quadrature in `τ`.
pub fn t_apply_at(family: Family, sign: Sign, phi: &ChainDensity, ts: &[f64]) -> Vec<Complex64> {
    let u_abs = ts.iter().map(|t| t.ln().abs()).fold(1.0, f64::max);
    let rule = tau_rule(family, sign, phi, (3.0 / u_abs).min(0.25));
    ts.iter().map(|&t| synthesize_at(&rule, t)).collect()
}

/// Relative L² difference of the two synthesis routes.
pub fn path_disagreement(
    family: Family,
    sign: Sign,
    phi: &ChainDensity,
    grid: &RadialGrid,
) -> Result<f64> {
    let mellin = t_apply_mellin(family, sign, phi, grid)?;
    let quad = t_apply_quadrature(family, sign, phi, grid)?;
    let scale = l2_norm(&mellin);
    Ok(if scale == 0.0 {
        l2_norm(&quad)
    } else {
        l2_norm(&mellin.sub(&quad)?) / scale
    })
}

/// `T±φ = ∫₀^∞ e±(·, τ) φ(τ) dτ` on `grid`.
///
/// The returned samples come from Mellin inversion; the direct quadrature
/// is evaluated alongside and a relative L² difference above
/// [`PATH_TOL`] is reported as [`Error::PathDisagreement`].
pub fn t_apply(family: Family, sign: Sign, phi: &ChainDensity, grid: &RadialGrid) -> Result<GridFunction> {
    check_density(phi)?;
    let mellin = t_apply_mellin(family, sign, phi, grid)?;
    let quad = t_apply_quadrature(family, sign, phi, grid)?;
    let scale = l2_norm(&mellin);
    if scale > 0.0 {
        let diff = l2_norm(&mellin.sub(&quad)?) / scale;
        if diff > PATH_TOL {
            return Err(Error::PathDisagreement(diff));
        }
    }
    Ok(mellin)
}

/// Zero-padding factor applied before the Mellin transform in
/// [`t_adjoint`]; it refines the τ step so that the density interpolates
/// well next to `τ = 0`, where the stencil is one-sided.
pub const ADJOINT_REFINE: usize = 4;

/// `T±*x` on `τ ≥ 0` with step `2π/(ADJOINT_REFINE·N h)`; every τ of the
/// grid dual to the grid of `x` is a sample point.
pub fn t_adjoint(family: Family, sign: Sign, x: &GridFunction) -> Result<ChainDensity> {
    Ok(adjoint_with_peak(family, sign, x)?.0)
}

/// [`t_adjoint`] together with the peak of the Mellin image of `x`.
fn adjoint_with_peak(family: Family, sign: Sign, x: &GridFunction) -> Result<(ChainDensity, f64)> {
    let grid = x.grid();
    let n = grid.len();
    // keep the padded log coordinate well inside the f64 range
    let refine = (1..=ADJOINT_REFINE)
        .rev()
        .find(|&r| grid.u_min() + (r * n) as f64 * grid.h() < 700.0)
        .unwrap_or(1);
    let padded = if refine > 1 {
        let mut values = x.values().to_vec();
        values.resize(refine * n, Complex64::new(0.0, 0.0));
        GridFunction::new(RadialGrid::from_log(grid.u_min(), grid.h(), refine * n)?, values)?
    } else {
        x.clone()
    };
    let phi = mellin_forward(&padded)?;
    let m = phi.len();
    let half = m / 2;
    let k = 1.0 / (2.0 * sqrt_pi());
    let values = (half..m)
        .map(|idx| {
            let c = phase_value(family, phi.tau(idx));
            let mirror = phi.values()[phi.mirror(idx).expect("upper half has partners")];
            let here = phi.values()[idx];
            match sign {
                Sign::Plus => (c * mirror + c.conj() * here) * k,
                Sign::Minus => (c * mirror - c.conj() * here) * Complex64::new(0.0, -k),
            }
        })
        .collect();
    Ok((ChainDensity::new(phi.tau_step(), values)?, phi.max_abs()))
}

/// Synthesis of a density read off the Mellin image of another function
/// whose peak is `scale`. The decay contract is judged against that scale,
/// since the projection itself may be negligible.
fn synthesize_relative(
    family: Family,
    sign: Sign,
    phi: &ChainDensity,
    grid: &RadialGrid,
    scale: f64,
) -> Result<GridFunction> {
    check_even_grid(grid)?;
    let image = synthesis_image(family, sign, phi, grid)?;
    let m = image.len();
    let edge = image.values()[0].norm().max(image.values()[m - 1].norm());
    let peak = scale.max(image.max_abs());
    if edge > DECAY_TOL * peak {
        return Err(Error::DecayContract(format!(
            "|Φ| at the τ-grid ends is {edge:.3e}, above {DECAY_TOL:.1e} of the input peak {peak:.3e}"
        )));
    }
    mellin_inverse_with(&image, grid, 1.0)
}

/// `(T±*x)(τ) = ∫₀^∞ e±(t, τ) x(t) dt` by the grid quadrature, at given τ.
pub fn t_adjoint_direct(family: Family, sign: Sign, x: &GridFunction, taus: &[f64]) -> Vec<Complex64> {
    let grid = x.grid();
    // w_j x_j / √t_j, with the chain's t^{-½} folded in
    let weighted: Vec<(f64, Complex64)> = grid
        .weights()
        .iter()
        .zip(x.values())
        .enumerate()
        .map(|(j, (&w, v))| (grid.u(j), v * (w / grid.t(j).sqrt())))
        .collect();
    taus.par_iter()
        .map(|&tau| {
            let (a, b) = chain_amplitudes(family, sign, tau);
            weighted
                .iter()
                .map(|&(u, v)| {
                    let rot = Complex64::from_polar(1.0, -tau * u);
                    (a * rot + b * rot.conj()).re * v
                })
                .sum()
        })
        .collect()
}

/// `P± x = T±(T±* x)`.
pub fn projector_apply(family: Family, sign: Sign, x: &GridFunction) -> Result<GridFunction> {
    let (phi, scale) = adjoint_with_peak(family, sign, x)?;
    synthesize_relative(family, sign, &phi, x.grid(), scale)
}

/// Probe points and truncation radii for [`broad_sense_residual`].
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BroadSenseOptions {
    pub probes: Vec<f64>,
    pub r_schedule: Vec<f64>,
    /// Skip the growth hypothesis and the monotonicity requirement and just
    /// report what is observed.
    pub experimental: bool,
}

impl Default for BroadSenseOptions {
    fn default() -> Self {
        BroadSenseOptions {
            probes: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            r_schedule: [25.0, 50.0, 100.0, 200.0].iter().map(|k| k * PI).collect(),
            experimental: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BroadSenseReport {
    pub r_schedule: Vec<f64>,
    /// `max_t |x(t) ∓ √(2/π)∫₀^R k(tξ)x(ξ)dξ|` for each `R`.
    pub residuals: Vec<f64>,
    pub weighted_l1: f64,
    pub hypothesis_checked: bool,
}

impl BroadSenseReport {
    pub fn final_residual(&self) -> f64 {
        *self.residuals.last().expect("non-empty schedule")
    }
}

/// Numerical test of `∫|φ(τ)| e^{πτ/2} dτ < ∞`: the weighted samples must
/// be falling at the end of the grid and the extrapolated tail must be
/// small against the sum. It can reject a density, never certify one.
pub fn growth_check(phi: &ChainDensity) -> Result<f64> {
    let total = phi.weighted_l1_norm();
    let n = phi.len();
    let w = |k: usize| phi.values[k].norm() * (PI * phi.tau(k) / 2.0).exp();
    if !total.is_finite() {
        return Err(Error::HypothesisViolation("weighted norm overflows".into()));
    }
    let peak = (0..n).map(w).fold(0.0, f64::max);
    let last = w(n - 1);
    if last <= 1e-14 * peak {
        return Ok(total);
    }
    let back = n - 1 - (n / 10).max(1);
    let before = w(back);
    if last >= before {
        return Err(Error::HypothesisViolation(format!(
            "|φ(τ)|e^(πτ/2) grows from {before:.3e} to {last:.3e} over the end of the τ grid"
        )));
    }
    let rate = (before / last).ln() / (phi.tau(n - 1) - phi.tau(back));
    let tail = last / rate;
    if tail > 1e-3 * total {
        return Err(Error::HypothesisViolation(format!(
            "extrapolated tail {tail:.3e} of the weighted norm exceeds 1e-3 of {total:.3e}"
        )));
    }
    Ok(total)
}

/// Compares `x = T±φ` with its truncated transforms
/// `√(2/π)∫₀^R k(tξ) x(ξ) dξ` at a few probe points.
///
/// The truncated transform is reduced, by exchanging the order of
/// integration, to truncated power-oscillatory integrals:
/// `√(2/π)∫dτ φ(τ)[A t^{-½+iτ} I(½-iτ, tR) + B t^{-½-iτ} I(½+iτ, tR)]`
/// with `I(ζ, r) = ∫₀^r k(s) s^{ζ-1} ds`.
pub fn broad_sense_residual(
    phi: &ChainDensity,
    family: Family,
    sign: Sign,
    opts: &BroadSenseOptions,
) -> Result<BroadSenseReport> {
    if opts.r_schedule.is_empty() || opts.probes.is_empty() {
        return Err(Error::Config("broad-sense check needs probes and radii".into()));
    }
    if opts.r_schedule.windows(2).any(|w| w[1] <= w[0]) || opts.r_schedule[0] <= 0.0 {
        return Err(Error::InvalidPolicy("R schedule must be positive and increasing".into()));
    }
    if opts.probes.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(Error::NonPositive { name: "probe", value: f64::NAN });
    }
    let (weighted_l1, hypothesis_checked) = if opts.experimental {
        (phi.weighted_l1_norm(), false)
    } else {
        (growth_check(phi)?, true)
    };
    let x = t_apply_at(family, sign, phi, &opts.probes);
    let rule = tau_rule(family, sign, phi, 0.25);
    let norm = FRAC_2_PI.sqrt();
    // per τ node: contributions to B_R(t) for each (probe, R)
    let per_node: Vec<Vec<Complex64>> = rule
        .par_iter()
        .map(|&(tau, a, b)| -> Result<Vec<Complex64>> {
            let zeta = Complex64::new(0.5, -tau);
            let mut out = Vec::with_capacity(opts.probes.len() * opts.r_schedule.len());
            for &t in &opts.probes {
                let radii: Vec<f64> = opts.r_schedule.iter().map(|r| r * t).collect();
                let lower = truncated_at(family, zeta, &radii)?;
                let lt = t.ln();
                let tp = Complex64::from_polar(t.sqrt().recip(), tau * lt);
                let tm = Complex64::from_polar(t.sqrt().recip(), -tau * lt);
                for i in lower {
                    out.push((a * tp * i + b * tm * i.conj()) * norm);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let nr = opts.r_schedule.len();
    let mut residuals = vec![0.0f64; nr];
    for (p, xv) in x.iter().enumerate() {
        for (ri, res) in residuals.iter_mut().enumerate() {
            let idx = p * nr + ri;
            let b_r: Complex64 = per_node.iter().map(|v| v[idx]).sum();
            *res = res.max((xv - b_r * sign.value()).norm());
        }
    }
    if !opts.experimental {
        let floor = 1e-12 * x.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
        if residuals.windows(2).any(|w| w[1] > w[0] && w[1] > floor) {
            return Err(Error::NonDecreasingResidual(residuals));
        }
    }
    Ok(BroadSenseReport {
        r_schedule: opts.r_schedule.clone(),
        residuals,
        weighted_l1,
        hypothesis_checked,
    })
}

/// Residuals reported by [`decompose`], all relative to `‖x‖` (squared
/// where the quantity is quadratic).
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DecompositionResiduals {
    /// `‖x₊ + x₋ - x‖ / ‖x‖`
    pub reconstruction: f64,
    /// `|⟨x₊, x₋⟩| / ‖x‖²`
    pub orthogonality: f64,
    /// `|‖x₊‖² + ‖x₋‖² - ‖x‖²| / ‖x‖²`
    pub energy: f64,
    /// `‖Tx₊ - x₊‖ / ‖x‖`
    pub eigen_plus: f64,
    /// `‖Tx₋ + x₋‖ / ‖x‖`
    pub eigen_minus: f64,
    /// `‖T₊φ₊ - x₊‖ / ‖x‖` with `T₊` by direct quadrature
    pub synthesis_plus: f64,
    /// `‖T₋φ₋ - x₋‖ / ‖x‖` with `T₋` by direct quadrature
    pub synthesis_minus: f64,
}

impl DecompositionResiduals {
    pub fn entries(&self) -> [(&'static str, f64); 7] {
        [
            ("reconstruction", self.reconstruction),
            ("orthogonality", self.orthogonality),
            ("energy", self.energy),
            ("eigen_plus", self.eigen_plus),
            ("eigen_minus", self.eigen_minus),
            ("synthesis_plus", self.synthesis_plus),
            ("synthesis_minus", self.synthesis_minus),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub x_plus: GridFunction,
    pub x_minus: GridFunction,
    pub density_plus: ChainDensity,
    pub density_minus: ChainDensity,
    pub residuals: DecompositionResiduals,
}

/// Splits `x` into its components in the `±1` eigenspaces of the family's
/// transform, together with their chain coordinates `φ± = T±*x`.
pub fn decompose(x: &GridFunction, family: Family, cfg: &TransformConfig) -> Result<Decomposition> {
    cfg.validate()?;
    check_even_grid(x.grid())?;
    let nx = l2_norm(x);
    if nx == 0.0 {
        return Err(Error::Integrability("cannot decompose the zero function".into()));
    }
    let (density_plus, scale) = adjoint_with_peak(family, Sign::Plus, x)?;
    let density_minus = t_adjoint(family, Sign::Minus, x)?;
    let grid = x.grid();
    let x_plus = synthesize_relative(family, Sign::Plus, &density_plus, grid, scale)?;
    let x_minus = synthesize_relative(family, Sign::Minus, &density_minus, grid, scale)?;

    let reconstruction = l2_norm(&x_plus.add(&x_minus)?.sub(x)?) / nx;
    let orthogonality = inner_product(&x_plus, &x_minus)?.norm() / (nx * nx);
    let np = l2_norm(&x_plus);
    let nm = l2_norm(&x_minus);
    let energy = (np * np + nm * nm - nx * nx).abs() / (nx * nx);
    let eigen_plus = eigen_residual(&x_plus, family, Sign::Plus, cfg)? * np / nx;
    let eigen_minus = eigen_residual(&x_minus, family, Sign::Minus, cfg)? * nm / nx;
    let quad_plus = t_apply_quadrature(family, Sign::Plus, &density_plus, grid)?;
    let quad_minus = t_apply_quadrature(family, Sign::Minus, &density_minus, grid)?;
    let synthesis_plus = l2_norm(&quad_plus.sub(&x_plus)?) / nx;
    let synthesis_minus = l2_norm(&quad_minus.sub(&x_minus)?) / nx;
    Ok(Decomposition {
        x_plus,
        x_minus,
        density_plus,
        density_minus,
        residuals: DecompositionResiduals {
            reconstruction,
            orthogonality,
            energy,
            eigen_plus,
            eigen_minus,
            synthesis_plus,
            synthesis_minus,
        },
    })
}

/// Log grid on `[e^{-60}, e^{20}]` with 8192 nodes.
///
/// Synthesized functions tend to a constant (cosine) or vanish like `t`
/// (sine) as `t → 0`, so `x√t` is small at the left edge; the discrete
/// Mellin inverse wraps that edge onto the right one, where it is amplified
/// by `t_N` in the tail contract of the transforms. The asymmetric window
/// keeps `e^{(u_min + u_max)/2}` far below the contract tolerance.
pub fn chain_grid() -> RadialGrid {
    RadialGrid::from_log(-60.0, 80.0 / 8191.0, 8192).expect("valid grid")
}
