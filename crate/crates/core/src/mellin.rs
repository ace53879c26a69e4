//! Mellin transform on the critical line.
//!
//! With `u = ln t` and `g(u) = f(eᵘ) e^{u/2}`,
//! `Φ(½ + iτ) = ∫ g(u) e^{iτu} du` is a Fourier integral. On a grid of `N`
//! nodes with step `h` the rectangle sum is evaluated by one FFT at
//! `τ_k = (k - N/2)·2π/(N h)`, and the inverse sum on the same grid is its
//! exact discrete inverse. No window is applied: inputs must already decay
//! at both ends of the log grid.

use crate::cstransform::{transform, TransformConfig};
use crate::grid::{l2_norm, CriticalLineFunction, GridFunction, RadialGrid};
use crate::special::{log_half_argument_ratio, phase_value};
use crate::{Error, Family, Result, Sign};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use std::f64::consts::TAU;

/// Default edge-decay tolerance, relative to the largest sample.
pub const DECAY_TOL: f64 = 1e-6;

fn check_even(n: usize) -> Result<()> {
    if !n.is_multiple_of(2) {
        return Err(Error::GridMismatch(format!(
            "the critical-line grid needs an even node count, got {n}"
        )));
    }
    Ok(())
}

/// `Φ(½ + iτ_k)` with the default decay tolerance.
pub fn mellin_forward(f: &GridFunction) -> Result<CriticalLineFunction> {
    mellin_forward_with(f, DECAY_TOL)
}

/// `Φ(½ + iτ_k) = ∫₀^∞ f(t) t^{-½+iτ_k} dt`, with `|g|` at both grid ends
/// required to be below `tol·max|g|`.
pub fn mellin_forward_with(f: &GridFunction, tol: f64) -> Result<CriticalLineFunction> {
    let grid = f.grid();
    let n = grid.len();
    check_even(n)?;
    let mut g: Vec<Complex64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| v * grid.t(j).sqrt())
        .collect();
    let peak = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let edge = g[0].norm().max(g[n - 1].norm());
    if edge > tol * peak {
        return Err(Error::DecayContract(format!(
            "|f(t)|·t^½ at the grid ends is {edge:.3e}, above {tol:.1e} of its peak {peak:.3e}"
        )));
    }
    for (j, v) in g.iter_mut().enumerate() {
        if j % 2 == 1 {
            *v = -*v;
        }
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut g);
    let h = grid.h();
    let tau_step = TAU / (n as f64 * h);
    let u_min = grid.u_min();
    let half = (n / 2) as f64;
    let values = g
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let tau = (k as f64 - half) * tau_step;
            v * Complex64::from_polar(h, tau * u_min)
        })
        .collect();
    CriticalLineFunction::new(tau_step, values)
}

/// `f(t) = (1/2π) ∫ Φ(½ + iτ) t^{-½-iτ} dτ` on `grid`, default tolerance.
pub fn mellin_inverse(phi: &CriticalLineFunction, grid: &RadialGrid) -> Result<GridFunction> {
    mellin_inverse_with(phi, grid, DECAY_TOL)
}

/// Inverse transform; `|Φ|` at both ends of the τ grid must be below
/// `tol·max|Φ|`. When `grid` is dual to the τ grid (`N = M`,
/// `h·Δτ = 2π/N`) the sum is one FFT, otherwise it is summed directly.
pub fn mellin_inverse_with(
    phi: &CriticalLineFunction,
    grid: &RadialGrid,
    tol: f64,
) -> Result<GridFunction> {
    let m = phi.len();
    let peak = phi.max_abs();
    let edge = phi.values()[0].norm().max(phi.values()[m - 1].norm());
    if edge > tol * peak {
        return Err(Error::DecayContract(format!(
            "|Φ| at the τ-grid ends is {edge:.3e}, above {tol:.1e} of its peak {peak:.3e}"
        )));
    }
    let n = grid.len();
    let dtau = phi.tau_step();
    let u_min = grid.u_min();
    let dual = n == m && ((n as f64 * grid.h() * dtau) / TAU - 1.0).abs() < 1e-12;
    let scale = dtau / TAU;
    let g: Vec<Complex64> = if dual {
        let mut buf: Vec<Complex64> = phi
            .values()
            .iter()
            .enumerate()
            .map(|(k, v)| v * Complex64::from_polar(1.0, -phi.tau(k) * u_min))
            .collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        buf.iter()
            .enumerate()
            .map(|(j, v)| if j % 2 == 1 { -v * scale } else { v * scale })
            .collect()
    } else {
        let taus = phi.taus();
        (0..n)
            .into_par_iter()
            .map(|j| {
                let u = grid.u(j);
                taus.iter()
                    .zip(phi.values())
                    .map(|(&tau, v)| v * Complex64::from_polar(1.0, -tau * u))
                    .sum::<Complex64>()
                    * scale
            })
            .collect()
    };
    let values = g
        .iter()
        .enumerate()
        .map(|(j, v)| v / grid.t(j).sqrt())
        .collect();
    GridFunction::new(*grid, values)
}

/// A grid function together with its Mellin image.
#[derive(Debug, Clone)]
pub struct MellinPair {
    pub source: GridFunction,
    pub image: CriticalLineFunction,
}

impl MellinPair {
    pub fn new(source: GridFunction) -> Result<Self> {
        let image = mellin_forward(&source)?;
        Ok(MellinPair { source, image })
    }
}

/// `| ‖f‖² - (1/2π)∫|Φ|² dτ | / ‖f‖²`, zero for `f = 0`.
pub fn parseval_residual(pair: &MellinPair) -> f64 {
    let lhs = l2_norm(&pair.source).powi(2);
    let rhs = pair.image.l2_norm_sqr() / TAU;
    if lhs == 0.0 {
        rhs
    } else {
        (lhs - rhs).abs() / lhs
    }
}

/// The multiplier relating the Mellin images of `x` and of its transform:
/// `2^{ζ-½}Γ(ζ/2)/Γ(½-ζ/2)` (cosine) or `2^{ζ-½}Γ(½+ζ/2)/Γ(1-ζ/2)` (sine)
/// at `ζ = ½ + iτ`.
pub fn titchmarsh_multiplier(family: Family, tau: f64) -> Complex64 {
    log_half_argument_ratio(family, Complex64::new(0.5, tau))
        .expect("no poles on the critical line")
        .exp()
}

/// Indices of the central half of the τ grid.
fn central(m: usize) -> std::ops::Range<usize> {
    m / 4..m - m / 4
}

/// `max |Φ_{Tx}(½+iτ) - Φ_x(½-iτ)·multiplier(τ)| / max|Φ_{Tx}|` over the
/// central half of the τ grid.
pub fn verify_multiplier_relation(
    x: &GridFunction,
    family: Family,
    cfg: &TransformConfig,
) -> Result<f64> {
    let tx = transform(family, x, cfg)?;
    let phi_x = mellin_forward(x)?;
    let phi_tx = mellin_forward(&tx)?;
    let scale = phi_tx.max_abs().max(phi_x.max_abs());
    if scale == 0.0 {
        return Ok(0.0);
    }
    let worst = central(phi_x.len())
        .into_par_iter()
        .map(|k| {
            let mirror = phi_x.mirror(k).expect("central indices have partners");
            let rhs = phi_x.values()[mirror] * titchmarsh_multiplier(family, phi_x.tau(k));
            (phi_tx.values()[k] - rhs).norm()
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst / scale)
}

/// `max |c(τ)Φ(½-iτ) ∓ c(-τ)Φ(½+iτ)| / max|Φ|` over the central half of
/// the τ grid; it vanishes exactly when `Tx = ±x`.
pub fn symmetry_defect(phi: &CriticalLineFunction, family: Family, sign: Sign) -> f64 {
    let scale = phi.max_abs();
    if scale == 0.0 {
        return 0.0;
    }
    let worst = central(phi.len())
        .map(|k| {
            let c = phase_value(family, phi.tau(k));
            let mirror = phi.values()[phi.mirror(k).expect("central")];
            (c * mirror - c.conj() * phi.values()[k] * sign.value()).norm()
        })
        .fold(0.0, f64::max);
    worst / scale
}

/// `max|f - g| / max|f|` on the nodes with `t` in `[lo, hi]`.
pub fn relative_max_error(f: &GridFunction, g: &GridFunction, lo: f64, hi: f64) -> f64 {
    let grid = f.grid();
    let mut peak = 0.0f64;
    let mut worst = 0.0f64;
    for j in 0..grid.len() {
        let t = grid.t(j);
        if t < lo || t > hi {
            continue;
        }
        peak = peak.max(f.values()[j].norm());
        worst = worst.max((f.values()[j] - g.values()[j]).norm());
    }
    if peak == 0.0 {
        worst
    } else {
        worst / peak
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gamma, phase};

    fn exp_grid() -> RadialGrid {
        // τ lands on multiples of 1/8
        let n = 8192;
        RadialGrid::from_log(-44.0, TAU / (n as f64 * 0.125), n).unwrap()
    }

    #[test]
    fn exponential_gives_gamma() {
        let g = exp_grid();
        let f = GridFunction::from_real_fn(g, |t| (-t).exp());
        let phi = mellin_forward(&f).unwrap();
        assert!((phi.tau_step() - 0.125).abs() < 1e-15);
        let mut worst = 0.0f64;
        for k in 0..phi.len() {
            let tau = phi.tau(k);
            if tau.abs() > 20.0 {
                continue;
            }
            let exact = gamma(Complex64::new(0.5, tau)).unwrap();
            worst = worst.max((phi.values()[k] - exact).norm());
        }
        assert!(worst < 1e-8, "{worst:e}");
    }

    #[test]
    fn round_trip_is_identity() {
        let g = exp_grid();
        let f = GridFunction::from_real_fn(g, |t| (-t).exp());
        let back = mellin_inverse(&mellin_forward(&f).unwrap(), &g).unwrap();
        assert!(relative_max_error(&f, &back, 0.01, 20.0) < 1e-12);
        let pair = MellinPair::new(f).unwrap();
        assert!(parseval_residual(&pair) < 1e-6);
    }

    #[test]
    fn zero_maps_to_zero() {
        let g = exp_grid();
        let phi = CriticalLineFunction::new(0.125, vec![Complex64::new(0.0, 0.0); 8192]).unwrap();
        let f = mellin_inverse(&phi, &g).unwrap();
        assert_eq!(f.max_abs(), 0.0);
    }

    #[test]
    fn non_dual_inverse_matches_fft() {
        let g = RadialGrid::from_log(-20.0, 40.0 / 512.0, 512).unwrap();
        let f = GridFunction::from_real_fn(g, |t| (-0.5 * t * t).exp() * t);
        let phi = mellin_forward(&f).unwrap();
        let shifted = RadialGrid::from_log(-3.0, 0.01, 600).unwrap();
        let direct = mellin_inverse(&phi, &shifted).unwrap();
        let exact = GridFunction::from_real_fn(shifted, |t| (-0.5 * t * t).exp() * t);
        assert!(relative_max_error(&exact, &direct, 0.05, 3.0) < 1e-6);
    }

    #[test]
    fn decay_contract_is_enforced() {
        let g = RadialGrid::new(1e-3, 10.0, 256).unwrap();
        let f = GridFunction::from_real_fn(g, |t| (-t).exp());
        assert!(matches!(mellin_forward(&f), Err(Error::DecayContract(_))));
        assert!(matches!(
            mellin_forward(&GridFunction::zeros(RadialGrid::new(1e-3, 10.0, 255).unwrap())),
            Err(Error::GridMismatch(_))
        ));
    }

    #[test]
    fn multiplier_is_phase_squared() {
        for family in Family::ALL {
            assert!((titchmarsh_multiplier(family, 0.0) - 1.0).norm() < 1e-15);
            for tau in [1.0, 5.0, 10.0, -3.3] {
                let m = titchmarsh_multiplier(family, tau);
                assert!((m.norm() - 1.0).abs() < 1e-12);
                let p = phase(family, tau).value;
                assert!((m - p * p).norm() < 1e-11);
            }
        }
    }
}
