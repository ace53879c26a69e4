//! Complex Gamma machinery.
//!
//! Everything downstream inherits its accuracy from [`log_gamma`], which uses
//! the Stirling series after shifting the argument to `Re z ≥ 15`. The shift
//! is undone with a sum of principal logarithms, so the result is the
//! analytic log-Gamma (cut along the negative real axis), not the principal
//! logarithm of `Γ(z)`.

use crate::{Error, Family, Result};
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

/// Closest admissible distance of `Re a` from the strip boundary.
pub const STRIP_MARGIN: f64 = 1e-9;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const SHIFT_TARGET: f64 = 15.0;

// B_{2k} / (2k (2k-1)), k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// A complex parameter with `0 < Re a < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripPoint(Complex64);

impl StripPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        let re = value.re;
        if !(value.re.is_finite() && value.im.is_finite())
            || re <= STRIP_MARGIN
            || re >= 1.0 - STRIP_MARGIN
        {
            return Err(Error::OutsideStrip(value));
        }
        Ok(StripPoint(value))
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(Complex64::new(re, 0.0))
    }

    /// The point `½ + iτ` on the critical line.
    pub fn critical(tau: f64) -> Self {
        StripPoint(Complex64::new(0.5, tau))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    /// `1 - a`, which is again in the strip.
    pub fn reflect(self) -> Self {
        StripPoint(Complex64::new(1.0, 0.0) - self.0)
    }
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Analytic log-Gamma with the cut along the negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole(z));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Pole(z));
    }
    let shift = if z.re < SHIFT_TARGET {
        (SHIFT_TARGET - z.re).ceil() as usize
    } else {
        0
    };
    // Σ ln(z+k): the modulus from one running product, the argument summed
    let mut product = Complex64::new(1.0, 0.0);
    let mut log_scale = 0.0;
    let mut arg = 0.0;
    for k in 0..shift {
        let zk = z + k as f64;
        product *= zk;
        arg += zk.im.atan2(zk.re);
        let m = product.norm();
        if m > 1e100 {
            product /= m;
            log_scale += m.ln();
        }
    }
    let correction = Complex64::new(log_scale + product.norm().ln(), arg);
    let w = z + shift as f64;
    Ok(stirling(w) - correction)
}

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(STIRLING[STIRLING.len() - 1], 0.0);
    for &c in STIRLING.iter().rev().skip(1) {
        series = series * inv2 + c;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series * inv
}

/// `Γ(z)` as `exp(log_gamma(z))`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// Relative residuals of the classical Gamma identities and of the two
/// half-argument forms of `√(2/π)·{cos, sin}(πz/2)·Γ(z)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GammaResiduals {
    /// `Γ(z+1) = zΓ(z)`
    pub recurrence: f64,
    /// `Γ(z)Γ(1-z) = π / sin πz`
    pub reflection: f64,
    /// `Γ(z)Γ(z+½) = 2√π 2^{-2z} Γ(2z)`
    pub duplication: f64,
    /// cosine half-argument form
    pub cosine_form: f64,
    /// sine half-argument form
    pub sine_form: f64,
}

impl GammaResiduals {
    pub fn max(&self) -> f64 {
        [
            self.recurrence,
            self.reflection,
            self.duplication,
            self.cosine_form,
            self.sine_form,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// The three classical identities only.
    pub fn classical(&self) -> [f64; 3] {
        [self.recurrence, self.reflection, self.duplication]
    }
}

fn rel(lhs: Complex64, rhs: Complex64) -> f64 {
    let scale = lhs.norm();
    if scale == 0.0 {
        (lhs - rhs).norm()
    } else {
        (lhs - rhs).norm() / scale
    }
}

/// Evaluates both sides of each Gamma identity at `z` and returns the
/// residuals normalized by the magnitude of the left side.
pub fn verify_gamma_identities(z: Complex64) -> Result<GammaResiduals> {
    let one = Complex64::new(1.0, 0.0);
    let g = gamma(z)?;
    let recurrence = rel(gamma(z + 1.0)?, z * g);

    let lhs = g * gamma(one - z)?;
    let reflection = rel(lhs, PI / (z * PI).sin());

    let lhs = g * gamma(z + 0.5)?;
    let rhs = 2.0 * PI.sqrt() * (-2.0 * z * LN_2).exp() * gamma(2.0 * z)?;
    let duplication = rel(lhs, rhs);

    let cosine_form = rel(
        cosine_power_form(z)?,
        half_argument_ratio(Family::Cosine, z)?,
    );
    let sine_form = rel(sine_power_form(z)?, half_argument_ratio(Family::Sine, z)?);

    Ok(GammaResiduals {
        recurrence,
        reflection,
        duplication,
        cosine_form,
        sine_form,
    })
}

/// `√(2/π) cos(πz/2) Γ(z)`.
fn cosine_power_form(z: Complex64) -> Result<Complex64> {
    Ok((2.0 / PI).sqrt() * (z * (PI / 2.0)).cos() * gamma(z)?)
}

/// `√(2/π) sin(πz/2) Γ(z)`.
fn sine_power_form(z: Complex64) -> Result<Complex64> {
    Ok((2.0 / PI).sqrt() * (z * (PI / 2.0)).sin() * gamma(z)?)
}

/// `log` of `2^{z-½} Γ(z/2)/Γ(½-z/2)` (cosine) or
/// `2^{z-½} Γ(½+z/2)/Γ(1-z/2)` (sine).
pub(crate) fn log_half_argument_ratio(family: Family, z: Complex64) -> Result<Complex64> {
    let half = z * 0.5;
    let (num, den) = match family {
        Family::Cosine => (half, Complex64::new(0.5, 0.0) - half),
        Family::Sine => (half + 0.5, Complex64::new(1.0, 0.0) - half),
    };
    Ok((z - 0.5) * LN_2 + log_gamma(num)? - log_gamma(den)?)
}

/// `2^{z-½} Γ(z/2)/Γ(½-z/2)` (cosine) or `2^{z-½} Γ(½+z/2)/Γ(1-z/2)` (sine).
pub fn half_argument_ratio(family: Family, z: Complex64) -> Result<Complex64> {
    Ok(log_half_argument_ratio(family, z)?.exp())
}

/// The κ constants of a family at `a`, with square roots chosen so that
/// their product is exactly one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaPair {
    pub kappa_a: Complex64,
    pub kappa_one_minus_a: Complex64,
    pub sqrt_kappa_a: Complex64,
    pub sqrt_kappa_one_minus_a: Complex64,
}

/// `κ(a) = ∫₀^∞ k(ξ) ξ^{-a} dξ` and `κ(1-a)` for `k = √(2/π){cos, sin}`.
///
/// `sqrt_kappa_one_minus_a` is the principal square root of `κ(1-a)` and
/// `sqrt_kappa_a` is its reciprocal.
pub fn kappa(family: Family, a: StripPoint) -> Result<KappaPair> {
    // κ(1-a) is the half-argument ratio evaluated at a
    let log_k1 = log_half_argument_ratio(family, a.value())?;
    let kappa_one_minus_a = log_k1.exp();
    let kappa_a = (-log_k1).exp();
    let sqrt_kappa_one_minus_a = kappa_one_minus_a.sqrt();
    let sqrt_kappa_a = sqrt_kappa_one_minus_a.inv();
    Ok(KappaPair {
        kappa_a,
        kappa_one_minus_a,
        sqrt_kappa_a,
        sqrt_kappa_one_minus_a,
    })
}

/// Unit-modulus phase factor `c(τ)` or `s(τ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFactor {
    pub tau: f64,
    pub value: Complex64,
}

/// `c(τ) = 2^{iτ/2} exp{i arg Γ(¼ + iτ/2)}`, `s(τ)` with `¾` in place of `¼`.
///
/// `arg Γ` is taken as the imaginary part of [`log_gamma`], without any
/// reduction modulo 2π.
pub fn phase(family: Family, tau: f64) -> PhaseFactor {
    PhaseFactor {
        tau,
        value: phase_value(family, tau),
    }
}

pub(crate) fn phase_value(family: Family, tau: f64) -> Complex64 {
    let base = match family {
        Family::Cosine => 0.25,
        Family::Sine => 0.75,
    };
    // base > 0, so log_gamma cannot hit a pole
    let arg = log_gamma(Complex64::new(base, 0.5 * tau))
        .map(|l| l.im)
        .unwrap_or(0.0);
    Complex64::from_polar(1.0, 0.5 * tau * LN_2 + arg)
}

/// `∫₀^∞ {cos s, sin s} s^{ζ-1} ds = {cos, sin}(πζ/2) Γ(ζ)`.
pub fn closed_form_power_integral(kernel: Family, zeta: StripPoint) -> Result<Complex64> {
    let z = zeta.value();
    let trig = match kernel {
        Family::Cosine => (z * (PI / 2.0)).cos(),
        Family::Sine => (z * (PI / 2.0)).sin(),
    };
    Ok(trig * gamma(z)?)
}
