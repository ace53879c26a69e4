//! Numerical eigenspace splitting for the half-line cosine and sine transforms.
//!
//! The crate is organised bottom-up:
//!
//! - [`special`]: complex log-Gamma, the Gamma identities, the κ constants,
//!   the phase factors `c(τ)`, `s(τ)` and the closed forms of the
//!   power-oscillatory integrals.
//! - [`grid`]: log-uniform radial grids, sampled functions, norms, resampling
//!   and the CSV/JSON file formats.
//! - [`oscquad`]: the ε-damped and truncated regularizations of
//!   `∫₀^∞ {cos s, sin s} s^{ζ-1} ds` and their extrapolated limits.
//! - [`cstransform`]: the operators `C` and `S` on grid functions and the
//!   Hermite eigenbases.
//! - [`mellin`]: the Mellin transform on the critical line `Re ζ = ½`.
//! - [`eigenchain`]: generalized eigenfunctions `E±(t, a)`, the continuous
//!   chains `e±(t, τ)`, the synthesis operators `T±`, their adjoints and the
//!   eigenspace projectors.
//! - [`verify`]: the verification suites driven by the command line.
//! - [`cli`]: the `selfrecip` command-line surface.

pub mod cli;
pub mod cstransform;
pub mod eigenchain;
mod error;
pub mod grid;
pub mod mellin;
pub mod oscquad;
mod quad;
pub mod special;
pub mod verify;

use std::fmt;
use std::str::FromStr;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Which of the two half-line transforms an object belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cosine,
    Sine,
}

/// Eigenvalue `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Cosine, Family::Sine];
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// The eigenvalue as a real number.
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cosine => "cosine",
            Family::Sine => "sine",
        })
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cosine" | "cos" | "c" => Ok(Family::Cosine),
            "sine" | "sin" | "s" => Ok(Family::Sine),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "+" | "+1" => Ok(Sign::Plus),
            "minus" | "-" | "-1" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("unknown sign `{other}`"))),
        }
    }
}
