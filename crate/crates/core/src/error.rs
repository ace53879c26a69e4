use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("Gamma pole: argument {0} is a non-positive integer")]
    Pole(Complex64),

    #[error("parameter {0} lies outside the open strip 0 < Re < 1 (margin 1e-9)")]
    OutsideStrip(Complex64),

    #[error("invalid grid range: {0}")]
    BadRange(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("resample target [{lo}, {hi}] is outside the source range [{src_lo}, {src_hi}]")]
    OutOfRange { lo: f64, hi: f64, src_lo: f64, src_hi: f64 },

    #[error("argument `{name}` must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("invalid regularization policy: {0}")]
    InvalidPolicy(String),

    #[error("extrapolation did not converge: {0}")]
    NonConvergence(String),

    #[error("input does not decay at the grid edge: |x(t_N)|·t_N = {edge:.3e} exceeds {limit:.3e}")]
    TailTooHeavy { edge: f64, limit: f64 },

    #[error("decay contract violated: {0}")]
    DecayContract(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("Hermite index {0} exceeds the supported budget of 200")]
    HermiteBudget(usize),

    #[error("density is not admissible: {0}")]
    Integrability(String),

    #[error("quadrature and inverse-Mellin synthesis disagree: relative L2 difference {0:.3e}")]
    PathDisagreement(f64),

    #[error("growth hypothesis ∫|φ|e^(πτ/2)dτ < ∞ cannot be confirmed: {0}")]
    HypothesisViolation(String),

    #[error("broad-sense residual does not decrease along the R schedule: {0:?}")]
    NonDecreasingResidual(Vec<f64>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Input and usage problems, as opposed to numerical contract violations.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::Csv(_)
                | Error::Config(_)
                | Error::BadRange(_)
                | Error::OutsideStrip(_)
                | Error::NonPositive { .. }
                | Error::InvalidPolicy(_)
                | Error::HermiteBudget(_)
        )
    }
}
