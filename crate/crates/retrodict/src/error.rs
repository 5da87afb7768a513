//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by configuration validation, filter construction, and
/// estimation.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration field violated its bound. Carries the field name and
    /// the violated constraint.
    #[error("invalid config: field `{field}` {reason}")]
    InvalidConfig { field: String, reason: String },

    /// Cooperativity is undefined for an undamped oscillator.
    #[error("undamped oscillator {index}: cooperativity undefined; use the raw backaction diffusion rate")]
    UndampedCooperativity { index: usize },

    /// Resolved-sideband regime: the adiabatic cavity elimination is invalid.
    #[error("oscillator {index}: kappa = {kappa:.3e} <= 100 * gamma = {gamma:.3e}; resolved-sideband regime outside model validity")]
    ResolvedSideband { index: usize, kappa: f64, gamma: f64 },

    /// No probe light: the shot-noise floor diverges.
    #[error("no probe light (nbar = 0): infinite shot noise")]
    NoProbeLight,

    /// The normalization matrix is too ill-conditioned to invert safely.
    #[error("normalization matrix J ill-conditioned: cond(J) = {cond:.3e} exceeds {limit:.1e}")]
    IllConditioned { cond: f64, limit: f64 },

    /// A symmetric factorization failed (matrix not positive definite).
    #[error("factorization failed: {0}")]
    Factorization(String),

    /// A grid or dimension mismatch between two objects that must share one.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// The two-time noise matrix would exceed the configured memory budget.
    #[error("noise matrix of {nt} x {nt} samples needs {need_mb:.0} MB > budget {budget_mb:.0} MB; decimate by >= {suggested_decimation}")]
    NoiseMatrixBudget {
        nt: usize,
        need_mb: f64,
        budget_mb: f64,
        suggested_decimation: usize,
    },

    /// Not enough samples or shots for the requested statistic.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The broadened second-moment linear system is rank deficient.
    #[error("second-moment system rank-deficient: smallest singular value {smin:.3e}")]
    RankDeficient { smin: f64 },

    /// I/O and serialization failures.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failures.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    /// Malformed record container.
    #[error("record container: {0}")]
    RecordFormat(String),
}

impl Error {
    pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}
