//! Crate-wide error type.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A physical parameter or grid value is outside its domain.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: String, message: String },

    /// The adaptive integrator shrank its step below the allowed floor.
    #[error("step size underflow at t = {t} ps (dt = {dt:e} ps, floor = {floor:e} ps)")]
    StepSizeUnderflow { t: f64, dt: f64, floor: f64 },

    /// A density-matrix invariant was violated beyond tolerance during evolution.
    #[error("density matrix invariant `{quantity}` violated at t = {t} ps: {value:e} (limit {limit:e})")]
    InvariantViolation {
        quantity: &'static str,
        t: f64,
        value: f64,
        limit: f64,
    },

    /// The linear steady-state system has no solution (lossless polariton resonance).
    #[error("singular linear system: {0}")]
    SingularSystem(String),

    /// Configuration file could not be parsed; message carries line/field context.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
