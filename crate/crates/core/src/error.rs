use std::path::PathBuf;

use thiserror::Error;

/// A state or flux that violates the physical admissibility constraints.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhysicsError {
    #[error("nonpositive density {0}")]
    NonPositiveDensity(f64),
    #[error("nonpositive pressure {0}")]
    NonPositivePressure(f64),
    #[error("negative internal energy {0}")]
    NegativeInternalEnergy(f64),
    #[error("non-finite state component")]
    NonFinite,
    #[error("degenerate Roe-mean sound speed (c^2 = {0})")]
    DegenerateSoundSpeed(f64),
    #[error("non-finite numerical flux")]
    NonFiniteFlux,
    #[error("ratio of specific heats must exceed 1, got {0}")]
    InvalidGamma(f64),
    #[error("vacuum generated by the Riemann data")]
    Vacuum,
    #[error("shock Mach number must exceed 1, got {0}")]
    SubsonicShock(f64),
    #[error("step limit of {0} reached")]
    StepLimit(u64),
}

/// Misuse of the library: bad parameters, unknown names, malformed input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message} (`{text}`)")]
    Parse {
        line: usize,
        text: String,
        message: String,
    },
    #[error("unknown test case `{0}`")]
    UnknownCase(String),
    #[error("invalid value for {key}: {message}")]
    Invalid { key: &'static str, message: String },
}

impl ConfigError {
    pub(crate) fn invalid(key: &'static str, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            key,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed data: {message}")]
    Format { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
