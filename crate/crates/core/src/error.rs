use thiserror::Error;

use crate::model::DensityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown figure preset `{0}`")]
    UnknownPreset(String),

    #[error("phonon rate integral diverges: {0}")]
    Divergent(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("step size underflow at t = {t}: required step {step:e} is below the minimum")]
    StepUnderflow { t: f64, step: f64 },

    #[error("t·‖L‖ = {0:e} exceeds the exponential guard; subdivide the interval")]
    ExpOverflow(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(DensityReport),

    #[error("malformed matrix data: {0}")]
    Malformed(String),

    #[error("at grid point {index} (parameter value {value}): {source}")]
    AtGridPoint {
        index: usize,
        value: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Strips grid-point annotations to expose the underlying failure.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtGridPoint { source, .. } => source.root(),
            other => other,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Malformed(err.to_string())
    }
}
