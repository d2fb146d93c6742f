use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid config value at `{path}`: {value} ({reason})")]
    Invalid {
        path: String,
        value: String,
        reason: String,
    },

    #[error("could not place {count} UAVs with separation {d_min} m after {attempts} attempts")]
    SeparationUnsatisfiable {
        count: usize,
        d_min: f64,
        attempts: usize,
    },

    #[error("array radiates no power (all excitation currents are zero)")]
    ZeroPowerArray,

    #[error("direction undefined: points coincide")]
    CoincidentPoints,

    #[error("archive is empty")]
    EmptyArchive,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("{0}")]
    Metric(String),
}

impl Error {
    pub(crate) fn invalid(path: &str, value: impl ToString, reason: &str) -> Self {
        Error::Invalid {
            path: path.to_string(),
            value: value.to_string(),
            reason: reason.to_string(),
        }
    }
}
