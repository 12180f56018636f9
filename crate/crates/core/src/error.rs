use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge (estimate {value:e}, error estimate {error:e})")]
    Quadrature { value: f64, error: f64 },

    #[error("action integrand is not integrable between {from} and {to}")]
    DivergentAction { from: f64, to: f64 },

    #[error("action density vanishes on a finite interval near g = {0}")]
    DegenerateAction(f64),

    #[error("ramp value {value} outside the model domain ({lo}, {hi})")]
    OutsideDomain { value: f64, lo: f64, hi: f64 },

    #[error("lowest eigenvalue is degenerate (splitting {0:e})")]
    DegenerateGroundState(f64),

    #[error(
        "Fock truncation not converged up to n_max = {n_max} (top-level population {population:e})"
    )]
    Truncation { n_max: usize, population: f64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("evolution did not converge under step doubling (last fidelity change {0:e})")]
    NotConverged(f64),

    #[error("fidelity threshold {0} not attained on grid")]
    ThresholdNotAttained(f64),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
