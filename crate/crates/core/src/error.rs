use thiserror::Error;

/// Crate-wide error type. Numeric payloads are reported in `f64` regardless
/// of the working scalar.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("series tolerance {tol:e} unreachable within {max_terms} terms")]
    SeriesDidNotConverge { tol: f64, max_terms: usize },

    #[error("state is not normalized: |norm^2 - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("truncation tail mass {tail:e} exceeds tolerance {tol:e}")]
    TailMassExceeded { tail: f64, tol: f64 },
}

impl Error {
    /// Stable machine-readable slug for CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::SeriesDidNotConverge { .. } => "series-did-not-converge",
            Error::NotNormalized { .. } => "not-normalized",
            Error::TailMassExceeded { .. } => "tail-mass-exceeded",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
