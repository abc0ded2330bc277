//! File formats, reports and rendering on top of `screening-curves`.

pub mod catalog;
pub mod format;
pub mod report;
pub mod scenario;
pub mod svg;

use screening_curves::Error as MathError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Math(MathError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        if is_validation(&e) {
            CliError::Invalid(e.to_string())
        } else {
            CliError::Math(e)
        }
    }
}

/// Errors caused by the caller's input rather than by the mathematics.
pub fn is_validation(e: &MathError) -> bool {
    matches!(
        e,
        MathError::OutOfRange { .. }
            | MathError::InvalidScenario { .. }
            | MathError::UndefinedRatio(_)
            | MathError::TooFewSamples(_)
            | MathError::NotInterior { .. }
    )
}

impl CliError {
    /// 1 for parse and validation failures, 2 for mathematical ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 2,
            _ => 1,
        }
    }
}
