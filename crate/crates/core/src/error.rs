use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// One violated invariant of an architecture spec.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub fields: Vec<String>,
    pub message: String,
}

impl Violation {
    pub fn new(fields: &[&str], message: impl Into<String>) -> Self {
        Self {
            fields: fields.iter().map(|f| f.to_string()).collect(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.fields.join(", "), self.message)
    }
}

/// Coarse grouping used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Validation,
    Io,
    Domain,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spec: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Validation(Vec<Violation>),

    #[error("resolution {resolution} is not a multiple of the required granularity {granularity}")]
    Granularity { resolution: u32, granularity: u32 },

    #[error("unknown architecture name `{0}`")]
    UnknownSpec(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate fit: all x values are identical")]
    DegenerateFit,

    #[error("power law with zero exponent is not invertible")]
    NotInvertible,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("metric mismatch: `{0}` vs `{1}`")]
    MetricMismatch(String, String),

    #[error("invalid curve `{label}`: {reason}")]
    InvalidCurve { label: String, reason: String },

    #[error("duplicate image_id `{0}`")]
    DuplicateImageId(String),

    #[error("invalid record: {0}")]
    InvalidRecord(String),

    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Validation(_) | Error::Granularity { .. } | Error::UnknownSpec(_) => {
                ErrorCategory::Validation
            }
            Error::Io(_) | Error::Parse { .. } => ErrorCategory::Io,
            _ => ErrorCategory::Domain,
        }
    }

    pub(crate) fn parse(origin: impl Into<String>, message: impl fmt::Display) -> Self {
        Error::Parse {
            origin: origin.into(),
            message: message.to_string(),
        }
    }
}
