//! Error classification for exit codes and the machine-readable error JSON.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 numeric failure.

use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Numeric(_) => "numeric",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Numeric(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    schema_version: &'a str,
    error: ErrorBody<'a>,
}

/// The error JSON printed to stderr on failure.
pub fn error_json(err: &CliError) -> String {
    serde_json::to_string(&ErrorReport {
        schema_version: cotag_core::SCHEMA_VERSION,
        error: ErrorBody {
            kind: err.kind(),
            message: err.message(),
        },
    })
    .expect("error report serializes")
}

impl From<cotag_core::Error> for CliError {
    fn from(err: cotag_core::Error) -> Self {
        use cotag_core::Error::*;
        match err {
            Ingest(_) | Graph(_) => CliError::Data(err.to_string()),
            DistFit(_) | Generator(_) | Cotag(_) | Analysis(_) => {
                CliError::Numeric(err.to_string())
            }
        }
    }
}

impl From<cotag_core::IngestError> for CliError {
    fn from(err: cotag_core::IngestError) -> Self {
        CliError::Data(err.to_string())
    }
}

impl From<cotag_core::GraphError> for CliError {
    fn from(err: cotag_core::GraphError) -> Self {
        CliError::Data(err.to_string())
    }
}

impl From<cotag_core::DistFitError> for CliError {
    fn from(err: cotag_core::DistFitError) -> Self {
        CliError::Numeric(err.to_string())
    }
}

impl From<cotag_core::GeneratorError> for CliError {
    fn from(err: cotag_core::GeneratorError) -> Self {
        CliError::Numeric(err.to_string())
    }
}

impl From<cotag_core::CotagError> for CliError {
    fn from(err: cotag_core::CotagError) -> Self {
        CliError::Numeric(err.to_string())
    }
}

impl From<cotag_core::AnalysisError> for CliError {
    fn from(err: cotag_core::AnalysisError) -> Self {
        CliError::Numeric(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Data(format!("i/o error: {err}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Data(format!("json error: {err}"))
    }
}
