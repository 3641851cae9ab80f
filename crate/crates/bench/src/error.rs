use std::path::PathBuf;

use rwca_core::{FormatError, Violation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Format {
        context: String,
        #[source]
        source: FormatError,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("solution failed verification with {} violation(s)", .0.len())]
    Verification(Vec<Violation>),
    #[error("report: {0}")]
    Report(String),
}

impl BenchError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn format(context: impl Into<String>, source: FormatError) -> Self {
        BenchError::Format {
            context: context.into(),
            source,
        }
    }

    /// 2 for I/O failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Io { .. } => 2,
            _ => 1,
        }
    }
}
