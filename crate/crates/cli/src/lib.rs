//! Spec-document front end for `cfwp`: parsing, evaluation, queries,
//! cross-checks and export.

pub mod build;
pub mod commands;
pub mod doc;

use thiserror::Error;

/// Exit codes: 0 accept/success, 1 reject/mismatch, 2 input error,
/// 3 hypothesis violation.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("reference error: {0}")]
    Reference(String),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("in definition `{name}`: {source}")]
    Definition {
        name: String,
        #[source]
        source: cfwp::Error,
    },
    #[error(transparent)]
    Core(#[from] cfwp::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Definition { source, .. } | CliError::Core(source) => source.exit_code(),
            _ => 2,
        }
    }
}

pub use build::{evaluate, Object};
pub use commands::{run_build, run_crosscheck, run_export, run_query, ExportKind, Outcome};
pub use doc::SpecDocument;
