//! Library side of the `gmorita` command: workspace files, the three
//! commands and their reports.

pub mod commands;
pub mod report;
pub mod workspace;

pub use commands::{analyze, insert_context, morita, validate, Analysis, Level};
pub use report::{Entry, Report};
pub use workspace::{Kind, Workspace};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown key: {0}")]
    UnknownKey(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("{0}")]
    Compute(#[from] graded_morita::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::UnknownKey(_) | CliError::KindMismatch(_) => 3,
            CliError::Compute(_) => 1,
        }
    }
}
