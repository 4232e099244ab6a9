//! Command-line front end for `torbiv-core`: JSON documents, reports and
//! the subcommands of the `torbiv` binary.

pub mod commands;
pub mod document;
pub mod report;

use thiserror::Error;

/// Failures sorted by exit code.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable or malformed input, bad arguments. Exit code 2.
    #[error("{0}")]
    Parse(String),
    /// Well-formed input that fails a mathematical requirement. Exit code 1.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

/// What a command prints to stdout, and whether it counts as success.
#[derive(Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    pub fn success(text: String) -> Self {
        Output { text, ok: true }
    }
}
