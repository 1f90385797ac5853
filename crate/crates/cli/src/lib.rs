//! The `forcing` command line: argument parsing, input files, and
//! line-oriented or JSON reports.

mod args;
mod commands;
mod load;
mod report;

use std::ffi::OsString;

use clap::Parser;
use thiserror::Error;

pub use report::Report;

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed arguments, expressions or input files.
    #[error("{0}")]
    Parse(String),
    /// Well-formed input that violates a required property.
    #[error("{0}")]
    Violation(String),
    /// Fuel, search bound or size limit reached.
    #[error("{0}")]
    Exhausted(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Violation(_) => EXIT_VIOLATION,
            CliError::Exhausted(_) => EXIT_EXHAUSTED,
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(report) => Outcome {
            code: report.code(),
            stdout: report.render(cli.json),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
