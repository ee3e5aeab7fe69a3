//! Command-line front end for the racahkit verification suites.

pub mod args;
mod output;
mod suites;

use std::path::PathBuf;

use thiserror::Error;

pub use args::Cli;
pub use output::{compare_reports, BasisEntry, ReportEntry, RunConfig, SuiteReport};

/// Operator-level checks are capped at this `n` unless `RACAHKIT_MAX_N` says otherwise.
pub const DEFAULT_MAX_N: usize = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] racahkit_core::Error),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot read report {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

impl CliError {
    /// Every error is a configuration problem from the caller's point of view;
    /// failed identities are reported, not raised.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// The rendered output of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub pass: bool,
    pub rendered: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if let args::Command::Compare { a, b } = &cli.command {
        return compare_reports(a, b);
    }
    let report = suites::execute(cli)?;
    let rendered = match cli.global.emit {
        args::Emit::Json => report.to_json(),
        args::Emit::Text => report.to_text(),
    };
    Ok(Outcome { pass: report.pass, rendered })
}
