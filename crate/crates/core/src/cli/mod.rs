//! Command-line front end: configuration, orchestration and output.

mod args;
mod commands;
mod figures;
mod output;
mod selfcheck;

use std::path::PathBuf;

pub use args::{parse_config, parse_config_text, Cli, Command, Flags, Format, RunConfig, SimStatistic, TRange};
pub use commands::{execute, NamedRecord};
pub use output::{format_float, parse_csv, write_atomic, write_output, Cell, OutputRecord, Schema};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Clap(clap::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Library(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            },
            CliError::Usage(_) => 2,
            CliError::Config(_) => 3,
            CliError::Check(_) => 4,
            CliError::Io { .. } => 5,
            CliError::Library(e) => match e {
                crate::Error::Domain { .. } | crate::Error::NonFinite { .. } => 2,
                _ => 4,
            },
        }
    }
}

/// Parse, execute and write; returns the process exit code.
pub fn run(argv: &[String]) -> i32 {
    let result = parse_config(argv).and_then(|config| {
        let records = execute(&config)?;
        commands::emit(&config, &records)
    });
    match result {
        Ok(()) => 0,
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            CliError::Clap(e).exit_code()
        }
        Err(e) => {
            eprintln!("ginibre: {e}");
            e.exit_code()
        }
    }
}
