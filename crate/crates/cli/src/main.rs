//! `hyperph`: persistence barcodes, features, diagrams and random forest
//! cross-validation for corpora of hypergraphs.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Error carrying its exit code: 1 for invalid data or classification
/// failures, 2 for I/O and parse errors.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn invalid(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: 1, error: error.into() }
    }

    pub fn io(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: 2, error: error.into() }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("HYPERPH_LOG", "info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Persist(a) => commands::persist(a),
        Command::Featurize(a) => commands::featurize(a),
        Command::Classify(a) => commands::classify(a),
        Command::Diagram(a) => commands::diagram(a),
        Command::EgoExtract(a) => commands::ego_extract(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
