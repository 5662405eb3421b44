//! `liouville`: CSV front end for the coefficient checks, trajectory runs and
//! stability sweeps.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical mismatch,
//! 2 on a usage error.

mod commands;
mod config;
mod format;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use config::{Cli, RunConfig, Sub};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] liouville::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(liouville::Error::InvalidArgument(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let mut buf = Vec::new();
    let passed = match cfg.sub {
        Sub::Coeffs { letters } => commands::cmd_coeffs(cfg, letters, &mut buf)?,
        Sub::Verify => commands::cmd_verify(cfg, &mut buf)?,
        Sub::Simulate => commands::cmd_simulate(cfg, &mut buf)?,
        Sub::Sweep => commands::cmd_sweep(cfg, &mut buf)?,
        Sub::Shadow => commands::cmd_shadow(cfg, &mut buf)?,
    };
    match &cfg.out {
        Some(path) => fs::write(path, &buf)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&buf)?;
            out.flush()?;
        }
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::from_cli(cli).and_then(|cfg| run(&cfg));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("liouville: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("liouville: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
