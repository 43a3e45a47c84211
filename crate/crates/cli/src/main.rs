//! `l1coh` command-line interface.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error, 3 no applicable bound other than the baseline.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use l1coh::config::Config;
use l1coh::Execution;

use args::{Cli, Command};

/// How a command finished when it did not hit an input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Violation,
    NoApplicableBound,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Violation => 1,
            Outcome::NoApplicableBound => 3,
        }
    }
}

const USAGE_EXIT: u8 = 2;

/// Shared settings from the global flags.
#[derive(Debug, Clone, Copy)]
pub struct Globals {
    pub json: bool,
    pub force: bool,
    pub exec: Execution,
    pub tolerance: f64,
}

fn globals(cli: &Cli) -> Result<Globals, String> {
    let mut cfg = Config::global();
    if let Some(tol) = cli.tolerance {
        if !tol.is_finite() || tol < 0.0 {
            return Err(format!(
                "--tolerance {tol} must be a finite non-negative number"
            ));
        }
        cfg.validity_tol = tol;
        Config::set_global(cfg);
    }
    Ok(Globals {
        json: cli.json,
        force: cli.force,
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        tolerance: cfg.validity_tol,
    })
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let g = globals(cli)?;
    match &cli.command {
        Command::Coherence { state } => commands::coherence::run(state, &g),
        Command::Bounds(a) => commands::bounds::run(a, &g),
        Command::Sweep(a) => commands::sweep::run(a, &g),
        Command::Random(a) => commands::random::run(a, &g),
        Command::Verify { self_test } => commands::verify::run(*self_test, &g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_EXIT)
        }
    }
}
