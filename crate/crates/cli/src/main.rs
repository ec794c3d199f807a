//! `aecc`: construct, verify and simulate analog error-correcting codes.
//!
//! Exit codes: 0 success, 1 a verification or decoder-contract failure,
//! 2 a usage, parse or feasibility error.

mod bounds;
mod construct;
mod matrix_file;
mod report;
mod simulate;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use analog_ecc::Execution;
use anyhow::Context;
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "aecc", version, about = "Analog error-correcting codes for crossbar arrays")]
struct Cli {
    /// Worker threads for parallel loops (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// More logging (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a parity-check matrix and write it in text form.
    Construct(construct::Args),
    /// Run verifiers on a matrix file.
    Verify(verify::Args),
    /// Run a seeded decoder-contract campaign and write a CSV report.
    Simulate(simulate::Args),
    /// Evaluate closed-form bounds.
    Bounds(bounds::Args),
    /// Parameter summary of the code families.
    #[command(name = "report-table1")]
    ReportTable1(report::Args),
}

/// Outcome of a subcommand that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Runtime context shared by subcommands.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub exec: Execution,
}

pub fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let ctx = Ctx {
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    match cli.command {
        Command::Construct(a) => construct::run(a),
        Command::Verify(a) => verify::run(a, ctx),
        Command::Simulate(a) => simulate::run(a, ctx),
        Command::Bounds(a) => bounds::run(a),
        Command::ReportTable1(a) => report::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
