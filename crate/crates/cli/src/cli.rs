//! Argument parsing and dispatch for the `probclone` binary.
//!
//! Exit codes are stable across commands: 0 success, 1 usage or parse
//! problems, 2 violated domain preconditions, 3 verification failure.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::commands::{
    cmd_bound, cmd_build, cmd_clone, cmd_filter_demo, cmd_verify, VerifyTolerances,
};
use crate::error::CliError;
use crate::report::RunReport;

/// Probabilistic cloning machines: build them, simulate them, bound them,
/// verify them.
#[derive(Debug, Parser)]
#[command(name = "probclone", version, about)]
pub struct Cli {
    /// Write the run report to this path instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Subcommand to run.
    #[command(subcommand)]
    pub command: Command,
}

/// The tool's subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Demonstrate that measurement-plus-postselection can decrease
    /// fidelity (three-level counterexample).
    FilterDemo,
    /// Build a cloning machine from two state files and write it out.
    Build {
        /// First designated state file.
        #[arg(long, value_name = "PATH")]
        psi0: PathBuf,
        /// Second designated state file.
        #[arg(long, value_name = "PATH")]
        psi1: PathBuf,
        /// Optional blank-copy state file (defaults to the first basis
        /// state).
        #[arg(long, value_name = "PATH")]
        sigma: Option<PathBuf>,
        /// Optional failure-branch AB state file of dimension n^2
        /// (defaults to the first basis state).
        #[arg(long = "phi-ab", value_name = "PATH")]
        phi_ab: Option<PathBuf>,
        /// Where to write the machine file.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Monte Carlo simulate probe measurements of a stored machine.
    Clone {
        /// Machine file to simulate.
        #[arg(long, value_name = "PATH")]
        machine: PathBuf,
        /// Which designated state to feed in (0 or 1).
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        input: u8,
        /// Number of shots (at least 1).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        /// Seed for the per-shot draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate the closed-form efficiency bounds at one overlap.
    Bound {
        /// Rephased overlap s in [0, 1).
        #[arg(long)]
        overlap: f64,
        /// Success-flag overlap k in [-1, 1]; adds the mean-efficiency
        /// bound to the report.
        #[arg(long = "flag-overlap")]
        flag_overlap: Option<f64>,
    },
    /// Re-check a stored machine: unitarity, designated images, Gram
    /// consistency, and the efficiency-bound audit.
    Verify {
        /// Machine file to verify.
        #[arg(long, value_name = "PATH")]
        machine: PathBuf,
        /// Ceiling for the unitarity residual.
        #[arg(long, default_value_t = 1e-10)]
        unitary_tol: f64,
        /// Ceiling for Gram and overlap deltas.
        #[arg(long, default_value_t = 1e-9)]
        gram_tol: f64,
        /// Ceiling for efficiency mismatches.
        #[arg(long, default_value_t = 1e-9)]
        eta_tol: f64,
        /// Ceiling for the flag-orthogonality violation.
        #[arg(long, default_value_t = 1e-9)]
        orthogonality_tol: f64,
        /// Ceiling for the designated-image residuals.
        #[arg(long, default_value_t = 1e-9)]
        mapping_tol: f64,
    },
}

/// Parses the process arguments, runs the command, writes the report, and
/// returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

/// Runs one parsed invocation and emits its report.
pub fn dispatch(cli: Cli) -> Result<i32, CliError> {
    let (report, code) = match cli.command {
        Command::FilterDemo => (cmd_filter_demo()?, 0),
        Command::Build {
            psi0,
            psi1,
            sigma,
            phi_ab,
            out,
        } => (
            cmd_build(&psi0, &psi1, sigma.as_deref(), phi_ab.as_deref(), &out)?,
            0,
        ),
        Command::Clone {
            machine,
            input,
            shots,
            seed,
        } => (cmd_clone(&machine, input, shots, seed)?, 0),
        Command::Bound {
            overlap,
            flag_overlap,
        } => (cmd_bound(overlap, flag_overlap)?, 0),
        Command::Verify {
            machine,
            unitary_tol,
            gram_tol,
            eta_tol,
            orthogonality_tol,
            mapping_tol,
        } => {
            let tolerances = VerifyTolerances {
                unitary: unitary_tol,
                gram: gram_tol,
                eta: eta_tol,
                orthogonality: orthogonality_tol,
                mapping: mapping_tol,
            };
            let (report, passed) = cmd_verify(&machine, tolerances)?;
            (report, if passed { 0 } else { 3 })
        }
    };
    emit(&report, cli.output.as_deref())?;
    Ok(code)
}

/// Writes the report to the chosen destination.
fn emit(report: &RunReport, output: Option<&std::path::Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|err| CliError::Domain(format!("cannot serialize report: {err}")))?;
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|err| CliError::Usage(format!("cannot write {}: {err}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
