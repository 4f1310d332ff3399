use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rabipat::cli::{self, CliFailure, CmdOutcome};

#[derive(Parser)]
#[command(
    name = "rabipat",
    version,
    about = "Anisotropic Rabi model: pattern decomposition, exact diagonalization, and the parametrically driven simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON run configuration (strict schema; unknown keys rejected).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads for sweep evaluation (falls back to RABIPAT_THREADS).
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for the randomized property suites (validate only).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonalize one model instance and emit its low spectrum.
    Spectrum(CommonArgs),
    /// Sweep the anisotropic model with per-state pattern attribution.
    Patterns(CommonArgs),
    /// Map the gap over a (g, r) grid.
    PhaseDiagram(CommonArgs),
    /// Emit the closed-form phase quantities over a coupling grid.
    Analytic(CommonArgs),
    /// Run the cross-check suites and print the errata ledger.
    Validate(CommonArgs),
}

fn resolve_threads(args: &CommonArgs) -> usize {
    args.threads
        .or_else(|| {
            std::env::var("RABIPAT_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1)
        .max(1)
}

fn execute(command: &Command) -> Result<(CmdOutcome, PathBuf), CliFailure> {
    let (args, runner): (&CommonArgs, fn(&str, usize) -> Result<CmdOutcome, CliFailure>) =
        match command {
            Command::Spectrum(a) => (a, cli::run_spectrum),
            Command::Patterns(a) => (a, cli::run_patterns),
            Command::PhaseDiagram(a) => (a, cli::run_phase_diagram),
            Command::Analytic(a) => (a, cli::run_analytic),
            Command::Validate(a) => (a, |_, _| unreachable!("validate dispatched separately")),
        };
    let raw = fs::read_to_string(&args.config)
        .map_err(|e| CliFailure::Config(format!("cannot read {}: {e}", args.config.display())))?;

    let outcome = match command {
        Command::Validate(a) => cli::run_validate(&raw, a.seed)?,
        _ => runner(&raw, resolve_threads(args))?,
    };
    Ok((outcome, args.out.clone()))
}

fn main() -> ExitCode {
    let parsed = Cli::parse();
    match execute(&parsed.command) {
        Ok((outcome, out_path)) => {
            if let Err(e) = outcome.table.write_file(&out_path) {
                eprintln!("rabipat: cannot write {}: {e}", out_path.display());
                return ExitCode::from(2);
            }
            if let Some(report) = &outcome.report {
                print!("{report}");
            }
            ExitCode::from(outcome.exit as u8)
        }
        Err(failure) => {
            eprintln!("rabipat: {}", failure.message());
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
