//! Command-line entry point.
//!
//! Subcommands:
//!
//! - `exotica run FILE` executes a scenario program (exit 0 all checks pass,
//!   1 some check failed, 2 parse or validation error);
//! - `exotica basis DIVISOR` prints the canonical basis of the function space;
//! - `exotica moduli MODEL DIVISOR` prints a deformation-space description.
//!
//! `--format machine` selects flat `key=value` output. `--seed` (or the
//! `EXOTICA_SEED` environment variable) and `--samples` control randomized
//! verification; the same seed always produces byte-identical output.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use exotica::cli::{run_basis, run_moduli, run_text, OutputFormat, RunOptions};

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

#[derive(Parser)]
#[command(name = "exotica", about = "Exact computations in the exotic surface geometries")]
struct Args {
    /// Output style: text or machine.
    #[arg(long, default_value = "text", global = true, value_parser = parse_format)]
    format: OutputFormat,

    /// RNG seed for randomized checks (falls back to EXOTICA_SEED, then 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Sample count per randomized check.
    #[arg(long, default_value_t = 8, global = true)]
    samples: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario file.
    Run { file: String },
    /// Print the canonical basis for a divisor, e.g. "2[0] + [1]".
    Basis { divisor: String },
    /// Describe a deformation space: MODEL is gd or gdp.
    Moduli { model: String, divisor: String },
}

fn seed_from_env() -> u64 {
    std::env::var("EXOTICA_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let options = RunOptions {
        format: args.format,
        seed: args.seed.unwrap_or_else(seed_from_env),
        samples: args.samples,
    };
    let outcome = match &args.command {
        Command::Run { file } => match std::fs::read_to_string(file) {
            Ok(text) => run_text(&text, &options),
            Err(io) => {
                eprintln!("cannot read {}: {}", file, io);
                return ExitCode::from(2);
            }
        },
        Command::Basis { divisor } => run_basis(divisor, options.format),
        Command::Moduli { model, divisor } => run_moduli(model, divisor, options.format),
    };
    for line in &outcome.lines {
        println!("{}", line);
    }
    ExitCode::from(outcome.exit_code as u8)
}
