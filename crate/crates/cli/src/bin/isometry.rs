use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use og10_cli::commands;
use og10_cli::{error_code, CliError};
use serde_json::Value;

/// Inspect a finite-order isometry given as JSON.
#[derive(Parser, Debug)]
#[command(name = "isometry", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, discriminant action, invariant and coinvariant lattices.
    Analyze {
        /// `{"lattice": <lattice or name>, "matrix": <matrix>}`.
        #[arg(long)]
        file: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Analyze { file } => commands::analyze(&commands::read_isometry(&file)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let as_json = cli.json;
    match run(cli) {
        Ok(v) => {
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            } else {
                print!("{}", commands::render_plain(&v));
            }
            ExitCode::SUCCESS
        }
        Err(e) => error_code(&e),
    }
}
