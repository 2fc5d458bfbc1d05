use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args as ClapArgs, Parser, Subcommand};
use og10_cli::commands::{self, LatticeSource};
use og10_cli::{error_code, CliError};
use serde_json::Value;

/// Inspect named or user-supplied lattices.
#[derive(Parser, Debug)]
#[command(name = "lattice", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, signature, determinant, parity, minimal norm and roots.
    Info {
        /// One of u, a2, e8, og10, leech, lambda125, golay.
        #[arg(long)]
        name: String,
    },
    /// Count vectors with |norm| up to a bound.
    Shortest {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        bound: Option<u64>,
        /// Also report the number of minimal vectors.
        #[arg(long)]
        kissing: bool,
    },
    /// Discriminant group and its quadratic form.
    Disc {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(ClapArgs, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Catalog name.
    #[arg(long)]
    name: Option<String>,
    /// JSON file with a lattice `{"gram": ...}` or a bare matrix.
    #[arg(long)]
    gram: Option<PathBuf>,
}

impl Source {
    fn resolve(self) -> LatticeSource {
        match (self.name, self.gram) {
            (Some(n), _) => LatticeSource::Name(n),
            (None, Some(p)) => LatticeSource::GramFile(p),
            (None, None) => unreachable!("clap requires one source"),
        }
    }
}

fn run(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Info { name } => commands::info(&name),
        Command::Shortest {
            source,
            bound,
            kissing,
        } => {
            if bound.is_none() && !kissing {
                return Err(CliError::Usage(
                    "shortest needs --bound or --kissing".into(),
                ));
            }
            commands::shortest(&source.resolve().load()?, bound, kissing)
        }
        Command::Disc { source } => commands::disc(&source.resolve().load()?),
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
