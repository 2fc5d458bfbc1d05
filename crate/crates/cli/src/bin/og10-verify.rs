use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use num_rational::BigRational;
use og10_cli::{emit_report, error_code, run_suite, verdict_code, CliError, SuiteName, SuiteSpec};
use og10_lattice::report::parse_rational;

/// Exact verification suites for the lattice side of the OG10 argument.
#[derive(Parser, Debug)]
#[command(name = "og10-verify", version)]
struct Args {
    #[arg(value_enum)]
    suite: SuiteName,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Multiplier applied to the Rogers bounds in the second table run (>= 1).
    #[arg(long, value_parser = parse_factor)]
    safety_factor: Option<BigRational>,
    /// Worker threads for enumeration.
    #[arg(long)]
    threads: Option<usize>,
    /// Count all minimal vectors of the Leech lattice.
    #[arg(long)]
    kissing: bool,
}

fn parse_factor(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn run(args: Args) -> Result<bool, CliError> {
    let mut spec = SuiteSpec::new(args.suite);
    if let Some(f) = args.safety_factor {
        spec.safety_factor = f;
    }
    spec.kissing = args.kissing;
    spec.threads = args.threads;
    spec.json_path = args.json;
    let report = run_suite(&spec)?;
    emit_report(
        &report,
        spec.json_path.as_deref(),
        &mut std::io::stdout().lock(),
    )?;
    Ok(report.pass())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(args) {
        Ok(pass) => verdict_code(pass),
        Err(e) => error_code(&e),
    }
}
