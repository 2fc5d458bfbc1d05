//! Command-line front end: verification suites, report output, and the
//! `lattice` / `isometry` inspection commands.

pub mod commands;
pub mod output;
pub mod suite;

use std::process::ExitCode;

use og10_lattice::LatticeError;

pub use output::{emit_report, render_text, write_json_atomic};
pub use suite::{run_suite, SuiteName, SuiteSpec};

/// Anything that ends a command before a verdict exists.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Exit status for a finished verdict.
pub fn verdict_code(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Reports the error on stderr and returns status 2.
pub fn error_code(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

/// Runs `f` inside a rayon pool of `threads` workers, or inline in the
/// global pool when `threads` is `None`.
pub fn with_threads<R: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}
