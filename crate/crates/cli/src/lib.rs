//! Command-line front end for certified Simpson quadrature.
//!
//! [`run`] is the whole program minus process I/O, so tests can drive it
//! in-process and inspect the exit code and both output streams.

pub mod args;
mod commands;
pub mod config;
pub mod report;

use clap::Parser;

use args::{Cli, Command};
use report::{Report, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_UNREACHABLE: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

/// Failure before a report could be produced.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

/// A finished report plus the exit code it calls for.
pub struct Completed {
    pub report: Report,
    pub code: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };

    match execute(&cli) {
        Ok(done) => {
            let mut stderr = String::new();
            for c in done
                .report
                .checks
                .iter()
                .filter(|c| c.status == Status::Warn)
            {
                stderr.push_str(&format!("warning: {}: {}\n", c.name, c.detail));
            }
            if done.code != EXIT_OK {
                for c in done
                    .report
                    .checks
                    .iter()
                    .filter(|c| c.status == Status::Fail)
                {
                    stderr.push_str(&format!("failed: {}: {}\n", c.name, c.detail));
                }
            }
            Outcome {
                code: done.code,
                stdout: done.report.render(cli.output),
                stderr,
            }
        }
        Err(e) => Outcome {
            code: e.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message),
        },
    }
}

pub fn execute(cli: &Cli) -> Result<Completed, CliError> {
    match &cli.command {
        Command::Bounds(a) => commands::bounds::run(cli, a),
        Command::Certify(a) => commands::certify::run(cli, a),
        Command::Verify(a) => commands::verify::run(cli, a),
        Command::Constants(a) => commands::constants::run(cli, a),
    }
}
