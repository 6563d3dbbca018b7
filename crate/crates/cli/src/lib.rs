//! Batch front end for `effshift-core`.
//!
//! [`parse_and_run`] takes an argument vector and writes one report. Exit
//! codes: 0 when every requested answer was produced, 2 when some decision
//! ran out of budget, 1 on usage, configuration or input errors and on
//! rejected certificates.
//!
//! The environment variable `EFFSHIFT_EXTENSION_CAP` overrides the number of
//! search nodes a single co-language probe may visit.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
pub mod certs;
mod commands;
pub mod report;

pub use commands::{schedule_config, EXTENSION_CAP_ENV, EXTENSION_CAP_GUARD};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;

/// Parse `argv` (program name first), run the command and render its report
/// on `out`. Diagnostics go to `err`.
pub fn parse_and_run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_ERROR
                }
            };
        }
    };
    let (report, format) = match commands::run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    if let Err(e) = report.render(format, out, err) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_ERROR;
    }
    if report.rejected {
        EXIT_ERROR
    } else if report.exhausted {
        EXIT_EXHAUSTED
    } else {
        EXIT_OK
    }
}
