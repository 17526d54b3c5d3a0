//! Command-line front end for `sdcg`.
//!
//! Everything lives behind [`run`] so the binary stays a one-liner and tests can drive
//! commands in-process with captured output.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::check_gradients_report;
pub use config::{Cli, Command, FileConfig};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const FAILURE: i32 = 2;
}

/// Parses `args` (including the program name) and runs the selected command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::OK,
                _ => exit::USAGE,
            };
            let rendered = e.render().to_string();
            if code == exit::OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match commands::dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit::USAGE
        }
    }
}
