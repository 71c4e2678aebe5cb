//! Command-line front end for `jbound_core`.
//!
//! Three subcommands: `invariants` (genus, cusps and elliptic points of
//! `X_H` and `X_G~`), `bound` (the same plus the height bound) and `tables`.

pub mod error;
pub mod job;
pub mod report;
pub mod tables;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use jbound_core::sl2::DEFAULT_ENUMERATION_CAP;

use crate::error::{exit, CliError};
use crate::job::{Family, JobArgs};
use crate::report::Command;

#[derive(Debug, Parser)]
#[command(
    name = "jbound",
    version,
    about = "Modular curve invariants and effective height bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Invariants of X_H and X_G~ and the applicability verdict.
    Invariants(JobArgs),
    /// Height bound for integral points with S-integral j-invariant.
    Bound(JobArgs),
    /// Invariants of standard families over a range of levels.
    Tables(TableArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 2)]
    pub from: u64,
    #[arg(long, default_value_t = 30)]
    pub to: u64,
    /// Families to tabulate; repeatable.
    #[arg(long, value_enum, default_values_t = [Family::Gamma0, Family::Gamma1, Family::Gamma])]
    pub family: Vec<Family>,
    /// Prime levels only.
    #[arg(long)]
    pub primes: bool,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
    #[arg(long)]
    pub json: bool,
}

fn execute(cmd: Cmd, out: &mut dyn Write) -> Result<i32, CliError> {
    let (command, args) = match cmd {
        Cmd::Invariants(a) => (Command::Invariants, a),
        Cmd::Bound(a) => (Command::Bound, a),
        Cmd::Tables(t) => {
            let rows = tables::table(t.from, t.to, &t.family, t.primes, t.cap)?;
            let text = if t.json {
                serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
            } else {
                tables::to_text(&rows)
            };
            let _ = out.write_all(text.as_bytes());
            return Ok(exit::OK);
        }
    };
    let report = report::run(command, &args.job()?)?;
    let text = if args.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    let _ = out.write_all(text.as_bytes());
    Ok(report.exit_code())
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::SPEC } else { exit::OK };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
