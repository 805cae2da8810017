//! Command-line front end: single checks, range scans, oracle
//! cross-validation, lemma sweeps and kernel timing.
//!
//! Exit codes: 0 success or agreement, 1 usage or width error, 2 verification
//! violation.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::config::{parse_decimal, parse_jobs, OutputFormat, ScanConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wilsonx",
    version,
    about = "Extended Wilson criterion: residues, scans and oracle checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the criterion at a single (n, c).
    Check {
        #[arg(long, value_parser = parse_decimal)]
        n: u64,
        #[arg(long, value_parser = parse_decimal)]
        c: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Evaluate the criterion for every n in [from, to] at fixed c.
    Scan {
        #[arg(long, value_parser = parse_decimal)]
        c: u64,
        #[arg(long, value_parser = parse_decimal)]
        from: u64,
        #[arg(long, value_parser = parse_decimal)]
        to: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long, env = "WILSONX_JOBS", value_parser = parse_jobs)]
        jobs: Option<usize>,
        /// Stop at the first theory violation.
        #[arg(long)]
        fail_fast: bool,
    },
    /// Compare fast sums against subset enumeration for all n <= max.
    Oracle {
        #[arg(long, value_parser = parse_decimal, default_value = "12")]
        max: u64,
    },
    /// Sweep the supporting inequalities and the falling-factorial congruence.
    Lemmas {
        #[arg(long, value_parser = parse_decimal, default_value = "10000")]
        n_max: u64,
        #[arg(long, value_parser = parse_decimal, default_value = "200")]
        p_max: u64,
    },
    /// Time the truncated-product kernel and count its multiply-adds.
    Bench {
        #[arg(long, value_parser = parse_decimal)]
        n: u64,
        #[arg(long, value_parser = parse_decimal, default_value = "0")]
        c: u64,
        #[arg(long, value_parser = parse_decimal, default_value = "1")]
        reps: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Check { n, c, format } => commands::check(n, c, format, out, err),
        Command::Scan {
            c,
            from,
            to,
            format,
            jobs,
            fail_fast,
        } => {
            let config = ScanConfig {
                c,
                n_lo: from,
                n_hi: to,
                output_format: format,
                parallelism: jobs.unwrap_or_else(default_jobs),
                fail_fast,
            };
            commands::scan(&config, out, err)
        }
        Command::Oracle { max } => commands::oracle(max, out, err),
        Command::Lemmas { n_max, p_max } => commands::lemmas(n_max, p_max, out, err),
        Command::Bench { n, c, reps } => commands::bench(n, c, reps, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
