use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sp6euler::report::Format;
use sp6euler::Error;

mod commands;

/// Sp(6,2)-equivariant weighted Euler characteristic of A3[2], computed from
/// scratch and checked against stored reference tables.
#[derive(Debug, Parser)]
#[command(name = "sp6euler", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Directory for cached class listings and character tables.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, default_value = "plain", value_parser = parse_format)]
    pub format: Format,
    /// More log output on stderr; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order and conjugacy classes of Sp(2g,2).
    Group {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        genus: u8,
    },
    /// Character table of Sp(2g,2) in canonical labels.
    Chartable {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        genus: u8,
    },
    /// Twisted point counts of n points on the projective line.
    Count {
        /// Number of points, 4 or 6.
        #[arg(long)]
        n: usize,
        /// Cycle type such as `3,3`, `(123)(456)` or `id`; all types if omitted.
        #[arg(long)]
        cycles: Option<String>,
        /// Also evaluate at q and count points over F_q by enumeration.
        #[arg(long)]
        q: Option<u32>,
    },
    /// Equivariant Poincaré polynomials of the triple product of elliptic
    /// curve moduli, or with `--n` the graded traces on n-pointed genus zero.
    Poincare {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Cohomology tables of the strata, in reference labels.
    Strata {
        /// One of Q, H3, A21, A111; all if omitted.
        stratum: Option<String>,
    },
    /// Weighted Euler characteristic of A3[2], by irreducible.
    Euler {
        /// A single irreducible, e.g. `1a` or `105b`.
        #[arg(long)]
        irrep: Option<String>,
    },
    /// Weighted Euler characteristic of A2[2] in the basis s_λ.
    A2,
    /// Recompute everything and compare with the stored tables.
    Verify,
}

/// Exit statuses.
pub mod status {
    pub const MISMATCH: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INTERNAL: u8 = 3;
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Usage(_) => status::USAGE,
        Error::Mismatch(_) => status::MISMATCH,
        Error::Internal(_) | Error::Corrupt(_) | Error::Io(_) => status::INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match commands::run(&cli) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
