mod commands;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Construct, verify and search for k-cordial labelings of uniform hypertrees.
#[derive(Debug, Parser)]
#[command(name = "hypercordial", version)]
struct Cli {
    /// Output format. Defaults to json, except for `zk` which prints plain text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// The inductive construction.
    Theorem,
    /// Exhaustive search.
    Brute,
    /// The construction where it applies, exhaustive search otherwise.
    Auto,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find a k-cordial labeling of a hypertree.
    Label {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = positive)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Search-node budget for exhaustive search.
        #[arg(long, value_parser = positive_u64, default_value_t = hypercordial::cordial::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check a given labeling. Exits 0 iff it is k-cordial.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated vertex labels, in vertex order.
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<usize>,
        #[arg(long, value_parser = positive)]
        k: usize,
    },
    /// Find l distinct elements of Z_k summing to a.
    Zk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        a: usize,
        /// Comma-separated elements that may not be used.
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<usize>,
    },
    /// Generate a random hypertree.
    Random {
        #[arg(long, value_parser = at_least_two)]
        p: usize,
        #[arg(long, value_parser = positive)]
        m: usize,
        #[arg(long)]
        seed: u64,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every hypertree with m edges of size p, up to isomorphism.
    Enumerate {
        #[arg(long, value_parser = at_least_two)]
        p: usize,
        #[arg(long, value_parser = positive)]
        m: usize,
        /// Write one numbered .ht file per hypertree into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force every small hypertree for every k in range.
    Explore {
        #[arg(long, value_parser = range)]
        p: RangeInclusive<usize>,
        #[arg(long, value_parser = range)]
        m: RangeInclusive<usize>,
        #[arg(long, value_parser = range)]
        k: RangeInclusive<usize>,
        #[arg(long, value_parser = positive_u64, default_value_t = hypercordial::cordial::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_parser = positive, default_value_t = 1)]
        jobs: usize,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn at_least_two(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v < 2 => Err("must be at least 2".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// `A..B` (inclusive), `A..=B`, or a single value `A`.
fn range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

/// How a command ended, besides printing its output.
pub enum Status {
    Success,
    /// The question had a negative answer: not cordial, infeasible,
    /// counterexample found.
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.format) {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
