use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mincodes::bounds::{OutputFormat, BISECTION_TOLERANCE};
use mincodes::shortsearch::CANDIDATE_GUARD_N;

/// Lower bounds on the length of minimal linear codes.
///
/// Exit codes: 0 success (found / minimal / verified), 1 internal error,
/// 2 invalid input, 3 negative result (exhausted / not minimal / rejected).
#[derive(Debug, Parser)]
#[command(name = "mincodes", version)]
pub struct Cli {
    /// Output format; tables default to csv, search certificates to json.
    #[arg(long, global = true, value_parser = parse_format)]
    pub format: Option<OutputFormat>,

    /// Write to this file instead of stdout. A relative path is taken
    /// inside the output directory when one is set.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Directory for output files; each command then writes a file with a
    /// default name there.
    #[arg(long, global = true, env = "MINCODES_OUTPUT_DIR")]
    pub output_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn parse_threads(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("threads must be at least 1".into()),
        Ok(t) => Ok(t),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t <= mincodes::bounds::MAX_TOLERANCE {
        Ok(t)
    } else {
        Err(format!("tolerance must lie in (0, {}]", mincodes::bounds::MAX_TOLERANCE))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Asymptotic bound tables and curves.
    Bounds {
        #[command(subcommand)]
        command: BoundsCommand,
    },
    /// Exhaustive search for a binary minimal [3N, N+1] code.
    Search(SearchArgs),
    /// Minimality and weight report for a generator matrix file.
    Check {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Re-verify a search certificate.
    Certify {
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    /// MRRW crossing and closed-form epsilon for each q.
    Table {
        #[arg(long = "q-list", value_delimiter = ',', required = true)]
        q_list: Vec<u64>,
        #[arg(long, default_value_t = BISECTION_TOLERANCE, value_parser = parse_tolerance)]
        tolerance: f64,
    },
    /// Closed-form epsilon with its derived quantities.
    Epsilon {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, default_value_t = BISECTION_TOLERANCE, value_parser = parse_tolerance)]
        tolerance: f64,
    },
    /// Bound curves on a uniform grid, plus the crossing row.
    Curves {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    #[arg(long, default_value_t = 1, value_parser = parse_threads)]
    pub threads: usize,
    #[arg(long, default_value_t = CANDIDATE_GUARD_N)]
    pub max_n: usize,
    /// Search without the orbit reduction on rows after the second.
    #[arg(long)]
    pub no_orbit_pruning: bool,
    /// Search N ≡ 4 (mod 8) instead of applying the parity count.
    #[arg(long)]
    pub no_parity_shortcut: bool,
    /// Also write a found generator in matrix text format.
    #[arg(long)]
    pub matrix_out: Option<PathBuf>,
}
