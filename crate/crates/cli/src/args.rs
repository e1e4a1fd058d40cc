//! Command-line surface.
//!
//! Table defaults: 100,000 samples, dimensions {14, 22, 32}, spacing
//! indices {1, 3, 7, 11, rand}. The global seed defaults to 0 and may be
//! overridden by the `CUE_SEED` environment variable; an explicit
//! `--seed` wins over both.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cue_core::experiments::GapIndex;

pub const SEED_ENV_VAR: &str = "CUE_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "cue",
    about = "Haar-distributed unitary matrices and eigenangle spacing experiments",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Monte Carlo sample count (matrices per dimension)
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: u64,

    /// Global seed; defaults to $CUE_SEED or 0
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads (results are identical for any value)
    #[arg(long, global = true, default_value_t = 1, value_parser = at_least_one)]
    pub workers: usize,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output path (standard output when omitted)
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one Haar-distributed unitary matrix and print its entries
    Sample {
        #[arg(long, value_parser = parse_dim)]
        dim: usize,
    },
    /// Eigenangles and normalized spacings of one sampled matrix
    Spacings {
        #[arg(long, value_parser = parse_dim)]
        dim: usize,
    },
    /// Averages of fixed-index spacings delta_j over the ensemble
    Table1 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![14usize, 22, 32], value_parser = parse_dim)]
        dims: Vec<usize>,
        /// Comma-separated spacing indices; integers or "rand"
        #[arg(long, value_delimiter = ',', default_values_t = default_indices(), value_parser = parse_index)]
        indices: Vec<IndexArg>,
    },
    /// Lazy average (dropping the wrap-around gap) and wrap-around average
    Table2 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![14usize, 22, 32], value_parser = parse_dim)]
        dims: Vec<usize>,
    },
    /// Wrap-around mean vs mean squared spacing: two estimates of ~1.180
    WrapConstant {
        #[arg(long, value_delimiter = ',', default_values_t = vec![14usize, 22, 32], value_parser = parse_dim)]
        dims: Vec<usize>,
    },
    /// Lazy-average deficit vs dimension, with the 1 - c/M fit
    LazyScan {
        #[arg(long, value_delimiter = ',', default_values_t = vec![8usize, 16, 32, 64], value_parser = parse_dim)]
        dims: Vec<usize>,
    },
    /// Gap selection by uniform index vs uniform point vs the fixed point -pi
    PointBias {
        #[arg(long, value_parser = parse_dim)]
        dim: usize,
    },
    /// Eigenangle histograms of the corrected vs uncorrected QR samplers
    NaiveQr {
        #[arg(long, value_parser = parse_dim)]
        dim: usize,
        #[arg(long, default_value_t = 56, value_parser = at_least_one)]
        bins: usize,
    },
    /// Pooled histogram of all normalized spacings (plot-ready)
    Histogram {
        #[arg(long, value_parser = parse_dim)]
        dim: usize,
        #[arg(long, default_value_t = 50, value_parser = at_least_one)]
        bins: usize,
    },
}

/// Spacing-index argument: a fixed 1-based index or "rand".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexArg(pub GapIndex);

impl std::fmt::Display for IndexArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            GapIndex::Fixed(j) => write!(f, "{j}"),
            GapIndex::Random => write!(f, "rand"),
        }
    }
}

fn default_indices() -> Vec<IndexArg> {
    vec![
        IndexArg(GapIndex::Fixed(1)),
        IndexArg(GapIndex::Fixed(3)),
        IndexArg(GapIndex::Fixed(7)),
        IndexArg(GapIndex::Fixed(11)),
        IndexArg(GapIndex::Random),
    ]
}

fn parse_dim(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err("dim must be >= 1".to_string()),
        Ok(d) => Ok(d),
    }
}

fn at_least_one(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err("value must be >= 1".to_string()),
        Ok(v) => Ok(v),
    }
}

fn parse_index(s: &str) -> Result<IndexArg, String> {
    if s.eq_ignore_ascii_case("rand") {
        return Ok(IndexArg(GapIndex::Random));
    }
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err("index must be a positive integer or \"rand\"".to_string()),
        Ok(j) => Ok(IndexArg(GapIndex::Fixed(j))),
    }
}

/// Resolves the effective seed: `--seed`, else `$CUE_SEED`, else 0.
/// An unparsable environment value is a usage error.
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64, String> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| format!("{SEED_ENV_VAR} must be a 64-bit unsigned integer, got {v:?}")),
        Err(_) => Ok(0),
    }
}
