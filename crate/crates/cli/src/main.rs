//! `kac`: Kac polynomials of quivers from the command line.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cache::Cache;
use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "kac", version, about = "Exact Kac polynomials of quivers, their parametric forms and limits")]
struct Cli {
    /// Directory for cached results (default: the platform cache directory).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kac polynomial of a quiver at one dimension vector.
    Compute(ComputeArgs),
    /// Kac polynomial as a function of the multiplicities of some arrows.
    Param(ParamArgs),
    /// Limit power series as the varying multiplicities grow.
    Limit(LimitArgs),
    /// Limit of q^deg A(1/q) as the varying multiplicities grow.
    Reciprocal(LimitArgs),
    /// Compare valuations with the conjectured formula on a grid.
    Valuation(ValuationArgs),
    /// Dimension of a graded piece of a free Lie algebra.
    Witt(WittArgs),
    /// Normalized even/odd coefficient graphs and unimodality.
    Distribution(DistributionArgs),
    /// Counts of all / indecomposable representations derived from Kac polynomials.
    Counts(CountsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ComputeArgs {
    /// Quiver description (JSON).
    pub quiver: PathBuf,
    /// Dimension vector, comma separated in vertex order.
    #[arg(long)]
    pub dim: String,
    #[arg(long, value_enum, default_value_t = PathChoice::Moebius)]
    pub path: PathChoice,
    /// Check integrality, positivity, monicity and degree of the result.
    #[arg(long)]
    pub check: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathChoice {
    Moebius,
    Plethystic,
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    pub quiver: PathBuf,
    #[arg(long)]
    pub dim: String,
    /// Arrows whose multiplicity becomes symbolic (comma separated or repeated).
    #[arg(long, required = true, value_delimiter = ',')]
    pub vary: Vec<String>,
    /// Abort when an intermediate value holds more integer coefficients than this.
    #[arg(long, default_value_t = kac_core::parametric::DEFAULT_TERM_CAP)]
    pub term_cap: usize,
}

#[derive(Args, Debug, Clone)]
pub struct LimitArgs {
    #[command(flatten)]
    pub param: ParamArgs,
    /// Send the multiplicities to infinity along this ray (one entry per varying arrow).
    #[arg(long)]
    pub direction: Option<String>,
    /// Starting point of the ray (default all zero).
    #[arg(long, requires = "direction")]
    pub base: Option<String>,
    /// Let every varying multiplicity grow independently on a quiver with loops.
    #[arg(long)]
    pub assume_direction_free: bool,
    /// Divide by the valuation before taking the limit (implied by --direction).
    #[arg(long)]
    pub renormalize: bool,
    /// Last exponent of q to print.
    #[arg(long, default_value_t = 10)]
    pub order: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ValuationArgs {
    pub quiver: PathBuf,
    /// Every dimension vector up to this one is examined.
    #[arg(long)]
    pub dim_box: String,
    /// Multiplicity factors 1..=N for every arrow.
    #[arg(long, default_value_t = 2)]
    pub mult_box: u64,
}

#[derive(Args, Debug, Clone)]
pub struct WittArgs {
    #[arg(long)]
    pub dim: String,
}

#[derive(Args, Debug, Clone)]
pub struct DistributionArgs {
    pub quiver: PathBuf,
    #[arg(long)]
    pub dim: String,
    /// Also write the points as CSV to this file.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CountsArgs {
    pub quiver: PathBuf,
    /// Every dimension vector up to this one is reported.
    #[arg(long)]
    pub dim: String,
    #[arg(long, value_enum, default_value_t = Which::M)]
    pub which: Which,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// All representations up to isomorphism.
    M,
    /// Indecomposable representations up to isomorphism.
    I,
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let cache = (!cli.no_cache).then(|| Cache::new(cli.cache_dir.clone().unwrap_or_else(Cache::default_dir)));
    let json = cli.json;
    let (request, compute): commands::Prepared = match &cli.command {
        Command::Compute(a) => commands::compute(a, json)?,
        Command::Param(a) => commands::param(a, json)?,
        Command::Limit(a) => commands::limit(a, json, false)?,
        Command::Reciprocal(a) => commands::limit(a, json, true)?,
        Command::Valuation(a) => commands::valuation(a, json)?,
        Command::Witt(a) => commands::witt(a, json)?,
        Command::Distribution(a) => commands::distribution(a, json)?,
        Command::Counts(a) => commands::counts(a, json)?,
    };
    let cache = cache.zip(request.as_ref().map(Cache::key));
    if let Some((c, key)) = &cache {
        if let Some(hit) = c.get(key) {
            return Ok(hit);
        }
    }
    let out = compute()?;
    if let Some((c, key)) = &cache {
        if let Err(e) = c.put(key, &out) {
            eprintln!("warning: could not write cache entry in {}: {e}", c.dir().display());
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
