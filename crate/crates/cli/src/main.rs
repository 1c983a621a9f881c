//! `ripsmap`: generate datasets, compute Rips persistence, build Mapper graphs and run
//! the plain clusterers, writing every result to an output directory.

mod commands;
mod error;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::input::InputArgs;

#[derive(Debug, Parser)]
#[command(name = "ripsmap", version, about = "Persistent homology and Mapper for point clouds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic dataset: points.csv, labels.csv (when labeled) and metadata.json.
    Generate(GenerateArgs),
    /// Rips persistence: diagram, barcode and Betti-curve files.
    Persist(PersistArgs),
    /// Mapper graph as JSON and Graphviz DOT.
    Mapper(MapperArgs),
    /// Cluster the points directly: assignment CSV plus a JSON summary.
    Cluster(ClusterArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Seed for every random choice (generators, subsampling, k-means).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory receiving the outputs; created if missing.
    #[arg(long)]
    out_dir: PathBuf,
    /// Output formats, comma separated. Defaults depend on the command.
    #[arg(long, value_enum, value_delimiter = ',')]
    format: Vec<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Dot,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    input: input::GeneratorArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct PersistArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    common: CommonArgs,
    /// Largest simplex dimension in the filtration.
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    /// Rips threshold. Required above 64 points; otherwise the point-set diameter.
    #[arg(long)]
    max_eps: Option<f64>,
    #[arg(long, default_value = "euclidean")]
    metric: String,
    /// Also report the top dimension, whose deaths are truncated.
    #[arg(long)]
    all_dims: bool,
    /// Keep zero-persistence pairs in the diagram.
    #[arg(long)]
    include_ephemeral: bool,
    /// Number of evenly spaced thresholds in betti.csv.
    #[arg(long, default_value_t = 100)]
    betti_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClustererKind {
    SingleLinkage,
    Dbscan,
    Kmeans,
}

impl ClustererKind {
    fn name(self) -> &'static str {
        match self {
            ClustererKind::SingleLinkage => "single-linkage",
            ClustererKind::Dbscan => "dbscan",
            ClustererKind::Kmeans => "kmeans",
        }
    }
}

#[derive(Debug, Args)]
struct ClustererArgs {
    #[arg(long, value_enum)]
    clusterer: Option<ClustererKind>,
    /// DBSCAN neighborhood radius.
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    /// DBSCAN core threshold, the point itself included.
    #[arg(long, default_value_t = 5)]
    min_pts: usize,
    /// k-means cluster count; for single linkage, cut into exactly this many clusters.
    #[arg(long)]
    k: Option<usize>,
    /// Single linkage: histogram bins for the gap cut.
    #[arg(long, default_value_t = 10)]
    bins: usize,
}

#[derive(Debug, Args)]
struct MapperArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    common: CommonArgs,
    /// `coordinate:<axis>` or `pca:<k>` (k = 1 or 2).
    #[arg(long, default_value = "coordinate:0", conflicts_with = "lens_values")]
    lens: String,
    /// Precomputed lens values: a numeric CSV with one row per point.
    #[arg(long)]
    lens_values: Option<PathBuf>,
    /// Intervals per lens dimension.
    #[arg(long, default_value_t = 10)]
    intervals: usize,
    /// Fractional overlap of neighboring intervals, in [0, 1).
    #[arg(long, default_value_t = 0.3)]
    overlap: f64,
    #[command(flatten)]
    clustering: ClustererArgs,
    /// Largest nerve simplex dimension recorded.
    #[arg(long, default_value_t = 1)]
    nerve_dim: usize,
    #[arg(long, default_value = "euclidean")]
    metric: String,
    /// DOT fill color: `size`, `mean:<axis>` or `label:<name>`.
    #[arg(long, default_value = "size")]
    color_by: String,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    clustering: ClustererArgs,
    /// Single linkage: cut every merge above this height (instead of --k or the gap rule).
    #[arg(long)]
    height: Option<f64>,
    #[arg(long, default_value = "euclidean")]
    metric: String,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let result = match &cli.command {
        Command::Generate(a) => commands::generate(a, &argv),
        Command::Persist(a) => commands::persist(a, &argv),
        Command::Mapper(a) => commands::mapper(a, &argv),
        Command::Cluster(a) => commands::cluster(a, &argv),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.code())
        }
    }
}
