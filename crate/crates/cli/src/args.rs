use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "tverberg",
    version,
    about = "Seeded experiments on polytopes, Tverberg-type witnesses and sphere maps"
)]
pub struct Cli {
    /// Add wall-clock runtimes to the report summary.
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build a polytope from a named family.
    Make(MakeArgs),
    /// Barycentric subdivision of the boundary and face-diameter decay.
    Subdivide(SubdivideArgs),
    /// Greedy spherical packing and its Voronoi cell diameter.
    Packing(PackingArgs),
    /// Search a polytope for vertex-disjoint faces with intersecting images.
    Search(SearchArgs),
    /// Count witnesses on cross-polytopes over seeded maps.
    CountCross(CountCrossArgs),
    /// Witnesses on cyclic polytopes from a Tverberg partition.
    Neighborly(NeighborlyArgs),
    /// Greedy witness for real-valued maps on triangle-free skeleta.
    D1(D1Args),
    /// Equal values on a regular orbit of a great circle.
    Bu(BuArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Simplex,
    Cross,
    Cube,
    Cyclic,
}

#[derive(Debug, Args, Serialize)]
pub struct MakeArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long = "dim", alias = "m")]
    pub dim: usize,
    /// Number of vertices (cyclic only).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SubdivideArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Decay table as CSV.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Subdivided complex as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct PackingArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20000)]
    pub pool: usize,
    #[arg(long, default_value_t = 20000)]
    pub samples: usize,
    /// Also build the tangent polytope and report its largest cell (dim 3).
    #[arg(long)]
    pub polytope: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub polytope: PathBuf,
    #[arg(long)]
    pub map: PathBuf,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub forbid: Option<usize>,
    /// Every witness instead of the first.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CountCrossArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// Count for this vertex only instead of every vertex.
    #[arg(long)]
    pub forbid: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub denom: i64,
    /// Per-trial counts as CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct NeighborlyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 1000)]
    pub denom: i64,
    /// Use this map instead of seeded ones.
    #[arg(long)]
    pub map: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct D1Args {
    #[arg(long)]
    pub polytope: PathBuf,
    /// Vertex values as a JSON list of "p/q" strings; seeded when absent.
    #[arg(long)]
    pub values: Option<PathBuf>,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub denom: i64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct BuArgs {
    /// Smooth map JSON; a seeded random map when absent.
    #[arg(long)]
    pub f: Option<PathBuf>,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub p: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
    #[arg(long, default_value_t = 5000)]
    pub max_iters: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
