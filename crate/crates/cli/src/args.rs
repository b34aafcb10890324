use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "tempoctrl", version, about = "Driver nodes and controllability of temporal networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a driver set achieving full control.
    Detect(DetectArgs),
    /// Remove edges progressively and track the controllable dimension.
    Attack(AttackArgs),
    /// Label every edge critical, ordinary or redundant.
    Classify(ClassifyArgs),
    /// Edge betweenness on the time-layered graph.
    Betweenness(BetweennessArgs),
    /// Write a synthetic temporal network.
    Generate(GenerateArgs),
    /// Controllable subspace dimension of a given driver set.
    Dimension(DimensionArgs),
    /// Time lazy greedy against plain greedy on generated networks.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InputArgs {
    /// Temporal edge list (`src dst ts` per line) or network JSON (`.json`).
    #[arg(long)]
    pub input: PathBuf,
    /// JSON descriptor with `resolution`, `directed` and `self_loops`; flags win.
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
    /// Width of one time step in timestamp units.
    #[arg(long)]
    pub resolution: Option<f64>,
    #[arg(long, overrides_with = "no_self_loops")]
    pub self_loops: bool,
    /// Drop state retention between consecutive steps.
    #[arg(long)]
    pub no_self_loops: bool,
    /// Treat each line as a contact in both directions.
    #[arg(long)]
    pub undirected: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output directory; results go to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmArg {
    Otaha,
    Greedy,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyArg {
    Random,
    Asc,
    Desc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelArg {
    Er,
    ScaleFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedStrategyArg {
    Random,
    Degree,
}

#[derive(Debug, Args, Serialize)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Algorithms to run; repeat or separate with commas.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [AlgorithmArg::Otaha])]
    pub algorithm: Vec<AlgorithmArg>,
    /// Shorthand for adding `brute` to the algorithms.
    #[arg(long)]
    pub brute_force: bool,
    /// Allow brute force above the node-count guard.
    #[arg(long)]
    pub allow_large: bool,
    /// Number of distinct lazy greedy driver sets to report.
    #[arg(long, default_value_t = 1)]
    pub solutions: usize,
    #[arg(long, value_enum, default_value_t = SeedStrategyArg::Degree)]
    pub seed_strategy: SeedStrategyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct AttackArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub strategy: Vec<StrategyArg>,
    /// Permutations averaged by the random strategy.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Spacing of sampled removal fractions.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Recompute betweenness after every removal step.
    #[arg(long)]
    pub adaptive: bool,
    /// Let shortest paths use state-retention links when scoring edges.
    #[arg(long)]
    pub retention_paths: bool,
    /// Driver set as `all` or comma-separated node labels; lazy greedy when omitted.
    #[arg(long)]
    pub drivers: Option<String>,
    /// Number of lazy greedy driver sets to attack when `--drivers` is omitted.
    #[arg(long, default_value_t = 1)]
    pub solutions: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Largest node count classified with exact minimum driver counts.
    #[arg(long, default_value_t = 16)]
    pub exact_threshold: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BetweennessArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long)]
    pub n: usize,
    /// Number of snapshots.
    #[arg(long)]
    pub t: usize,
    /// Edge probability (ER).
    #[arg(long)]
    pub p: Option<f64>,
    /// Mean degree per snapshot (scale-free).
    #[arg(long)]
    pub mean_degree: Option<f64>,
    /// Weight exponent of the static model.
    #[arg(long)]
    pub exponent: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub no_self_loops: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct DimensionArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// `all` or comma-separated node labels.
    #[arg(long)]
    pub drivers: String,
}

#[derive(Debug, Args, Serialize)]
pub struct BenchArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub t: usize,
    #[arg(long, default_value_t = 0.01)]
    pub p: f64,
    #[arg(long, default_value_t = 3)]
    pub instances: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
