//! `netsample` command-line front end.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netsample::eval::BudgetSpec;
use netsample::shortpath::Strategy;
use netsample::Visibility;

#[derive(Parser, Debug)]
#[command(name = "netsample", version, about = "Budgeted graph sampling experiments", args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Edge list, one "u v" pair per line.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Built-in evaluation graph (read from NETSAMPLE_EPINIONS / NETSAMPLE_SLASHDOT, else a seeded stand-in).
    #[arg(long, global = true, value_enum, conflicts_with = "graph")]
    pub dataset: Option<DatasetName>,
    #[arg(long, global = true)]
    pub directed: bool,
    /// `node_id label` file, or one of degree, in-degree, out-degree.
    #[arg(long, global = true, default_value = "degree")]
    pub labels: String,
    /// Master seed. A random one is drawn and recorded when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, env = "NETSAMPLE_OUTPUT_DIR", default_value = ".")]
    pub output_dir: PathBuf,
    /// self-only, nbr-degrees, nbr-degrees-labels or out-nbr-indeg.
    #[arg(long, global = true, default_value = "nbr-degrees-labels")]
    pub visibility: Visibility,
    /// Keep the whole graph instead of its largest connected component.
    #[arg(long, global = true)]
    pub no_lcc: bool,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetName {
    Epinions,
    Slashdot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print graph statistics.
    Stats,
    /// Write a synthetic graph as an edge list.
    Generate(GenerateArgs),
    /// Record one sample stream.
    Sample(SampleArgs),
    /// Monte Carlo NMSE of a node-label density estimator.
    EstimateNode(NodeArgs),
    /// Edge-label density estimates and their error.
    EstimateEdge(EdgeArgs),
    /// Top-degree node detection.
    Detect(DetectArgs),
    /// Short-path discovery between random node pairs.
    Shortpath(PathArgs),
    /// Node-density experiment driven by a key=value file.
    Eval(EvalArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SamplerArgs {
    /// uni, rw, fs or wrw.
    #[arg(long, default_value = "fs")]
    pub method: netsample::SamplingMethod,
    #[arg(long, default_value_t = 10)]
    pub walkers: usize,
    /// Absolute cost units or a fraction of |V| such as 0.001V.
    #[arg(long, default_value = "0.001V")]
    pub budget: BudgetSpec,
    /// Cost of one uniform node draw.
    #[arg(long, default_value_t = 1.0)]
    pub cost_c: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    /// Pay for walker starting points out of the budget.
    #[arg(long)]
    pub charge_seeds: bool,
    /// Charge a geometric number of UNI attempts instead of exactly c.
    #[arg(long)]
    pub stochastic_uni: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SampleArgs {
    #[command(flatten)]
    pub sampler: SamplerArgs,
    /// Record file name inside the output directory.
    #[arg(long, default_value = "stream.txt")]
    pub out: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeEstimatorArg {
    Simple,
    Neighbor,
    Mixture,
    DirectedNeighbor,
    OutNeighbor,
}

#[derive(Args, Debug, Clone)]
pub struct NodeArgs {
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[arg(long, value_enum, default_value = "mixture")]
    pub estimator: NodeEstimatorArg,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Subsets used to estimate the mixture variances.
    #[arg(long, default_value_t = 100)]
    pub subsets: usize,
    #[arg(long, default_value_t = 1000)]
    pub runs: usize,
    /// Estimate from a recorded stream instead of running trials.
    #[arg(long)]
    pub stream: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    /// key=value file; keys are long flag names. Flags on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub node: NodeArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeEstimatorArg {
    Traversal,
    TraversalDirected,
    Neighbor,
    NeighborDirected,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLabelsArg {
    DegreePair,
    LabelPair,
    OrderedLabelPair,
}

#[derive(Args, Debug, Clone)]
pub struct EdgeArgs {
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[arg(long, value_enum, default_value = "neighbor")]
    pub estimator: EdgeEstimatorArg,
    #[arg(long, value_enum, default_value = "degree-pair")]
    pub edge_labels: EdgeLabelsArg,
    #[arg(long, default_value_t = 100)]
    pub runs: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectMethod {
    Mxs,
    /// Expansion sampling, frontier crawls charged.
    Xs,
    /// Expansion sampling, frontier crawls free.
    XsFree,
    Wrw,
    /// Random walk, pool widened to the sampled nodes' neighbors.
    Rw,
    /// Random walk, sampled nodes only.
    RwSampled,
}

#[derive(Args, Debug, Clone)]
pub struct DetectArgs {
    #[arg(long, value_enum, default_value = "mxs")]
    pub method: DetectMethod,
    #[arg(long, default_value = "0.01V")]
    pub budget: BudgetSpec,
    #[arg(long, default_value_t = 100)]
    pub top: usize,
    /// Number of random starting nodes.
    #[arg(long, default_value_t = 50)]
    pub seeds: usize,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    /// Score directed graphs by in+out degree.
    #[arg(long)]
    pub directed_scores: bool,
}

#[derive(Args, Debug, Clone)]
pub struct PathArgs {
    /// rw, mxs, wrw or wrw:<beta>.
    #[arg(long, default_value = "mxs")]
    pub strategy: Strategy,
    /// Steps per walker.
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    PowerLaw,
    ErdosRenyi,
}

#[derive(Args, Debug, Clone)]
pub struct GenerateArgs {
    #[arg(long, value_enum, default_value = "power-law")]
    pub kind: GraphKind,
    #[arg(long, default_value_t = 10_000)]
    pub nodes: usize,
    #[arg(long, default_value_t = 2.5)]
    pub exponent: f64,
    #[arg(long, default_value_t = 2)]
    pub min_degree: usize,
    /// Edge probability for erdos-renyi.
    #[arg(long, default_value_t = 0.001)]
    pub p: f64,
    /// File name inside the output directory.
    #[arg(long, default_value = "graph.txt")]
    pub out: String,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let argv = match config::expand_eval_config(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(argv);
    match commands::dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
