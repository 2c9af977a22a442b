use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Single-layer QAOA landscapes, optimizers, a noisy statevector device and a
/// run-to-failure probe.
///
/// Every flag can also be set through an environment variable named
/// `QPROBE_<FLAG>` (upper case, dashes as underscores).
#[derive(Debug, Parser)]
#[command(name = "qprobe", version)]
pub struct Cli {
    /// Master seed for every random choice.
    #[arg(long, global = true, env = "QPROBE_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true, env = "QPROBE_THREADS")]
    pub threads: Option<usize>,

    /// Write the result here instead of standard output.
    #[arg(long, global = true, env = "QPROBE_OUT")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode an instance file as Ising JSON.
    Encode(InstanceArgs),
    /// Print the Lipschitz constant and grid sizing of an instance.
    Landscape(InstanceArgs),
    /// Exhaustive grid search.
    GridOpt(OptArgs),
    /// Sobol-seeded basin search with local refinement.
    ShgoOpt(ShgoArgs),
    /// Enumerate stationary points.
    Stationary(StationaryArgs),
    /// Sample the noisy device at given angles.
    Simulate(SimulateArgs),
    /// Score an externally produced sample set.
    Score(ScoreArgs),
    /// Run-to-failure probe.
    Probe(ProbeArgs),
    /// Optimum catalogue for a directory of instances.
    Catalogue(CatalogueArgs),
    /// Grid search against SHGO on random MaxCut instances.
    Compare(CompareArgs),
    /// Render saved reports as JSON, CSV or SVG.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Maxcut,
    Tsp,
    /// Ising JSON as written by `encode`.
    Ising,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GateModeArg {
    Logical,
    Cnot,
    RoutedLine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptimizerArg {
    Grid,
    Shgo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GapModeArg {
    Relative,
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReferenceArg {
    Analytic,
    Oracle,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance kind: an edge list for maxcut, a matrix or coordinates for
    /// tsp, or Ising JSON.
    #[arg(long = "type", env = "QPROBE_TYPE", value_enum)]
    pub problem: ProblemArg,

    /// Instance file.
    #[arg(long = "in", env = "QPROBE_IN")]
    pub input: PathBuf,

    /// Keep fractional coordinate distances instead of rounding.
    #[arg(long, env = "QPROBE_NO_ROUND")]
    pub no_round: bool,
}

#[derive(Debug, Args)]
pub struct OptArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,

    /// Maximize instead of minimize.
    #[arg(long, env = "QPROBE_MAXIMIZE")]
    pub maximize: bool,

    /// Report wall-clock seconds instead of 0.
    #[arg(long, env = "QPROBE_TIMING")]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct ShgoArgs {
    #[command(flatten)]
    pub opt: OptArgs,

    /// Target accuracy of the returned energy.
    #[arg(long, env = "QPROBE_EPSILON", default_value_t = 1e-3)]
    pub epsilon: f64,

    /// Fixed Sobol sample count.
    #[arg(long, env = "QPROBE_SOBOL_POINTS")]
    pub sobol_points: Option<usize>,

    /// Largest sample count picked from the accuracy target.
    #[arg(long, env = "QPROBE_MAX_POINTS", default_value_t = 512)]
    pub max_points: usize,

    /// Neighbours used for basin detection.
    #[arg(long, env = "QPROBE_NEIGHBORS", default_value_t = 6)]
    pub neighbors: usize,

    /// Evaluation budget.
    #[arg(long, env = "QPROBE_MAX_EVALS", default_value_t = 5000)]
    pub max_evals: usize,
}

#[derive(Debug, Args)]
pub struct StationaryArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,

    /// Gradient tolerance for accepted points.
    #[arg(long, env = "QPROBE_TOL", default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct DeviceArgs {
    /// Mean two-qubit gate error.
    #[arg(long, env = "QPROBE_EPS", default_value_t = 0.0)]
    pub eps: f64,

    /// How two-qubit gates are counted.
    #[arg(long, env = "QPROBE_GATE_MODE", value_enum, default_value_t = GateModeArg::Cnot)]
    pub gate_mode: GateModeArg,

    /// Largest simulated qubit count.
    #[arg(long, env = "QPROBE_CAP", default_value_t = 24)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,

    #[arg(long, env = "QPROBE_BETA")]
    pub beta: f64,

    #[arg(long, env = "QPROBE_GAMMA")]
    pub gamma: f64,

    #[arg(long, env = "QPROBE_SHOTS", default_value_t = 5000)]
    pub shots: u64,

    #[command(flatten)]
    pub device: DeviceArgs,

    /// Also write the score summary here.
    #[arg(long, env = "QPROBE_SUMMARY")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,

    /// Sample set JSON: {"shots", "seed", "counts"}.
    #[arg(long, env = "QPROBE_SAMPLES")]
    pub samples: PathBuf,

    /// Angles the samples were taken at; enables the gap columns.
    #[arg(long, env = "QPROBE_BETA", requires = "gamma")]
    pub beta: Option<f64>,

    #[arg(long, env = "QPROBE_GAMMA", requires = "beta")]
    pub gamma: Option<f64>,

    /// Best known tour length; computed by enumeration for small instances.
    #[arg(long, env = "QPROBE_BEST_KNOWN")]
    pub best_known: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// Instance family: maxcut-path, maxcut-ring, maxcut-gnp[:p] or tsp-random.
    #[arg(long, env = "QPROBE_PROBLEM", default_value = "maxcut-path")]
    pub problem: String,

    /// Mean two-qubit gate error.
    #[arg(long, env = "QPROBE_EPS", default_value_t = 0.01)]
    pub eps: f64,

    #[arg(long, env = "QPROBE_NMIN", default_value_t = 4)]
    pub nmin: usize,

    #[arg(long, env = "QPROBE_NSTEP", default_value_t = 2)]
    pub nstep: usize,

    #[arg(long, env = "QPROBE_NMAX", default_value_t = 64)]
    pub nmax: usize,

    #[arg(long, env = "QPROBE_SHOTS", default_value_t = 5000)]
    pub shots: u64,

    #[arg(long, env = "QPROBE_RUNS", default_value_t = 10)]
    pub runs: usize,

    /// Upper bound accepted for --runs.
    #[arg(long, env = "QPROBE_MAX_RUNS", default_value_t = 10)]
    pub max_runs: usize,

    /// Halting threshold on the energy gap.
    #[arg(long, env = "QPROBE_GAP_THRESHOLD", default_value_t = 0.05)]
    pub gap_threshold: f64,

    #[arg(long, env = "QPROBE_GAP_MODE", value_enum, default_value_t = GapModeArg::Relative)]
    pub gap_mode: GapModeArg,

    #[arg(long, env = "QPROBE_GATE_MODE", value_enum, default_value_t = GateModeArg::Cnot)]
    pub gate_mode: GateModeArg,

    #[arg(long, env = "QPROBE_OPTIMIZER", value_enum, default_value_t = OptimizerArg::Grid)]
    pub optimizer: OptimizerArg,

    /// Source of the ideal energy.
    #[arg(long, env = "QPROBE_REFERENCE", value_enum, default_value_t = ReferenceArg::Analytic)]
    pub reference: ReferenceArg,

    /// Largest simulated qubit count; larger steps use the closed-form device.
    #[arg(long, env = "QPROBE_CAP", default_value_t = 16)]
    pub cap: usize,

    /// Record wall-clock time.
    #[arg(long, env = "QPROBE_TIMING")]
    pub timing: bool,

    #[arg(long, env = "QPROBE_FORMAT", value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct CatalogueArgs {
    /// Directory of instance files.
    #[arg(long, env = "QPROBE_DIR")]
    pub dir: PathBuf,

    /// maxcut or tsp.
    #[arg(long = "type", env = "QPROBE_TYPE", value_enum)]
    pub problem: ProblemArg,

    #[arg(long, env = "QPROBE_OPTIMIZER", value_enum, default_value_t = OptimizerArg::Grid)]
    pub optimizer: OptimizerArg,

    #[arg(long, env = "QPROBE_GATE_MODE", value_enum, default_value_t = GateModeArg::Cnot)]
    pub gate_mode: GateModeArg,

    #[arg(long, env = "QPROBE_MAXIMIZE")]
    pub maximize: bool,

    #[arg(long, env = "QPROBE_NO_ROUND")]
    pub no_round: bool,

    #[arg(long, env = "QPROBE_TIMING")]
    pub timing: bool,

    #[arg(long, env = "QPROBE_FORMAT", value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Comma-separated sizes `n` or `n:edges`.
    #[arg(long, env = "QPROBE_SIZES", value_delimiter = ',', required = true)]
    pub sizes: Vec<String>,

    /// Edge probability for sizes given without an edge count.
    #[arg(long, env = "QPROBE_EDGE_PROB", default_value_t = 0.5)]
    pub edge_prob: f64,

    #[arg(long, env = "QPROBE_EPSILON", default_value_t = 1e-3)]
    pub epsilon: f64,

    #[arg(long, env = "QPROBE_TIMING")]
    pub timing: bool,

    #[arg(long, env = "QPROBE_FORMAT", value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Report JSON files; several probe reports become several series.
    #[arg(long = "in", env = "QPROBE_IN", value_delimiter = ',', required = true)]
    pub inputs: Vec<PathBuf>,

    #[arg(long, env = "QPROBE_FORMAT", value_enum, default_value_t = FormatArg::Svg)]
    pub format: FormatArg,
}
