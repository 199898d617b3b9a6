use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "simpson-certify",
    version,
    about = "Simpson quadrature with certified error bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    pub output: OutputFormat,

    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Fail (exit 3) when a hypothesis check fails.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every applicable single-interval bound against the actual Simpson error.
    Bounds(BoundsArgs),
    /// Composite or adaptive certified integration.
    Certify(CertifyArgs),
    /// Run the built-in verification battery.
    Verify(VerifyArgs),
    /// Tabulate the moment and kernel constants.
    Constants(ConstantsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Convex,
    Concave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFlag {
    Classical,
    Direct,
    Holder,
    PowerMean,
    Concave,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Integrand, e.g. "x^4/24".
    #[arg(long = "f", value_name = "EXPR", allow_hyphen_values = true)]
    pub f: String,

    /// Exact third derivative of the integrand.
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub d3: Option<String>,

    #[arg(
        long,
        num_args = 2,
        value_names = ["A", "B"],
        allow_negative_numbers = true,
        default_values_t = [0.0, 1.0]
    )]
    pub interval: Vec<f64>,

    /// Convexity order s in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,

    /// Hölder / power-mean exponent (default 2).
    #[arg(long)]
    pub q: Option<f64>,

    #[arg(long, value_enum, default_value_t = Mode::Convex)]
    pub mode: Mode,

    /// Explicit |f'''(a)|.
    #[arg(long, allow_negative_numbers = true)]
    pub d3a: Option<f64>,

    /// Explicit |f'''(b)|.
    #[arg(long, allow_negative_numbers = true)]
    pub d3b: Option<f64>,

    /// Explicit |f'''((3a+b)/4)|.
    #[arg(long, allow_negative_numbers = true)]
    pub d3_quarter: Option<f64>,

    /// Explicit |f'''((a+3b)/4)|.
    #[arg(long, allow_negative_numbers = true)]
    pub d3_three_quarter: Option<f64>,

    /// Uniform bound on |f''''| for the classical bound (estimated if absent).
    #[arg(long, allow_negative_numbers = true)]
    pub sup_d4: Option<f64>,

    /// Finite-difference step multiplier.
    #[arg(long, default_value_t = 1.0)]
    pub fd_scale: f64,

    /// Random triples for the s-convexity sampler.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,

    /// Target total certified bound (adaptive mode).
    #[arg(long)]
    pub tol: Option<f64>,

    /// Number of equal panels (composite mode).
    #[arg(long)]
    pub n: Option<usize>,

    #[arg(long, default_value_t = 30)]
    pub max_depth: u32,

    /// Bound applied per panel (default: direct, or concave in concave mode).
    #[arg(long, value_enum)]
    pub bound: Option<BoundFlag>,

    /// Compare the estimate with the reference integral.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Run only one suite.
    #[arg(long, value_enum)]
    pub only: Option<Suite>,

    /// s values for the domination sweep: "start:stop:step" or a comma list.
    #[arg(long, default_value = "0.1:1.0:0.1")]
    pub s_grid: String,

    /// q values for the domination sweep.
    #[arg(long, default_value = "1,1.5,2,5")]
    pub q_grid: String,

    /// Random subintervals of [0, 3] per domination cell.
    #[arg(long, default_value_t = 50)]
    pub intervals: usize,

    /// Random triples per s-convexity check.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Constants,
    Gamma,
    Lemma,
    Classical,
    Hadamard,
    Reductions,
    Domination,
    Concave,
}

#[derive(Debug, Clone, Args)]
pub struct ConstantsArgs {
    #[arg(long, default_value = "0.1:1.0:0.1")]
    pub s_grid: String,

    #[arg(long, default_value = "1,1.5,2,3,5,10")]
    pub p_grid: String,
}
