use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Integrate PIV and its relatives through zeros and poles.
///
/// PIV uses the beta^2 parameter (Ince XXXI convention):
/// w'' = w'^2/(2w) + 3/2 w^3 + 4 z w^2 + 2 (z^2 - alpha) w - beta^2/(2w).
#[derive(Debug, Parser)]
#[command(name = "painleve", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one initial value problem; write the trajectory CSV and a JSON summary.
    Integrate(RunArgs),
    /// Integrate and report the zeros of w.
    Zeros(RunArgs),
    /// Run a randomized property suite.
    Verify(VerifyArgs),
    /// Integrate over a grid of (alpha, beta) values, one summary row per cell.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Constraint,
    ClosedForms,
    XxixIntegrals,
    Sqrt,
}

/// Equation, initial data and path.
#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// piv | piv0 | xvii | xxix | xxxii | sqrt-piv0
    #[arg(long = "eq")]
    pub eq: String,
    #[arg(long, value_enum, default_value = "real")]
    pub field: Field,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub z0: f64,
    #[arg(long = "z0-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub z0_im: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub w0: Option<f64>,
    #[arg(long = "w0-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub w0_im: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub w1: Option<f64>,
    #[arg(long = "w1-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub w1_im: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub w2: Option<f64>,
    #[arg(long = "w2-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub w2_im: f64,
    /// Start at a zero of w with w'(z0) = +beta or -beta (piv/piv0 only).
    #[arg(long = "zero-branch", value_enum)]
    pub zero_branch: Option<BranchArg>,
    /// Length of the path to integrate.
    #[arg(long, allow_negative_numbers = true)]
    pub span: f64,
    /// Integrate the same length backwards from z0 as well.
    #[arg(long = "two-sided")]
    pub two_sided: bool,
    #[arg(long = "dir-re", default_value_t = 1.0, allow_negative_numbers = true)]
    pub dir_re: f64,
    #[arg(long = "dir-im", default_value_t = 0.0, allow_negative_numbers = true)]
    pub dir_im: f64,
}

#[derive(Debug, Clone, Args)]
pub struct TolArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub rel: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub abs: f64,
    #[arg(long = "h-init", default_value_t = 1e-3)]
    pub h_init: f64,
    #[arg(long = "h-min", default_value_t = 1e-12)]
    pub h_min: f64,
    #[arg(long = "pole-cutoff", default_value_t = 1e8)]
    pub pole_cutoff: f64,
    #[arg(long = "slope-tol", default_value_t = 1e-6)]
    pub slope_tol: f64,
    #[arg(long = "curv-floor", default_value_t = 1e-8)]
    pub curv_floor: f64,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Trajectory CSV path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON summary path (standard output when absent).
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Recorded in the summary; integrations themselves are deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random instances (suite default when absent).
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(
        long = "alpha-min",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub alpha_min: f64,
    #[arg(
        long = "alpha-max",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub alpha_max: f64,
    #[arg(long = "alpha-steps", default_value_t = 1)]
    pub alpha_steps: usize,
    #[arg(
        long = "beta-min",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub beta_min: f64,
    #[arg(
        long = "beta-max",
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub beta_max: f64,
    #[arg(long = "beta-steps", default_value_t = 1)]
    pub beta_steps: usize,
    /// Vary w0 over a grid too (overrides --w0 when given).
    #[arg(long = "w0-min", allow_negative_numbers = true)]
    pub w0_min: Option<f64>,
    #[arg(long = "w0-max", allow_negative_numbers = true)]
    pub w0_max: Option<f64>,
    #[arg(long = "w0-steps", default_value_t = 1)]
    pub w0_steps: usize,
    /// Summary rows as CSV (standard output when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}
