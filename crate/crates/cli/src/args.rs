use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub const DEFAULT_SEED: u64 = 20_240_101;

#[derive(Debug, Parser)]
#[command(name = "isoparam", version, about = "Certify the constant-angle elimination and verify the model hypersurfaces")]
pub struct Cli {
    /// Report file (canonical JSON).
    #[arg(long, global = true, default_value = "isoparam-report.json")]
    pub out: PathBuf,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact elimination pipeline.
    Symbolic(SymbolicArgs),
    /// Curvatures, angle function and residuals of one family.
    Geometry(GeometryArgs),
    /// Mean curvature of geodesic-parallel offsets of one family.
    Parallel(GeometryArgs),
    /// Symbolic pipeline for both signs plus every family with defaults.
    All(AllArgs),
}

#[derive(Debug, Args)]
pub struct SymbolicArgs {
    /// `1`, `-1` or `both`.
    #[arg(long, default_value = "both", allow_hyphen_values = true)]
    pub epsilon: String,

    /// Random rational points for cross-validation (at least 100 are used).
    #[arg(long, default_value_t = 128)]
    pub points: usize,

    /// Compare pipeline objects against a golden file.
    #[arg(long)]
    pub golden: Option<PathBuf>,

    /// Write the pipeline objects as a golden file.
    #[arg(long)]
    pub write_golden: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ToleranceArgs {
    #[arg(long)]
    pub tol_curvature: Option<f64>,
    #[arg(long)]
    pub tol_constancy: Option<f64>,
    #[arg(long)]
    pub tol_residual: Option<f64>,
    #[arg(long)]
    pub tol_parallel: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct GeometryArgs {
    #[arg(long)]
    pub family: String,

    /// `1`, `-1` or `both`; defaults to the family's ambient, or both when free.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<String>,

    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<f64>,
    #[arg(long = "B", alias = "b", allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,

    /// Nodes per parameter axis.
    #[arg(long, default_value_t = 10)]
    pub grid: usize,

    /// Nodes per axis of the offset grid.
    #[arg(long, default_value_t = 5)]
    pub parallel_grid: usize,

    /// Comma-separated geodesic offsets.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.2, 0.3], allow_hyphen_values = true)]
    pub offsets: Vec<f64>,

    #[command(flatten)]
    pub tol: ToleranceArgs,
}

#[derive(Debug, Args)]
pub struct AllArgs {
    #[arg(long, default_value_t = 10)]
    pub grid: usize,

    #[command(flatten)]
    pub tol: ToleranceArgs,
}
