use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use invsphere_core::scale::DEFAULT_PAIR_BUDGET;
use invsphere_core::{GeneratorKind, NormCenter, SweepConfig};

use crate::io::Format;

#[derive(Debug, Parser)]
#[command(name = "invsphere", version, about = "Inversion-based spherical embeddings of Euclidean data")]
pub struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embed points onto the unit sphere one dimension up.
    Embed(EmbedArgs),
    /// Map unit vectors back to the original space.
    Unembed(UnembedArgs),
    /// Convert cap records {p, b, s} to ball records {c, r, s}.
    Cap2ball(RecordArgs),
    /// Convert ball records {c, r, s} to cap records {p, b, s}.
    Ball2cap(RecordArgs),
    /// Convert cap records to spheroid records {c, a1, r1, r2, s} for a general direction.
    Cap2spheroid(SpheroidArgs),
    /// Tabulate the ABID of the embedding over a log grid of scales.
    Sweep(SweepArgs),
    /// Compare bridged (or cosine) k-NN on embedded points with Euclidean k-NN on the originals.
    KnnEval(KnnEvalArgs),
    /// Write a synthetic dataset.
    Generate(GenerateArgs),
}

/// How the embedding scale is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleArg {
    Value(f64),
    MeanNorm,
    Sweep,
}

impl FromStr for ScaleArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mean-norm" => Ok(Self::MeanNorm),
            "sweep" => Ok(Self::Sweep),
            _ => match s.parse::<f64>() {
                Ok(v) if v > 0.0 && v.is_finite() => Ok(Self::Value(v)),
                _ => Err(format!("expected a positive number, 'mean-norm' or 'sweep', got '{s}'")),
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct Io {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output format; defaults to the input format unless the extension says otherwise.
    #[arg(long, value_enum)]
    pub output_format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 20)]
    pub grid_size: usize,
    #[arg(long, default_value_t = 0.1)]
    pub lo: f64,
    #[arg(long, default_value_t = 10.0)]
    pub hi: f64,
    /// Center the grid on the median norm instead of the mean norm.
    #[arg(long)]
    pub median: bool,
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
    pub pair_budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GridArgs {
    pub fn config(&self, mean_center: bool) -> SweepConfig {
        SweepConfig {
            grid_size: self.grid_size,
            lo_factor: self.lo,
            hi_factor: self.hi,
            center: if self.median { NormCenter::Median } else { NormCenter::Mean },
            mean_center,
            pair_budget: self.pair_budget,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[command(flatten)]
    pub io: Io,
    /// Scale: a positive number, `mean-norm` or `sweep`.
    #[arg(long)]
    pub s: ScaleArg,
    /// File with a single row holding the unit direction v (default: the pole).
    #[arg(long)]
    pub v_file: Option<PathBuf>,
    /// Mean-center the data first.
    #[arg(long)]
    pub center: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct UnembedArgs {
    #[command(flatten)]
    pub io: Io,
    #[arg(long)]
    pub s: f64,
    #[arg(long)]
    pub v_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RecordArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct SpheroidArgs {
    #[command(flatten)]
    pub records: RecordArgs,
    #[arg(long)]
    pub v_file: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Output table (csv).
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Sweep the data as given instead of mean-centering it.
    #[arg(long)]
    pub no_center: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMetric {
    /// Exact original-space distances computed on the embedded points.
    Bridged,
    /// Plain cosine distance between embedded points.
    Cosine,
}

#[derive(Debug, Args)]
pub struct KnnEvalArgs {
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long)]
    pub queries: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(short, default_value_t = 10)]
    pub k: usize,
    /// Scale: a positive number or `mean-norm` (of the base set).
    #[arg(long, default_value = "mean-norm")]
    pub s: ScaleArg,
    #[arg(long, value_enum, default_value_t = EvalMetric::Bridged)]
    pub metric: EvalMetric,
    /// Also write the JSON report here.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: GeneratorKind,
    #[arg(long)]
    pub dim: usize,
    #[arg(short)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub blobs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse::<GeneratorKind>().map_err(|e| e.to_string())
}
