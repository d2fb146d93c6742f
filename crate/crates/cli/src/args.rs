use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use uavcb::scenario::ScenarioConfig;

#[derive(Debug, Parser)]
#[command(name = "uavcb", version, about = "Dual UAV-cluster beamforming experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize deployments for one or more seeds.
    Run(RunArgs),
    /// Export relay and jammer gain maps for one archived solution.
    Gainmap(GainmapArgs),
    /// Evaluate a comparison approach.
    Baseline(BaselineArgs),
    /// IGD and ACR series for finished runs.
    Metrics(MetricsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// 8 relay and 4 jammer UAVs.
    Smaller,
    /// 16 relay and 8 jammer UAVs.
    Larger,
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// JSON scenario file; unspecified fields take their defaults.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Network size used when no config file is given [default: smaller].
    #[arg(long, value_enum, conflicts_with = "config")]
    pub preset: Option<Preset>,
}

impl ScenarioArgs {
    pub fn load(&self) -> Result<ScenarioConfig> {
        self.load_or(|| Ok(None))
    }

    /// Explicit flags win, then `fallback`, then the smaller preset.
    pub fn load_or(&self, fallback: impl FnOnce() -> Result<Option<ScenarioConfig>>) -> Result<ScenarioConfig> {
        if let Some(path) = &self.config {
            return load_config(path);
        }
        Ok(match self.preset {
            Some(Preset::Smaller) => ScenarioConfig::smaller(),
            Some(Preset::Larger) => ScenarioConfig::larger(),
            None => fallback()?.unwrap_or_else(ScenarioConfig::smaller),
        })
    }
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ScenarioConfig::from_json(&text).with_context(|| format!("invalid config {}", path.display()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Imoma,
    Moma,
}

impl From<AlgoArg> for uavcb::optimizer::Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Imoma => Self::Imoma,
            AlgoArg::Moma => Self::Moma,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value_t = AlgoArg::Imoma)]
    pub algo: AlgoArg,
    /// Comma-separated optimizer seeds.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub seeds: Vec<u64>,
    /// Iteration count (overrides the config).
    #[arg(long)]
    pub iters: Option<usize>,
    /// Population size (overrides the config).
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    /// Re-evaluate the final archives on the reporting quadrature grid.
    #[arg(long)]
    pub fine: bool,
}

#[derive(Debug, Args)]
pub struct GainmapArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// An `archive.csv` written by `run`.
    #[arg(long, value_name = "PATH")]
    pub archive: PathBuf,
    /// Archive row; the knee solution when omitted.
    #[arg(long)]
    pub index: Option<usize>,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineMode {
    NonCb,
    SingleCb,
    Multihop,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, value_enum)]
    pub mode: BaselineMode,
    /// Relay deployment for single-cb; the hover deployment when omitted.
    #[arg(long, value_name = "PATH")]
    pub archive: Option<PathBuf>,
    /// Archive row for single-cb; the knee solution when omitted.
    #[arg(long, requires = "archive")]
    pub index: Option<usize>,
    /// Multi-hop chain length (defaults to the fleet size).
    #[arg(long)]
    pub hops: Option<usize>,
    /// Multi-hop altitude in metres (defaults to the middle of the relay box).
    #[arg(long)]
    pub hop_altitude: Option<f64>,
    /// Multi-hop decode threshold in dB.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma_th: f64,
    /// Output CSV; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Run directories (containing `seed_*` folders) or single seed folders.
    #[arg(required = true, value_name = "DIR")]
    pub runs: Vec<PathBuf>,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}
