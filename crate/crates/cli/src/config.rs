//! Experiment configuration: each subcommand's arguments double as a serde
//! structure, so a JSON `ExperimentConfig` file can stand in for the flags.

use std::path::PathBuf;

use ampforge::poly::library::TargetFn;
use ampforge::{Error, Result};
use clap::{Args, Subcommand};
use serde::Deserialize;

/// Named library function with optional parameters.
#[derive(Debug, Clone, Args, Deserialize)]
pub struct FunctionSpec {
    /// tanh | exp | cos | sin | logistic | gaussian | identity
    #[arg(long)]
    pub function: String,
    /// Gaussian width (sigma^2 >= 1/2)
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "default_sigma")]
    pub sigma: f64,
}

fn default_sigma() -> f64 {
    1.0
}

impl FunctionSpec {
    pub fn target(&self) -> Result<TargetFn> {
        Ok(match self.function.as_str() {
            "tanh" => TargetFn::Tanh,
            "exp" => TargetFn::Exp,
            "cos" => TargetFn::Cos,
            "sin" => TargetFn::Sin,
            "logistic" => TargetFn::Logistic,
            "gaussian" => TargetFn::Gaussian { sigma: self.sigma },
            "identity" => TargetFn::Identity,
            other => {
                return Err(Error::InvalidParameter {
                    name: "function",
                    message: format!("unknown function '{other}'"),
                })
            }
        })
    }
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct CommonArgs {
    /// Base seed; every trial derives from it deterministically
    #[arg(long, default_value_t = 1)]
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Output prefix; writes `<prefix>.csv` and `<prefix>.json`
    #[arg(long)]
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Worker threads for independent trials (results merge in seed order)
    #[arg(long, default_value_t = 1)]
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
}

fn default_seed() -> u64 {
    1
}

fn default_parallelism() -> usize {
    1
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct EncodeCheckArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Number of seeded oracles
    #[arg(long, default_value_t = 10)]
    #[serde(default = "default_count")]
    pub count: usize,
    /// Also exercise the complex-state modes (LCU and dilation)
    #[arg(long, default_value_t = false)]
    #[serde(default)]
    pub complex: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

fn default_count() -> usize {
    10
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct TransformArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FunctionSpec,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    #[arg(long, default_value_t = 1)]
    #[serde(default = "default_one")]
    pub count: usize,
    /// off | budget: inject the proof's delta_0 into the eigenvalue transform
    #[arg(long, default_value = "budget")]
    #[serde(default = "default_noise")]
    pub noise: String,
    /// Draw this many seeded measurement samples from each output state and
    /// emit the histogram alongside the exact amplitudes
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

fn default_one() -> usize {
    1
}

fn default_noise() -> String {
    "budget".into()
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct ApproxErrorArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FunctionSpec,
    /// Largest truncation (series terms)
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    /// Smallest truncation; defaults to k (single row)
    #[arg(long)]
    #[serde(default)]
    pub k_min: Option<usize>,
    /// Also emit the basis-tagged coefficient arrays as JSON
    #[arg(long, default_value_t = false)]
    #[serde(default)]
    pub coefficients: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct BenchmarkTanhArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: usize,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1e-2)]
    pub eps: f64,
    /// Seeded states per register size
    #[arg(long, default_value_t = 3)]
    #[serde(default = "default_count")]
    pub count: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct MaxFindArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Planted top amplitude
    #[arg(long, default_value_t = 0.7)]
    #[serde(default = "default_psi1")]
    pub psi1: f64,
    /// Planted amplitude gap
    #[arg(long, default_value_t = 0.2)]
    #[serde(default = "default_gap")]
    pub gap: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 10)]
    #[serde(default = "default_count")]
    pub count: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

fn default_psi1() -> f64 {
    0.7
}

fn default_gap() -> f64 {
    0.2
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct PrepareStateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FunctionSpec,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-2)]
    pub eps: f64,
    /// Grid interval
    #[arg(long, num_args = 2, default_values_t = [-1.0, 1.0])]
    #[serde(default = "default_domain")]
    pub domain: Vec<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

fn default_domain() -> Vec<f64> {
    vec![-1.0, 1.0]
}

#[derive(Debug, Clone, Args, Deserialize)]
pub struct LemmaFuzzArgs {
    /// Scales every suite's trial count (1 = the acceptance sizes)
    #[arg(long, default_value_t = 1.0)]
    #[serde(default = "default_scale")]
    pub scale: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

fn default_scale() -> f64 {
    1.0
}

#[derive(Debug, Clone, Subcommand, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Verify the diagonal amplitude block-encodings against simulated states
    EncodeCheck(EncodeCheckArgs),
    /// Apply a library function to seeded states and check the l2 guarantee
    Transform(TransformArgs),
    /// Measure polynomial approximation errors against their analytic bounds
    ApproxError(ApproxErrorArgs),
    /// Compare the importance and uniform engines on tanh across sizes
    BenchmarkTanh(BenchmarkTanhArgs),
    /// Find the maximum-amplitude index of planted states via the erf mask
    MaxFind(MaxFindArgs),
    /// Prepare a state with amplitudes following a function on a grid
    PrepareState(PrepareStateArgs),
    /// Fuzz the supporting lemmas (h-bound, norms, deviation, products, ...)
    LemmaFuzz(LemmaFuzzArgs),
}

/// Parses a JSON `ExperimentConfig` file into a command.
pub fn command_from_config(path: &std::path::Path) -> Result<Command> {
    let body = std::fs::read_to_string(path).map_err(|e| Error::InvalidParameter {
        name: "config",
        message: e.to_string(),
    })?;
    serde_json::from_str(&body).map_err(|e| Error::InvalidParameter {
        name: "config",
        message: e.to_string(),
    })
}

pub fn parse_noise(s: &str) -> Result<ampforge::engine::QetNoise> {
    match s {
        "off" => Ok(ampforge::engine::QetNoise::Off),
        "budget" => Ok(ampforge::engine::QetNoise::ProofBudget),
        other => Err(Error::InvalidParameter {
            name: "noise",
            message: format!("expected 'off' or 'budget', got '{other}'"),
        }),
    }
}
