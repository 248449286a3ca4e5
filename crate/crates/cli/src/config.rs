//! Run configuration: preset, JSON config file and command-line flags, in
//! increasing order of precedence.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use fbosc::{HalfInt, ModelConfig};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fig1,
    Fig2,
}

impl Preset {
    pub fn as_str(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
        }
    }

    /// `(lambda, nu, m1, m2)`
    pub fn parameters(self) -> (f64, f64, f64, f64) {
        match self {
            Preset::Fig1 => (1.0, 0.1, 1.0, 2.0),
            Preset::Fig2 => (-1.0, 0.1, 1.0, 2.0),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum HalfIntValue {
    Text(String),
    Number(f64),
}

/// On-disk form; every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    lambda: Option<f64>,
    nu: Option<f64>,
    m1: Option<f64>,
    m2: Option<f64>,
    n_max: Option<u32>,
    j_max: Option<HalfIntValue>,
    format: Option<Format>,
    preset: Option<Preset>,
    force: Option<bool>,
    grid_points: Option<usize>,
    r_max: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Lorentz-vector coupling
    #[arg(long, allow_hyphen_values = true, conflicts_with = "preset")]
    pub lambda: Option<f64>,
    /// Lorentz-tensor coupling
    #[arg(long, allow_hyphen_values = true, conflicts_with = "preset")]
    pub nu: Option<f64>,
    /// Fermion mass
    #[arg(long, conflicts_with = "preset")]
    pub m1: Option<f64>,
    /// Boson mass
    #[arg(long, conflicts_with = "preset")]
    pub m2: Option<f64>,
    /// Parameter set of a published level diagram
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Accept couplings that violate |lambda| >= |nu| or lambda = 0
    #[arg(long)]
    pub force: bool,
    /// JSON file with defaults for any of these options
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    /// Largest radial quantum number
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Largest total angular momentum, as "7/2" or "3.5"
    #[arg(long)]
    pub j_max: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long)]
    pub r_max: Option<f64>,
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub preset: Option<Preset>,
    pub n_max: u32,
    pub j_max: HalfInt,
    pub format: Format,
    pub grid_points: Option<usize>,
    pub r_max: Option<f64>,
}

/// Per-command fallbacks.
pub struct Defaults {
    pub n_max: u32,
    pub j_max_twice: u32,
    pub format: Format,
}

fn load_file(path: &Path) -> Result<FileConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid config {}: {e}", path.display())))
}

fn parse_half(text: &str) -> Result<HalfInt, CliError> {
    text.parse::<HalfInt>()
        .map_err(|e| CliError::Validation(format!("--j-max: {e}")))
}

pub fn resolve(
    model: &ModelArgs,
    bounds: Option<&BoundsArgs>,
    output: Option<&OutputArgs>,
    grid: Option<&GridArgs>,
    defaults: Defaults,
) -> Result<RunConfig, CliError> {
    let file = match &model.config {
        Some(p) => load_file(p)?,
        None => FileConfig::default(),
    };

    let preset = model.preset.or(file.preset);
    let explicit = model.lambda.is_some()
        || model.nu.is_some()
        || model.m1.is_some()
        || model.m2.is_some();
    let (lambda, nu, m1, m2) = match preset {
        Some(p) if !explicit => p.parameters(),
        Some(_) => {
            return Err(CliError::Validation(
                "a preset fixes lambda, nu, m1 and m2; drop the explicit values".into(),
            ))
        }
        None => {
            let lambda = model
                .lambda
                .or(file.lambda)
                .ok_or_else(|| CliError::Validation("missing --lambda (or --preset)".into()))?;
            let nu = model
                .nu
                .or(file.nu)
                .ok_or_else(|| CliError::Validation("missing --nu (or --preset)".into()))?;
            let m1 = model.m1.or(file.m1).unwrap_or(1.0);
            let m2 = model.m2.or(file.m2).unwrap_or(2.0);
            (lambda, nu, m1, m2)
        }
    };

    let force = model.force || file.force.unwrap_or(false);
    let model = if force {
        ModelConfig::forced(m1, m2, lambda, nu)
    } else {
        ModelConfig::new(m1, m2, lambda, nu)
    }
    .map_err(|e| CliError::Validation(e.to_string()))?;

    let n_max = bounds
        .and_then(|b| b.n_max)
        .or(file.n_max)
        .unwrap_or(defaults.n_max);
    let j_max = match (bounds.and_then(|b| b.j_max.as_deref()), &file.j_max) {
        (Some(text), _) => parse_half(text)?,
        (None, Some(HalfIntValue::Text(t))) => parse_half(t)?,
        (None, Some(HalfIntValue::Number(v))) => parse_half(&v.to_string())?,
        (None, None) => HalfInt::from_twice(defaults.j_max_twice).expect("odd default"),
    };
    let format = output
        .and_then(|o| o.format)
        .or(file.format)
        .unwrap_or(defaults.format);
    let grid_points = grid.and_then(|g| g.grid_points).or(file.grid_points);
    let r_max = grid.and_then(|g| g.r_max).or(file.r_max);
    if let Some(p) = grid_points {
        if p < fbosc::RadialGrid::MIN_POINTS {
            return Err(CliError::Validation(format!(
                "--grid-points must be at least {}",
                fbosc::RadialGrid::MIN_POINTS
            )));
        }
    }
    if let Some(r) = r_max {
        if !(r > 0.0 && r.is_finite()) {
            return Err(CliError::Validation("--r-max must be positive".into()));
        }
    }

    Ok(RunConfig {
        model,
        preset,
        n_max,
        j_max,
        format,
        grid_points,
        r_max,
    })
}
