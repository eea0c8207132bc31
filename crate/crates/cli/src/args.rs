use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use magsat_core::{FieldUnit, PermittivityModel};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "magsat",
    version,
    about = "Hydrogen-like levels in strong magnetic fields with vacuum-polarization screening"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Fine-structure constant (default CODATA 2018).
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Critical field B_cr in gauss.
    #[arg(long = "bcr-gauss", global = true)]
    pub bcr_gauss: Option<f64>,
    /// key=value file with constants, units and thresholds.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Energy units for potential tables.
    #[arg(long, global = true, value_enum)]
    pub units: Option<Units>,
    /// `csv` or `json`; for `figures`, the output directory.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Also write the result to this file (atomically), with a manifest beside it.
    #[arg(long, global = true)]
    pub save: Option<PathBuf>,
    /// Suppress human-readable tables on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Mc2,
    Ry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vacuum permittivities at one field.
    Perm(PermArgs),
    /// Effective potential curve.
    Potential(PotentialArgs),
    /// Shallow-well, Coulomb-ratio and adiabatic diagnostics.
    Validity(ValidityArgs),
    /// Roots of the modified spectrum equation.
    Spectrum(SpectrumArgs),
    /// Saturated deep levels.
    Saturation(SaturationArgs),
    /// Matched equation against direct shooting.
    Oracle(OracleArgs),
    /// Figure data as CSV files.
    Figures(FiguresArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Perm(_) => "perm",
            Command::Potential(_) => "potential",
            Command::Validity(_) => "validity",
            Command::Spectrum(_) => "spectrum",
            Command::Saturation(_) => "saturation",
            Command::Oracle(_) => "oracle",
            Command::Figures(_) => "figures",
        }
    }
}

fn parse_unit(s: &str) -> Result<FieldUnit, String> {
    s.parse().map_err(|e: magsat_core::Error| e.to_string())
}

fn parse_model(s: &str) -> Result<PermittivityModel, String> {
    s.parse().map_err(|e: magsat_core::Error| e.to_string())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FieldArgs {
    /// Field strength, in the unit given by --unit.
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: f64,
    /// b (= B/B_cr), calB (= B/B_a) or gauss.
    #[arg(long, default_value = "calB", value_parser = parse_unit)]
    pub unit: FieldUnit,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LevelArgs {
    /// |m|, the magnetic quantum number.
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Nuclear charge.
    #[arg(long = "Z", default_value_t = 1)]
    pub z: u32,
    /// full, asymptotic or none.
    #[arg(long, default_value = "full", value_parser = parse_model)]
    pub model: PermittivityModel,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PermArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value = "full", value_parser = parse_model)]
    pub model: PermittivityModel,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub level: LevelArgs,
    /// Largest ζ = z/λ_C sampled.
    #[arg(long, default_value_t = 2.0)]
    pub zeta_max: f64,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Add the saturation curve.
    #[arg(long)]
    pub saturation: bool,
    /// Add the unscreened potential.
    #[arg(long)]
    pub no_vp: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValidityArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub level: LevelArgs,
    /// Support multiplier: ζ is swept over [0, K].
    #[arg(long = "K", default_value_t = 1.5)]
    pub k: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub level: LevelArgs,
    #[arg(long, default_value_t = 5)]
    pub roots: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SaturationArgs {
    /// Comma-separated |m| values.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
    pub m: Vec<u32>,
    #[arg(long = "Z", default_value_t = 1)]
    pub z: u32,
    /// Finite field in calB; omitted means the infinite-field limit.
    #[arg(long = "B")]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub level: LevelArgs,
    /// Even level index (0 = deepest).
    #[arg(long, default_value_t = 0)]
    pub nu: u32,
    /// Integrator tolerance (overrides the config file).
    #[arg(long)]
    pub step_tol: Option<f64>,
    /// Fixed integration endpoint in Bohr radii.
    #[arg(long)]
    pub xi_max: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FiguresArgs {
    /// 1: condensation, 2: spectrum-equation curves, 3: deepest levels,
    /// 4: deepest levels with saturation asymptotes.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub which: u8,
    /// Fields in calB (defaults depend on the figure).
    #[arg(long = "B", value_delimiter = ',')]
    pub b: Vec<f64>,
    /// Format of the summary printed on stdout.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Samples per curve.
    #[arg(long)]
    pub points: Option<usize>,
}
