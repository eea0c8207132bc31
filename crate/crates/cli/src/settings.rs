//! Resolution of constants and options from defaults, a key=value config
//! file, and command-line flags (flags win).

use std::path::Path;

use magsat_core::fields::{ALPHA_CODATA, B_CR_GAUSS};
use magsat_core::{PhysicalConstants, UnitsTag, ValidityThresholds};
use serde::{Deserialize, Serialize};

use crate::args::{GlobalArgs, Units};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub constants: PhysicalConstants,
    pub units: UnitsTag,
    pub thresholds: ValidityThresholds,
    pub step_tol: f64,
}

/// Keys understood in the config file.
pub const CONFIG_KEYS: &[&str] = &[
    "alpha",
    "bcr_gauss",
    "units",
    "xi_shallow",
    "ratio_coulomb",
    "xi_violated",
    "ratio_violated",
    "probe_zeta",
    "step_tol",
];

fn parse_number(key: &str, value: &str, origin: &str) -> CliResult<f64> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("{origin}: {key} = {value:?} is not a number")))
}

fn parse_units(value: &str, origin: &str) -> CliResult<UnitsTag> {
    match value {
        "mc2" => Ok(UnitsTag::Mc2),
        "ry" => Ok(UnitsTag::Rydberg),
        _ => Err(CliError::Usage(format!(
            "{origin}: units must be mc2 or ry, got {value:?}"
        ))),
    }
}

impl Settings {
    pub fn resolve(global: &GlobalArgs) -> CliResult<Self> {
        let mut alpha = ALPHA_CODATA;
        let mut bcr = B_CR_GAUSS;
        let mut units = UnitsTag::Mc2;
        let mut thresholds = ValidityThresholds::default();
        let mut step_tol = 1e-10;

        if let Some(path) = &global.config {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            for (key, value, origin) in parse_config(&text, path)? {
                match key.as_str() {
                    "alpha" => alpha = parse_number(&key, &value, &origin)?,
                    "bcr_gauss" => bcr = parse_number(&key, &value, &origin)?,
                    "units" => units = parse_units(&value, &origin)?,
                    "xi_shallow" => thresholds.xi_shallow = parse_number(&key, &value, &origin)?,
                    "ratio_coulomb" => {
                        thresholds.ratio_coulomb = parse_number(&key, &value, &origin)?
                    }
                    "xi_violated" => thresholds.xi_violated = parse_number(&key, &value, &origin)?,
                    "ratio_violated" => {
                        thresholds.ratio_violated = parse_number(&key, &value, &origin)?
                    }
                    "probe_zeta" => thresholds.probe_zeta = parse_number(&key, &value, &origin)?,
                    "step_tol" => step_tol = parse_number(&key, &value, &origin)?,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "{origin}: unknown key {key:?} (expected one of {})",
                            CONFIG_KEYS.join(", ")
                        )))
                    }
                }
            }
        }
        if let Some(a) = global.alpha {
            alpha = a;
        }
        if let Some(b) = global.bcr_gauss {
            bcr = b;
        }
        if let Some(u) = global.units {
            units = match u {
                Units::Mc2 => UnitsTag::Mc2,
                Units::Ry => UnitsTag::Rydberg,
            };
        }
        let constants = PhysicalConstants::new(alpha, bcr)?;
        Ok(Self {
            constants,
            units,
            thresholds,
            step_tol,
        })
    }
}

/// `key = value` lines; `#` starts a comment. Returns (key, value, "file:line").
fn parse_config(text: &str, path: &Path) -> CliResult<Vec<(String, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let origin = format!("{}:{}", path.display(), i + 1);
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{origin}: expected key = value")))?;
        out.push((k.trim().to_string(), v.trim().to_string(), origin));
    }
    Ok(out)
}
