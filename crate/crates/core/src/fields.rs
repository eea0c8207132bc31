//! Field units, physical constants and the vacuum permittivities of a
//! magnetized vacuum.
//!
//! A field is carried in three scales at once: `b = B / B_cr`,
//! `cal_b = B / B_a` with `B_a = α² B_cr`, and gauss.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{digamma, hurwitz_zeta_sderiv_m1, ln_gamma, EULER_GAMMA};

/// Electron rest energy in eV.
pub const ELECTRON_REST_ENERGY_EV: f64 = 510_998.950_00;
/// Fine-structure constant.
pub const ALPHA_CODATA: f64 = 7.297_352_569_3e-3;
/// Critical (Schwinger) field `m²c³/eħ` in gauss.
pub const B_CR_GAUSS: f64 = 4.414_005_221_4e13;

/// Lower edge of the working field range, in `b`.
pub const RANGE_MIN_B: f64 = 1.0;
/// Upper edge (exclusive) of the working field range, in `b`.
pub const RANGE_MAX_B: f64 = 1e5;

/// Smallest `b` accepted by the full permittivity model.
pub const FULL_MODEL_MIN_B: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub alpha: f64,
    pub rydberg_ev: f64,
    pub b_cr_gauss: f64,
    pub b_a_gauss: f64,
    pub euler_gamma: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::new(ALPHA_CODATA, B_CR_GAUSS).expect("default constants are valid")
    }
}

impl PhysicalConstants {
    /// Builds the constant set from `α` and `B_cr`; `Ry` and `B_a` are derived.
    pub fn new(alpha: f64, b_cr_gauss: f64) -> Result<Self> {
        if !(alpha > 0.005 && alpha < 0.01) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} outside (0.005, 0.01)"
            )));
        }
        if !(b_cr_gauss > 0.0 && b_cr_gauss.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "critical field {b_cr_gauss} G must be positive"
            )));
        }
        Ok(Self {
            alpha,
            rydberg_ev: alpha * alpha * ELECTRON_REST_ENERGY_EV / 2.0,
            b_cr_gauss,
            b_a_gauss: alpha * alpha * b_cr_gauss,
            euler_gamma: EULER_GAMMA,
        })
    }

    /// Rydberg energy in units of `Mc²`.
    pub fn rydberg_mc2(&self) -> f64 {
        self.alpha * self.alpha / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldUnit {
    /// `B / B_cr`
    B,
    /// `B / B_a`
    #[serde(rename = "calB")]
    CalB,
    Gauss,
}

impl FromStr for FieldUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b" => Ok(FieldUnit::B),
            "calB" | "calb" => Ok(FieldUnit::CalB),
            "gauss" | "G" => Ok(FieldUnit::Gauss),
            other => Err(Error::InvalidParameter(format!(
                "unknown field unit '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeFlag {
    BelowRange,
    InRange,
    AboveRange,
}

impl RangeFlag {
    pub fn classify(b: f64) -> Self {
        if b < RANGE_MIN_B {
            RangeFlag::BelowRange
        } else if b < RANGE_MAX_B {
            RangeFlag::InRange
        } else {
            RangeFlag::AboveRange
        }
    }
}

/// A magnetic field, together with the constants used to convert it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldStrength {
    pub b: f64,
    pub cal_b: f64,
    pub gauss: f64,
    pub range_flag: RangeFlag,
    pub constants: PhysicalConstants,
}

impl FieldStrength {
    /// Magnetic length `a_H = λ_C b^{-1/2}`, in Compton lengths.
    pub fn magnetic_length(&self) -> f64 {
        self.b.powf(-0.5)
    }

    /// Bohr radius `a_B = λ_C / α`, in Compton lengths.
    pub fn bohr_radius(&self) -> f64 {
        1.0 / self.constants.alpha
    }

    pub fn alpha(&self) -> f64 {
        self.constants.alpha
    }
}

/// Builds a field from a value in any of the three scales. The range flag is
/// informational only.
pub fn field_from(
    value: f64,
    unit: FieldUnit,
    constants: &PhysicalConstants,
) -> Result<FieldStrength> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::domain(
            "field_from",
            format!("field value {value} must be positive"),
        ));
    }
    let a2 = constants.alpha * constants.alpha;
    let b = match unit {
        FieldUnit::B => value,
        FieldUnit::CalB => a2 * value,
        FieldUnit::Gauss => value / constants.b_cr_gauss,
    };
    let cal_b = match unit {
        FieldUnit::CalB => value,
        _ => b / a2,
    };
    let gauss = match unit {
        FieldUnit::Gauss => value,
        _ => b * constants.b_cr_gauss,
    };
    Ok(FieldStrength {
        b,
        cal_b,
        gauss,
        range_flag: RangeFlag::classify(b),
        constants: *constants,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PermittivityModel {
    /// One-loop Euler–Heisenberg permittivities for any `b`.
    Full,
    /// Leading large-field behaviour: `ε⊥ = 1`, `ε∥ = 1 + αb/3π`.
    Asymptotic,
    /// No vacuum polarization.
    #[serde(rename = "none", alias = "unity")]
    Unity,
}

impl FromStr for PermittivityModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(PermittivityModel::Full),
            "asymptotic" => Ok(PermittivityModel::Asymptotic),
            "none" | "unity" => Ok(PermittivityModel::Unity),
            other => Err(Error::InvalidParameter(format!(
                "unknown permittivity model '{other}'"
            ))),
        }
    }
}

impl fmt::Display for PermittivityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PermittivityModel::Full => "full",
            PermittivityModel::Asymptotic => "asymptotic",
            PermittivityModel::Unity => "none",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Permittivities {
    pub eps_perp: f64,
    pub eps_par: f64,
    pub model: PermittivityModel,
}

impl Permittivities {
    pub const UNITY: Permittivities = Permittivities {
        eps_perp: 1.0,
        eps_par: 1.0,
        model: PermittivityModel::Unity,
    };
}

pub fn permittivity(field: &FieldStrength, model: PermittivityModel) -> Result<Permittivities> {
    let alpha = field.alpha();
    let b = field.b;
    match model {
        PermittivityModel::Unity => Ok(Permittivities::UNITY),
        PermittivityModel::Asymptotic => Ok(Permittivities {
            eps_perp: 1.0,
            eps_par: 1.0 + alpha * b / (3.0 * PI),
            model,
        }),
        PermittivityModel::Full => {
            if !(b > FULL_MODEL_MIN_B) {
                return Err(Error::domain(
                    "permittivity",
                    format!("full model needs b > {FULL_MODEL_MIN_B}, got {b}"),
                ));
            }
            let q = 1.0 / (2.0 * b);
            let two_b_ln = (2.0 * b).ln();
            let braces = 2.0 / 3.0 * two_b_ln - 1.0 / 3.0 - 1.0 / (2.0 * b * b)
                + ((PI / b).ln() - 2.0 * ln_gamma(q)?) / b
                + 8.0 * hurwitz_zeta_sderiv_m1(q)?;
            let eps_perp = 1.0 - alpha / (2.0 * PI) * braces;
            let eps_par = 1.0 - alpha / (3.0 * PI) * (b + two_b_ln + digamma(q)?);
            Ok(Permittivities {
                eps_perp,
                eps_par,
                model,
            })
        }
    }
}
