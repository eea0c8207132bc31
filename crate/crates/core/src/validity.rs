//! Diagnostics for the matching approximation: the shallow-well coefficient
//! `Ξ`, the Coulomb ratio `R`, and the adiabatic small parameter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{permittivity, FieldStrength, Permittivities, PermittivityModel};
use crate::potential::{Charge, LllPotential};
use crate::specfun::{tricomi_half, MAX_TRICOMI_ORDER};

/// Points per sweep of `ζ ∈ [0, K]`, endpoints included.
pub const SWEEP_POINTS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidityThresholds {
    /// `Ξ_max` below this counts as a shallow well.
    pub xi_shallow: f64,
    /// `R` above this counts as Coulombian.
    pub ratio_coulomb: f64,
    /// `Ξ_max` at or above this means the well is not shallow at all.
    pub xi_violated: f64,
    /// `R` below this means the tail is not Coulombian at all.
    pub ratio_violated: f64,
    /// Where `R` and the adiabatic parameter are probed, in `λ_C`.
    pub probe_zeta: f64,
}

impl Default for ValidityThresholds {
    fn default() -> Self {
        Self {
            xi_shallow: 0.1,
            ratio_coulomb: 0.9,
            xi_violated: 1.0,
            ratio_violated: 0.5,
            probe_zeta: 1.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Marginal,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub xi_min: f64,
    pub xi_max: f64,
    pub ratio_at_probe: f64,
    pub adiabatic_param: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub probe_zeta: f64,
    pub verdict: Verdict,
}

/// `Ξ^{|m|}(𝓑, ζ) = |U₀^{|m|}(ζ)| K²` with `U` in `Mc²`.
pub fn shallow_well_xi(
    field: &FieldStrength,
    abs_m: u32,
    charge: Charge,
    eps: &Permittivities,
    zeta: f64,
    k: f64,
) -> Result<f64> {
    check_k(k)?;
    let pot = LllPotential::new(abs_m, field, eps, charge)?;
    Ok(pot.eval(zeta).abs() * k * k)
}

/// `[min, max]` of `Ξ` over `ζ ∈ [0, K]` on [`SWEEP_POINTS`] points.
pub fn xi_range(
    field: &FieldStrength,
    abs_m: u32,
    charge: Charge,
    eps: &Permittivities,
    k: f64,
) -> Result<(f64, f64)> {
    check_k(k)?;
    let pot = LllPotential::new(abs_m, field, eps, charge)?;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    for i in 0..SWEEP_POINTS {
        let zeta = k * i as f64 / (SWEEP_POINTS - 1) as f64;
        let xi = pot.eval(zeta).abs() * k * k;
        lo = lo.min(xi);
        hi = hi.max(xi);
    }
    Ok((lo, hi))
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "support multiplier K = {k} must be positive"
        )));
    }
    Ok(())
}

/// `R^{(|m|)}(z) = U₀^{|m|}(z) / U_C(z) = 𝓧 Ψ(1/2, 1/2 - |m|; 𝓧²)`.
pub fn coulomb_ratio(
    field: &FieldStrength,
    abs_m: u32,
    zeta: f64,
    eps: &Permittivities,
) -> Result<f64> {
    if zeta == 0.0 || !zeta.is_finite() {
        return Err(Error::domain(
            "coulomb_ratio",
            format!("z = {zeta} must be nonzero"),
        ));
    }
    if abs_m > MAX_TRICOMI_ORDER {
        return Err(Error::domain(
            "coulomb_ratio",
            format!("|m| = {abs_m} not supported"),
        ));
    }
    let alpha = field.alpha();
    let x2 = eps.eps_perp / eps.eps_par * field.cal_b / 2.0 * alpha * alpha * zeta * zeta;
    Ok(x2.sqrt() * tricomi_half(abs_m, x2))
}

/// `ε∥ a_H² / (ε⊥ z²) = ε∥ / (ε⊥ b ζ²)`.
pub fn adiabatic_parameter(field: &FieldStrength, eps: &Permittivities, zeta: f64) -> Result<f64> {
    if zeta == 0.0 || !zeta.is_finite() {
        return Err(Error::domain(
            "adiabatic_parameter",
            format!("z = {zeta} must be nonzero"),
        ));
    }
    Ok(eps.eps_par / (eps.eps_perp * field.b * zeta * zeta))
}

pub fn validity_report(
    field: &FieldStrength,
    abs_m: u32,
    charge: Charge,
    k: f64,
    model: PermittivityModel,
    thresholds: &ValidityThresholds,
) -> Result<ValidityReport> {
    let eps = permittivity(field, model)?;
    let (xi_min, xi_max) = xi_range(field, abs_m, charge, &eps, k)?;
    let ratio = coulomb_ratio(field, abs_m, thresholds.probe_zeta, &eps)?;
    let adiabatic = adiabatic_parameter(field, &eps, thresholds.probe_zeta)?;
    let verdict = if xi_max < thresholds.xi_shallow && ratio > thresholds.ratio_coulomb {
        Verdict::Ok
    } else if xi_max >= thresholds.xi_violated || ratio < thresholds.ratio_violated {
        Verdict::Violated
    } else {
        Verdict::Marginal
    };
    Ok(ValidityReport {
        xi_min,
        xi_max,
        ratio_at_probe: ratio,
        adiabatic_param: adiabatic,
        k,
        probe_zeta: thresholds.probe_zeta,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{field_from, FieldUnit, PhysicalConstants};

    fn field(cal_b: f64) -> FieldStrength {
        field_from(cal_b, FieldUnit::CalB, &PhysicalConstants::default()).unwrap()
    }

    #[test]
    fn verdicts() {
        let t = ValidityThresholds::default();
        let h = Charge::HYDROGEN;
        let ok = validity_report(&field(1e5), 0, h, 1.5, PermittivityModel::Full, &t).unwrap();
        assert_eq!(ok.verdict, Verdict::Ok);
        let bad = validity_report(&field(1e9), 0, h, 3.0, PermittivityModel::Full, &t).unwrap();
        assert_eq!(bad.verdict, Verdict::Violated);
        let tiny = validity_report(&field(1e5), 0, h, 1e-6, PermittivityModel::Full, &t).unwrap();
        assert_eq!(tiny.verdict, Verdict::Ok);
        assert!(tiny.xi_max < 1e-12);
    }

    #[test]
    fn adiabatic_definition() {
        let f = field_from(1.0, FieldUnit::B, &PhysicalConstants::default()).unwrap();
        let e = Permittivities::UNITY;
        assert_eq!(adiabatic_parameter(&f, &e, 1.0).unwrap(), 1.0);
        assert_eq!(adiabatic_parameter(&f, &e, 2.0).unwrap(), 0.25);
        assert!(adiabatic_parameter(&f, &e, 0.0).is_err());
    }

    #[test]
    fn ratio_rejects_origin() {
        assert!(coulomb_ratio(&field(1e5), 0, 0.0, &Permittivities::UNITY).is_err());
    }

    #[test]
    fn bad_k() {
        let f = field(1e5);
        assert!(xi_range(&f, 0, Charge::HYDROGEN, &Permittivities::UNITY, 0.0).is_err());
    }
}
