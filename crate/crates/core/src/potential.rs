//! Landau radial functions and the longitudinal effective potentials.
//!
//! Lengths are in Compton lengths `λ_C` (`zeta = z / λ_C`); the magnetic
//! length is `a_H = λ_C b^{-1/2}` and the Bohr radius `a_B = λ_C / α`.
//! Energies are in `Mc²` unless a [`UnitsTag`] says otherwise.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{
    permittivity, FieldStrength, Permittivities, PermittivityModel, PhysicalConstants,
};
use crate::output::csv_row;
use crate::quad::{integrate_with_breaks, QuadConfig};
use crate::specfun::{kummer_m, ln_gamma, tricomi_half, MAX_TRICOMI_ORDER};

pub const MAX_CHARGE: u32 = 10;

/// Nuclear charge `Z`, restricted to `1..=10` (nonrelativistic regime).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Charge(u32);

impl Charge {
    pub const HYDROGEN: Charge = Charge(1);

    pub fn new(z: u32) -> Result<Self> {
        if (1..=MAX_CHARGE).contains(&z) {
            Ok(Charge(z))
        } else {
            Err(Error::InvalidParameter(format!(
                "charge Z = {z} outside 1..={MAX_CHARGE}"
            )))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64
    }
}

impl TryFrom<u32> for Charge {
    type Error = Error;
    fn try_from(z: u32) -> Result<Self> {
        Charge::new(z)
    }
}

impl From<Charge> for u32 {
    fn from(c: Charge) -> u32 {
        c.0
    }
}

/// Transverse Landau quantum numbers plus the longitudinal label `nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n_rho: u32,
    pub m: i32,
    /// Spin projection, `-1` or `+1`.
    pub sigma: i8,
    pub nu: u32,
}

impl QuantumNumbers {
    pub fn new(n_rho: u32, m: i32, sigma: i8, nu: u32) -> Result<Self> {
        if sigma != 1 && sigma != -1 {
            return Err(Error::InvalidParameter(format!(
                "sigma = {sigma} must be ±1"
            )));
        }
        Ok(Self {
            n_rho,
            m,
            sigma,
            nu,
        })
    }

    /// Lowest-Landau-level state with `m = -|m|`, spin down.
    pub fn lll(abs_m: u32, nu: u32) -> Self {
        Self {
            n_rho: 0,
            m: -(abs_m as i32),
            sigma: -1,
            nu,
        }
    }

    pub fn abs_m(&self) -> u32 {
        self.m.unsigned_abs()
    }

    pub fn is_lll(&self) -> bool {
        self.n_rho == 0 && self.m <= 0 && self.sigma == -1
    }

    /// Transverse energy in units of the cyclotron energy `ħeB/Mc`:
    /// `n_ρ + (|m| + m + 1 + σ)/2`.
    pub fn transverse_energy(&self) -> f64 {
        self.n_rho as f64 + (self.abs_m() as f64 + self.m as f64 + 1.0 + self.sigma as f64) / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitsTag {
    Mc2,
    #[serde(rename = "ry")]
    Rydberg,
}

impl UnitsTag {
    /// Multiplier taking a value in `Mc²` into these units.
    pub fn factor(self, alpha: f64) -> f64 {
        match self {
            UnitsTag::Mc2 => 1.0,
            UnitsTag::Rydberg => 2.0 / (alpha * alpha),
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            UnitsTag::Mc2 => "mc2",
            UnitsTag::Rydberg => "ry",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSample {
    pub zeta: f64,
    pub value: f64,
    pub units_tag: UnitsTag,
}

impl PotentialSample {
    pub fn to_units(self, units: UnitsTag, alpha: f64) -> Self {
        let mc2 = self.value / self.units_tag.factor(alpha);
        Self {
            zeta: self.zeta,
            value: mc2 * units.factor(alpha),
            units_tag: units,
        }
    }
}

/// `R_{n_ρ m}(ρ)` with `a_H = 1`, normalized so that `∫ R² ρ dρ = 1`.
pub fn radial_function(n_rho: u32, m: i32, rho_over_ah: f64) -> Result<f64> {
    if !(rho_over_ah >= 0.0) {
        return Err(Error::domain(
            "radial_function",
            format!("rho = {rho_over_ah} must be ≥ 0"),
        ));
    }
    let am = m.unsigned_abs() as f64;
    let n = n_rho as f64;
    let rho = rho_over_ah;
    let ln_norm =
        0.5 * (ln_gamma(am + n + 1.0)? - am * 2f64.ln() - ln_gamma(n + 1.0)?) - ln_gamma(am + 1.0)?;
    let phi = kummer_m(-n, am + 1.0, rho * rho / 2.0)?;
    Ok(ln_norm.exp() * (-rho * rho / 4.0).exp() * rho.powi(am as i32) * phi)
}

/// Screened Coulomb energy of the electron at `(x_par, |x_perp|)`:
/// `-Zα / (√ε⊥ √(ε⊥ ζ∥² + ε∥ ζ⊥²))`.
pub fn anisotropic_coulomb(
    x_par: f64,
    x_perp: f64,
    charge: Charge,
    eps: &Permittivities,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let q = eps.eps_perp * x_par * x_par + eps.eps_par * x_perp * x_perp;
    if q == 0.0 {
        return Err(Error::Pole {
            function: "anisotropic_coulomb",
            at: 0.0,
        });
    }
    Ok(-charge.value() * constants.alpha / (eps.eps_perp.sqrt() * q.sqrt()))
}

/// Large-distance limit `-Zα / (ε⊥ |ζ|)`.
pub fn coulomb_asymptote(
    zeta: f64,
    eps: &Permittivities,
    charge: Charge,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if zeta == 0.0 {
        return Err(Error::Pole {
            function: "coulomb_asymptote",
            at: 0.0,
        });
    }
    Ok(-charge.value() * constants.alpha / (eps.eps_perp * zeta.abs()))
}

/// Matrix element `U^{|m|}_{n_ρ n_ρ'}(z)` of the anisotropic Coulomb
/// potential between two Landau states, by adaptive quadrature.
///
/// With `t = ρ²/2a_H² = u²` the integrand is smooth at the origin even for
/// `z = 0`; the range is cut where `e^{-t}` has fallen below `1e-16` of the
/// peak of the polynomial part.
pub fn effective_potential_element(
    n_rho: u32,
    n_rho2: u32,
    abs_m: u32,
    zeta: f64,
    field: &FieldStrength,
    eps: &Permittivities,
    charge: Charge,
) -> Result<f64> {
    let m = abs_m as f64;
    let (n1, n2) = (n_rho as f64, n_rho2 as f64);
    let norm = 0.5
        * (ln_gamma(n1 + m + 1.0)? - ln_gamma(n1 + 1.0)? + ln_gamma(n2 + m + 1.0)?
            - ln_gamma(n2 + 1.0)?)
        - 2.0 * ln_gamma(m + 1.0)?;
    let norm = norm.exp();
    let a2 = 1.0 / field.b;
    let z2 = eps.eps_perp * zeta * zeta;
    let coeff = 2.0 * eps.eps_par * a2;

    // Kummer polynomials are cheap; evaluate them inline to avoid Result in
    // the integrand.
    let poly = |n: u32, t: f64| -> f64 {
        let mut sum = 1.0;
        let mut term = 1.0;
        for k in 0..n {
            let kf = k as f64;
            term *= (kf - n as f64) / (m + 1.0 + kf) * t / (kf + 1.0);
            sum += term;
        }
        sum
    };
    let integrand = |u: f64| {
        let t = u * u;
        let w = (-t).exp() * t.powi(abs_m as i32) * poly(n_rho, t) * poly(n_rho2, t);
        2.0 * u * w / (z2 + coeff * t).sqrt()
    };

    let t_peak = m + n1 + n2;
    let t_max = t_peak + 45.0 + 10.0 * (t_peak + 1.0).sqrt();
    let u_max = t_max.sqrt();
    // Transition of the denominator at t ~ z²ε⊥ / (2ε∥ a²).
    let u_knee = (z2 / coeff).sqrt();
    let mut breaks = vec![1.0, t_peak.sqrt().max(0.5)];
    for f in [0.1, 1.0, 10.0] {
        breaks.push(u_knee * f);
    }
    breaks.retain(|&x| x > 0.0 && x < u_max);
    // Off-diagonal elements can cancel to nearly zero; measure the error
    // against the size of the diagonal-like integral instead.
    let scale = 1.0 / (z2 + coeff).sqrt();
    let cfg = QuadConfig::with_tolerances(1e-14 * scale, 1e-12);
    let r = integrate_with_breaks(integrand, 0.0, u_max, &breaks, cfg)?;
    let alpha = field.alpha();
    Ok(-charge.value() * alpha / eps.eps_perp.sqrt() * norm * r.value)
}

/// Closed-form lowest-Landau-level potential
/// `U(ζ) = -A Ψ(1/2, 1/2 - |m|; s ζ²)`, with the origin value
/// `-A Γ(|m| + 1/2) / Γ(|m| + 1)`.
///
/// The same shape describes the field-independent saturation curve, so both
/// are built through this type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LllPotential {
    abs_m: u32,
    amplitude: f64,
    scale: f64,
    origin_factor: f64,
}

impl LllPotential {
    pub fn new(
        abs_m: u32,
        field: &FieldStrength,
        eps: &Permittivities,
        charge: Charge,
    ) -> Result<Self> {
        let alpha = field.alpha();
        let prod = eps.eps_perp * eps.eps_par;
        if !(prod > 0.0) {
            return Err(Error::domain(
                "effective_potential_lll",
                "ε⊥ε∥ must be positive",
            ));
        }
        let amplitude = charge.value() * alpha * alpha * (field.cal_b / (2.0 * prod)).sqrt();
        let scale = eps.eps_perp / eps.eps_par * field.cal_b / 2.0 * alpha * alpha;
        Self::from_parts(abs_m, amplitude, scale)
    }

    /// The strong-field limit `-Z √(3πα/2) Ψ(1/2, 1/2 - |m|; (3π/2α) ζ²)`.
    pub fn saturation(abs_m: u32, charge: Charge, constants: &PhysicalConstants) -> Result<Self> {
        let alpha = constants.alpha;
        let amplitude = charge.value() * (3.0 * PI * alpha / 2.0).sqrt();
        let scale = 3.0 * PI / (2.0 * alpha);
        Self::from_parts(abs_m, amplitude, scale)
    }

    fn from_parts(abs_m: u32, amplitude: f64, scale: f64) -> Result<Self> {
        if abs_m > MAX_TRICOMI_ORDER {
            return Err(Error::domain(
                "effective_potential_lll",
                format!("|m| = {abs_m} exceeds supported maximum {MAX_TRICOMI_ORDER}"),
            ));
        }
        let am = abs_m as f64;
        let origin_factor = (ln_gamma(am + 0.5)? - ln_gamma(am + 1.0)?).exp();
        Ok(Self {
            abs_m,
            amplitude,
            scale,
            origin_factor,
        })
    }

    pub fn abs_m(&self) -> u32 {
        self.abs_m
    }

    /// Argument `𝓧²` of the Tricomi function at `zeta`.
    pub fn argument(&self, zeta: f64) -> f64 {
        self.scale * zeta * zeta
    }

    /// Prefactor `A` (positive).
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn eval(&self, zeta: f64) -> f64 {
        let x = self.argument(zeta);
        if x == 0.0 {
            -self.amplitude * self.origin_factor
        } else {
            -self.amplitude * tricomi_half(self.abs_m, x)
        }
    }

    pub fn origin(&self) -> f64 {
        -self.amplitude * self.origin_factor
    }
}

pub fn effective_potential_lll(
    abs_m: u32,
    zeta: f64,
    field: &FieldStrength,
    eps: &Permittivities,
    charge: Charge,
) -> Result<f64> {
    Ok(LllPotential::new(abs_m, field, eps, charge)?.eval(zeta))
}

/// Field-independent curve the effective potentials condense onto as the
/// field grows.
pub fn saturation_potential(
    abs_m: u32,
    zeta: f64,
    charge: Charge,
    constants: &PhysicalConstants,
) -> Result<f64> {
    Ok(LllPotential::saturation(abs_m, charge, constants)?.eval(zeta))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMetadata {
    pub cal_b: f64,
    pub b: f64,
    pub abs_m: u32,
    pub charge: Charge,
    pub model: PermittivityModel,
    pub eps_perp: f64,
    pub eps_par: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CurveOptions {
    pub saturation: bool,
    pub no_vp: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveTable {
    pub label: String,
    pub metadata: CurveMetadata,
    pub samples: Vec<PotentialSample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturation: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_vp: Option<Vec<f64>>,
}

impl CurveTable {
    pub fn units(&self) -> UnitsTag {
        self.samples.first().map_or(UnitsTag::Mc2, |s| s.units_tag)
    }

    /// Re-expresses every column in `units`.
    pub fn to_units(&self, units: UnitsTag) -> CurveTable {
        let alpha = self.metadata.alpha;
        let k = units.factor(alpha) / self.units().factor(alpha);
        let scale = |v: &Option<Vec<f64>>| v.as_ref().map(|xs| xs.iter().map(|x| x * k).collect());
        CurveTable {
            label: self.label.clone(),
            metadata: self.metadata.clone(),
            samples: self
                .samples
                .iter()
                .map(|s| s.to_units(units, alpha))
                .collect(),
            saturation: scale(&self.saturation),
            no_vp: scale(&self.no_vp),
        }
    }

    pub fn csv_header(&self) -> String {
        let u = self.units().suffix();
        let mut h = format!("zeta,U_{u}");
        if self.saturation.is_some() {
            h.push_str(&format!(",U_sat_{u}"));
        }
        if self.no_vp.is_some() {
            h.push_str(&format!(",U_novp_{u}"));
        }
        h
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.csv_header();
        out.push('\n');
        for (i, s) in self.samples.iter().enumerate() {
            let mut row = vec![s.zeta, s.value];
            if let Some(sat) = &self.saturation {
                row.push(sat[i]);
            }
            if let Some(nv) = &self.no_vp {
                row.push(nv[i]);
            }
            out.push_str(&csv_row(&row));
            out.push('\n');
        }
        out
    }
}

/// Samples the lowest-Landau-level potential on `z_grid` (strictly
/// increasing), optionally with the saturation curve and the unscreened
/// potential alongside.
pub fn emit_curve(
    field: &FieldStrength,
    abs_m: u32,
    charge: Charge,
    model: PermittivityModel,
    z_grid: &[f64],
    options: CurveOptions,
) -> Result<CurveTable> {
    if z_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter(
            "z grid must be strictly increasing".into(),
        ));
    }
    let eps = permittivity(field, model)?;
    let pot = LllPotential::new(abs_m, field, &eps, charge)?;
    let samples = z_grid
        .iter()
        .map(|&zeta| PotentialSample {
            zeta,
            value: pot.eval(zeta),
            units_tag: UnitsTag::Mc2,
        })
        .collect();
    let saturation = if options.saturation {
        let sat = LllPotential::saturation(abs_m, charge, &field.constants)?;
        Some(z_grid.iter().map(|&z| sat.eval(z)).collect())
    } else {
        None
    };
    let no_vp = if options.no_vp {
        let free = LllPotential::new(abs_m, field, &Permittivities::UNITY, charge)?;
        Some(z_grid.iter().map(|&z| free.eval(z)).collect())
    } else {
        None
    };
    Ok(CurveTable {
        label: format!("calB={:e},m={abs_m},model={model}", field.cal_b),
        metadata: CurveMetadata {
            cal_b: field.cal_b,
            b: field.b,
            abs_m,
            charge,
            model,
            eps_perp: eps.eps_perp,
            eps_par: eps.eps_par,
            alpha: field.alpha(),
        },
        samples,
        saturation,
        no_vp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{field_from, FieldUnit};
    use approx::assert_relative_eq;

    fn field(cal_b: f64) -> FieldStrength {
        field_from(cal_b, FieldUnit::CalB, &PhysicalConstants::default()).unwrap()
    }

    #[test]
    fn charge_bounds() {
        assert!(Charge::new(0).is_err());
        assert!(Charge::new(11).is_err());
        assert_eq!(Charge::new(10).unwrap().get(), 10);
    }

    #[test]
    fn lll_quantum_numbers() {
        for am in 0..4 {
            let q = QuantumNumbers::lll(am, 0);
            assert!(q.is_lll());
            assert_eq!(q.transverse_energy(), 0.0);
        }
        let q = QuantumNumbers::new(0, 1, -1, 0).unwrap();
        assert!(!q.is_lll());
        assert_eq!(q.transverse_energy(), 1.0);
        assert!(QuantumNumbers::new(0, 0, 0, 0).is_err());
    }

    #[test]
    fn radial_origin_value() {
        assert_eq!(radial_function(0, 0, 0.0).unwrap(), 1.0);
        assert_eq!(radial_function(0, 2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn coulomb_forms() {
        let c = PhysicalConstants::default();
        let z = Charge::HYDROGEN;
        let u = anisotropic_coulomb(2.0, 0.0, z, &Permittivities::UNITY, &c).unwrap();
        assert_relative_eq!(u, -c.alpha / 2.0, max_relative = 1e-15);
        assert_relative_eq!(
            coulomb_asymptote(2.0, &Permittivities::UNITY, z, &c).unwrap(),
            coulomb_asymptote(1.0, &Permittivities::UNITY, z, &c).unwrap() / 2.0
        );
        assert_eq!(
            coulomb_asymptote(1.0, &Permittivities::UNITY, z, &c).unwrap(),
            -c.alpha
        );
        assert!(anisotropic_coulomb(0.0, 0.0, z, &Permittivities::UNITY, &c).is_err());
        assert!(coulomb_asymptote(0.0, &Permittivities::UNITY, z, &c).is_err());
    }

    #[test]
    fn on_orbit_form() {
        let c = PhysicalConstants::default();
        let f = field(1e8);
        let eps = Permittivities {
            eps_perp: 1.0,
            eps_par: 4.0,
            model: PermittivityModel::Asymptotic,
        };
        let zeta = 0.3;
        let u = anisotropic_coulomb(zeta, f.magnetic_length(), Charge::HYDROGEN, &eps, &c).unwrap();
        let want = -c.alpha / (zeta * zeta + eps.eps_par / f.b).sqrt();
        assert_relative_eq!(u, want, max_relative = 1e-14);
    }

    #[test]
    fn origin_is_limit() {
        let f = field(1e7);
        let eps = permittivity(&f, PermittivityModel::Full).unwrap();
        let p = LllPotential::new(1, &f, &eps, Charge::HYDROGEN).unwrap();
        assert_relative_eq!(p.eval(0.0), p.eval(1e-9), max_relative = 1e-6);
        let want = -p.amplitude() * PI.sqrt() / 2.0;
        assert_relative_eq!(p.origin(), want, max_relative = 1e-13);
    }

    #[test]
    fn saturation_origin() {
        let c = PhysicalConstants::new(1.0 / 137.036, crate::fields::B_CR_GAUSS).unwrap();
        let u = saturation_potential(0, 0.0, Charge::HYDROGEN, &c).unwrap();
        assert!((u + 0.3287).abs() < 5e-4, "{u}");
    }

    #[test]
    fn too_large_m_rejected() {
        let f = field(1e8);
        assert!(
            effective_potential_lll(6, 1.0, &f, &Permittivities::UNITY, Charge::HYDROGEN).is_err()
        );
    }

    #[test]
    fn csv_layout() {
        let f = field(1e6);
        let t = emit_curve(
            &f,
            0,
            Charge::HYDROGEN,
            PermittivityModel::Full,
            &[0.0, 0.5],
            CurveOptions {
                saturation: true,
                no_vp: false,
            },
        )
        .unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("zeta,U_mc2,U_sat_mc2"));
        assert_eq!(csv.lines().count(), 3);
        let ry = t.to_units(UnitsTag::Rydberg);
        assert!(ry.to_csv().starts_with("zeta,U_ry,U_sat_ry\n"));
        assert!(emit_curve(
            &f,
            0,
            Charge::HYDROGEN,
            PermittivityModel::Full,
            &[1.0, 1.0],
            CurveOptions::default()
        )
        .is_err());
    }
}
