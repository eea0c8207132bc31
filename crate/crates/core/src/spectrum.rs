//! Even-parity longitudinal levels from matching the short-range and
//! Coulomb-tail logarithmic derivatives, and the strong-field saturation
//! limit of the deepest level.
//!
//! Binding energies are written `λ² = ω² Ry`; `ξ = z / a_B`.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{
    permittivity, FieldStrength, Permittivities, PermittivityModel, PhysicalConstants,
};
use crate::potential::Charge;
use crate::roots::{brent, RootConfig};
use crate::specfun::{digamma, EULER_GAMMA};

/// Distance kept from each digamma pole when bracketing, relative to `Z/ε⊥`.
pub const POLE_GUARD: f64 = 1e-9;
const POLE_GUARD_RETRIES: usize = 5;
/// Residual accepted for a returned root.
pub const MAX_RESIDUAL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRequest {
    pub field: FieldStrength,
    pub abs_m: u32,
    pub charge: Charge,
    pub model: PermittivityModel,
    pub n_roots: usize,
}

impl SpectrumRequest {
    pub fn new(
        field: FieldStrength,
        abs_m: u32,
        charge: Charge,
        model: PermittivityModel,
        n_roots: usize,
    ) -> Result<Self> {
        if n_roots == 0 {
            return Err(Error::InvalidParameter("n_roots must be at least 1".into()));
        }
        Ok(Self {
            field,
            abs_m,
            charge,
            model,
            n_roots,
        })
    }

    pub fn permittivities(&self) -> Result<Permittivities> {
        permittivity(&self.field, self.model)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRoot {
    pub omega: f64,
    pub nu: u32,
    pub kappa: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
    pub energy_ry: f64,
    pub energy_ev: f64,
}

impl SpectrumRoot {
    fn new(
        omega: f64,
        nu: u32,
        kappa: f64,
        bracket: (f64, f64),
        residual: f64,
        constants: &PhysicalConstants,
    ) -> Self {
        let e = energy(omega, constants);
        Self {
            omega,
            nu,
            kappa,
            bracket,
            residual,
            energy_ry: e.ry,
            energy_ev: e.ev,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Energy {
    pub ry: f64,
    pub ev: f64,
    pub mc2: f64,
}

fn energy(omega: f64, constants: &PhysicalConstants) -> Energy {
    let ry = -omega * omega;
    Energy {
        ry,
        ev: ry * constants.rydberg_ev,
        mc2: ry * constants.rydberg_mc2(),
    }
}

/// `ω ↦ (-ω², -ω² Ry, -ω² α²/2)`.
pub fn energy_convert(omega: f64, constants: &PhysicalConstants) -> Result<Energy> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(
            "energy_convert",
            format!("omega = {omega} must be positive"),
        ));
    }
    Ok(energy(omega, constants))
}

/// Right-hand side of the spectrum equation with its permittivities fixed;
/// the equation reads `rhs(ω) = ln 𝓑`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KpEquation {
    pub eps: Permittivities,
    pub charge: f64,
    pub ln_cal_b: f64,
    constant: f64,
}

impl KpEquation {
    pub fn new(req: &SpectrumRequest) -> Result<Self> {
        let eps = req.permittivities()?;
        Self::with_permittivities(req, eps)
    }

    pub fn with_permittivities(req: &SpectrumRequest, eps: Permittivities) -> Result<Self> {
        let constant = 4.0 * EULER_GAMMA
            + LN_2
            + digamma(req.abs_m as f64 + 1.0)?
            + (eps.eps_par / eps.eps_perp).ln();
        Ok(Self {
            eps,
            charge: req.charge.value(),
            ln_cal_b: req.field.cal_b.ln(),
            constant,
        })
    }

    /// `Z / ε⊥`: the deep root lies above it, excited roots below.
    pub fn kappa_scale(&self) -> f64 {
        self.charge / self.eps.eps_perp
    }

    /// `ε⊥ω/Z + 2 ln ω + 2ψ(1 - Z/(ε⊥ω)) + 4γ + ln 2 + ψ(|m|+1) + ln(ε∥/ε⊥)`
    pub fn rhs(&self, omega: f64) -> Result<f64> {
        if !(omega > 0.0) {
            return Err(Error::domain(
                "kp_rhs",
                format!("omega = {omega} must be positive"),
            ));
        }
        let k = self.kappa_scale() / omega;
        Ok(omega / self.kappa_scale() + 2.0 * omega.ln() + 2.0 * digamma(1.0 - k)? + self.constant)
    }
}

pub fn kp_rhs(omega: f64, req: &SpectrumRequest) -> Result<f64> {
    KpEquation::new(req)?.rhs(omega)
}

/// Upper end of the deep-root bracket.
fn omega_max(ln_target: f64) -> f64 {
    10.0 * (ln_target.abs() + 20.0)
}

/// Solves `g(ω) = target` on `(lo_pole, hi_pole)` where `g` runs from -∞ to +∞
/// between two poles (or to a finite upper end). The guard distance is
/// shrunk on failure.
fn solve_between<G: Fn(f64) -> Result<f64>>(
    g: &G,
    target: f64,
    lo_pole: f64,
    hi: f64,
    hi_is_pole: bool,
    guard: f64,
) -> Result<(f64, (f64, f64), f64)> {
    let mut delta = guard;
    let mut last_err = Error::NoRoot { lo: lo_pole, hi };
    for _ in 0..=POLE_GUARD_RETRIES {
        let lo = lo_pole + delta;
        let up = if hi_is_pole { hi - delta } else { hi };
        let f = |w: f64| g(w).map_or(f64::NAN, |v| v - target);
        let (flo, fhi) = (f(lo), f(up));
        if flo < 0.0 && fhi > 0.0 {
            let cfg = RootConfig {
                x_tol: 0.0,
                max_iter: 300,
            };
            let (root, bracket) = brent(f, lo, up, cfg)?;
            let residual = f(root).abs();
            return Ok((root, bracket, residual));
        }
        last_err = Error::NoRoot { lo, hi: up };
        if fhi <= 0.0 && !hi_is_pole {
            break;
        }
        delta /= 10.0;
    }
    Err(last_err)
}

/// Roots of the spectrum equation, deepest first: `ν = 0` on `(Z/ε⊥, ω_max)`
/// and `ν = n` on `(Z/(ε⊥(n+1)), Z/(ε⊥ n))`.
pub fn kp_solve(req: &SpectrumRequest) -> Result<Vec<SpectrumRoot>> {
    let eq = KpEquation::new(req)?;
    kp_solve_with(req, &eq)
}

pub fn kp_solve_with(req: &SpectrumRequest, eq: &KpEquation) -> Result<Vec<SpectrumRoot>> {
    let k0 = eq.kappa_scale();
    let guard = POLE_GUARD * k0;
    let g = |w: f64| eq.rhs(w);
    let mut roots = Vec::with_capacity(req.n_roots);
    for nu in 0..req.n_roots as u32 {
        let (lo, hi, hi_is_pole) = if nu == 0 {
            (k0, omega_max(eq.ln_cal_b).max(2.0 * k0), false)
        } else {
            let n = nu as f64;
            (k0 / (n + 1.0), k0 / n, true)
        };
        let (omega, bracket, residual) = solve_between(&g, eq.ln_cal_b, lo, hi, hi_is_pole, guard)?;
        check_residual(residual)?;
        roots.push(SpectrumRoot::new(
            omega,
            nu,
            k0 / omega,
            bracket,
            residual,
            &req.field.constants,
        ));
    }
    Ok(roots)
}

fn check_residual(residual: f64) -> Result<()> {
    if residual > MAX_RESIDUAL || residual.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "root residual {residual:e} exceeds {MAX_RESIDUAL:e}"
        )));
    }
    Ok(())
}

/// `ln(𝓑 / (1 + α³𝓑/3π))`, tending to `ln(3π/α³)` for `𝓑 = ∞`.
fn screened_log_field(cal_b: f64, alpha: f64) -> f64 {
    let a3 = alpha.powi(3) / (3.0 * PI);
    if cal_b.is_infinite() {
        -a3.ln()
    } else {
        (cal_b / (1.0 + a3 * cal_b)).ln()
    }
}

/// Deep root of
/// `ω/Z + 2 ln ω + 2ψ(1 - Z/ω) = ln(𝓑/(1 + α³𝓑/3π)) - 4γ - ln 2 - ψ(|m|+1)`.
/// `cal_b` may be `f64::INFINITY`.
pub fn saturation_solve(
    abs_m: u32,
    charge: Charge,
    cal_b: f64,
    constants: &PhysicalConstants,
) -> Result<SpectrumRoot> {
    if !(cal_b > 0.0) {
        return Err(Error::domain(
            "saturation_solve",
            format!("calB = {cal_b} must be positive"),
        ));
    }
    let z = charge.value();
    let target = screened_log_field(cal_b, constants.alpha)
        - 4.0 * EULER_GAMMA
        - LN_2
        - digamma(abs_m as f64 + 1.0)?;
    let g = |w: f64| -> Result<f64> { Ok(w / z + 2.0 * w.ln() + 2.0 * digamma(1.0 - z / w)?) };
    let hi = omega_max(target).max(2.0 * z);
    let (omega, bracket, residual) = solve_between(&g, target, z, hi, false, POLE_GUARD * z)?;
    check_residual(residual)?;
    Ok(SpectrumRoot::new(
        omega,
        0,
        z / omega,
        bracket,
        residual,
        constants,
    ))
}

fn check_xi(function: &'static str, xi: f64) -> Result<()> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::domain(
            function,
            format!("xi = {xi} must be positive"),
        ));
    }
    Ok(())
}

/// Short-range logarithmic derivative
/// `-(Z/ε⊥)[ln 4𝓧² - ψ(|m|+1)]`, `4𝓧² = 2𝓑ξ² ε⊥/ε∥`.
pub fn log_derivative_short(xi: f64, req: &SpectrumRequest, eps: &Permittivities) -> Result<f64> {
    check_xi("log_derivative_short", xi)?;
    let four_x2 = 2.0 * req.field.cal_b * xi * xi * eps.eps_perp / eps.eps_par;
    let z = req.charge.value();
    Ok(-(z / eps.eps_perp) * (four_x2.ln() - digamma(req.abs_m as f64 + 1.0)?))
}

/// Small-argument Coulomb-tail logarithmic derivative
/// `-ω - 2ωκ[ln 2ωξ + ψ(1-κ) + 2γ]`.
pub fn log_derivative_long(xi: f64, omega: f64, kappa: f64) -> Result<f64> {
    check_xi("log_derivative_long", xi)?;
    if !(omega > 0.0) {
        return Err(Error::domain(
            "log_derivative_long",
            format!("omega = {omega} must be positive"),
        ));
    }
    if kappa == 0.0 {
        return Ok(-omega);
    }
    Ok(-omega
        - 2.0
            * omega
            * kappa
            * ((2.0 * omega * xi).ln() + digamma(1.0 - kappa)? + 2.0 * EULER_GAMMA))
}

/// Interpolating form `-Z[ln(2𝓑ξ²/(1 + α³𝓑/3π)) - ψ(|m|+1)]`.
pub fn log_derivative_mv(
    xi: f64,
    field: &FieldStrength,
    abs_m: u32,
    charge: Charge,
) -> Result<f64> {
    check_xi("log_derivative_mv", xi)?;
    let arg = screened_log_field(field.cal_b, field.alpha()) + (2.0 * xi * xi).ln();
    Ok(-charge.value() * (arg - digamma(abs_m as f64 + 1.0)?))
}
