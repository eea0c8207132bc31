//! Direct shooting solution of the longitudinal Schrödinger equation
//!
//! ```text
//! d²χ/dξ² = (ω² + U(ξ)/Ry) χ,   χ(0) = 1, χ'(0) = 0,   ξ = z / a_B,
//! ```
//!
//! for even levels. Independent of the matched spectrum equation: the only
//! shared input is the effective potential.
//!
//! The number of nodes of χ on `ξ > 0` counts the even levels deeper than
//! the trial `ω`, so level `ν` sits where that count steps from `ν` to
//! `ν + 1`; it is located by bisection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::LllPotential;
use crate::spectrum::{SpectrumRequest, SpectrumRoot};

/// `ξ_max ω` kept at or above this, so the bound solution has decayed by
/// `e^{-25}` at the endpoint.
pub const MIN_DECAY_LENGTHS: f64 = 25.0;
const DEFAULT_DECAY_LENGTHS: f64 = 30.0;
const RENORMALIZE_ABOVE: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingConfig {
    /// Integration endpoint in Bohr radii; `None` uses `30 / ω` per trial.
    pub xi_max: Option<f64>,
    /// Local error tolerance of the integrator (relative and absolute).
    pub step_tol: f64,
    /// Search interval for `ω`; `None` derives one from the potential depth.
    pub omega_bracket: Option<(f64, f64)>,
    pub max_bisections: usize,
    /// Bisection stops once the `ω` bracket is narrower than this.
    pub omega_tol: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            xi_max: None,
            step_tol: 1e-10,
            omega_bracket: None,
            max_bisections: 200,
            omega_tol: 1e-10,
        }
    }
}

impl ShootingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_tol > 0.0 && self.omega_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "tolerances must be positive".into(),
            ));
        }
        if let Some((lo, hi)) = self.omega_bracket {
            if !(lo > 0.0 && lo < hi) {
                return Err(Error::InvalidParameter(format!(
                    "omega bracket ({lo}, {hi}) invalid"
                )));
            }
            if let Some(x) = self.xi_max {
                if x * lo < MIN_DECAY_LENGTHS {
                    return Err(Error::InvalidParameter(format!(
                        "xi_max * omega_lo = {} below {MIN_DECAY_LENGTHS}",
                        x * lo
                    )));
                }
            }
        }
        if let Some(x) = self.xi_max {
            if !(x > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "xi_max = {x} must be positive"
                )));
            }
        }
        Ok(())
    }

    fn endpoint(&self, omega: f64) -> f64 {
        self.xi_max.unwrap_or(DEFAULT_DECAY_LENGTHS / omega)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shot {
    /// χ at the endpoint, up to the positive renormalization factor.
    pub endpoint_value: f64,
    pub node_count: usize,
    pub steps: usize,
}

// Dormand–Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Fifth-order minus embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates the even solution out to `xi_max`, counting sign changes of χ.
/// `potential` is `U/Ry` as a function of `ξ ≥ 0`.
pub fn integrate_even_with<P: Fn(f64) -> f64>(
    omega: f64,
    potential: &P,
    xi_max: f64,
    step_tol: f64,
) -> Result<Shot> {
    if !(omega > 0.0 && xi_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need omega > 0 and xi_max > 0, got {omega}, {xi_max}"
        )));
    }
    let w2 = omega * omega;
    let rhs = |x: f64, y: [f64; 2]| [y[1], (w2 + potential(x)) * y[0]];

    let mut x = 0.0;
    let mut y = [1.0, 0.0];
    let depth = (w2 + potential(0.0)).abs().max(w2);
    let mut h = (0.01 / depth.sqrt()).min(xi_max / 10.0);
    let mut k1 = rhs(x, y);
    let mut nodes = 0;
    let mut steps = 0;

    while x < xi_max {
        let last = x + h >= xi_max;
        if last {
            h = xi_max - x;
        }
        let k2 = rhs(x + C2 * h, [y[0] + h * A21 * k1[0], y[1] + h * A21 * k1[1]]);
        let k3 = rhs(
            x + C3 * h,
            [
                y[0] + h * (A31 * k1[0] + A32 * k2[0]),
                y[1] + h * (A31 * k1[1] + A32 * k2[1]),
            ],
        );
        let k4 = rhs(
            x + C4 * h,
            [
                y[0] + h * (A41 * k1[0] + A42 * k2[0] + A43 * k3[0]),
                y[1] + h * (A41 * k1[1] + A42 * k2[1] + A43 * k3[1]),
            ],
        );
        let k5 = rhs(
            x + C5 * h,
            [
                y[0] + h * (A51 * k1[0] + A52 * k2[0] + A53 * k3[0] + A54 * k4[0]),
                y[1] + h * (A51 * k1[1] + A52 * k2[1] + A53 * k3[1] + A54 * k4[1]),
            ],
        );
        let k6 = rhs(
            x + h,
            [
                y[0] + h * (A61 * k1[0] + A62 * k2[0] + A63 * k3[0] + A64 * k4[0] + A65 * k5[0]),
                y[1] + h * (A61 * k1[1] + A62 * k2[1] + A63 * k3[1] + A64 * k4[1] + A65 * k5[1]),
            ],
        );
        let y_new = [
            y[0] + h * (B1 * k1[0] + B3 * k3[0] + B4 * k4[0] + B5 * k5[0] + B6 * k6[0]),
            y[1] + h * (B1 * k1[1] + B3 * k3[1] + B4 * k4[1] + B5 * k5[1] + B6 * k6[1]),
        ];
        let k7 = rhs(x + h, y_new);

        let mut err = 0.0_f64;
        for i in 0..2 {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = step_tol * (1.0 + y[i].abs().max(y_new[i].abs()));
            err = err.max(e.abs() / scale);
        }

        if err <= 1.0 {
            if y_new[0] == 0.0 || y[0] * y_new[0] < 0.0 {
                nodes += 1;
            }
            x = if last { xi_max } else { x + h };
            y = y_new;
            k1 = k7;
            steps += 1;
            let a = y[0].abs().max(y[1].abs());
            if a > RENORMALIZE_ABOVE {
                y = [y[0] / a, y[1] / a];
                k1 = [k1[0] / a, k1[1] / a];
            }
        }
        let factor = if err == 0.0 {
            5.0
        } else if err.is_finite() {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            0.2
        };
        h *= factor;
        if h < f64::EPSILON * x.max(1e-12) {
            return Err(Error::StepUnderflow { at: x });
        }
    }
    Ok(Shot {
        endpoint_value: y[0],
        node_count: nodes,
        steps,
    })
}

/// `U/Ry` in Bohr-radius units for the request's lowest-Landau-level
/// potential.
pub fn rydberg_potential(req: &SpectrumRequest) -> Result<impl Fn(f64) -> f64> {
    let eps = req.permittivities()?;
    let pot = LllPotential::new(req.abs_m, &req.field, &eps, req.charge)?;
    let alpha = req.field.alpha();
    let to_ry = 2.0 / (alpha * alpha);
    Ok(move |xi: f64| pot.eval(xi / alpha) * to_ry)
}

pub fn integrate_even(omega: f64, req: &SpectrumRequest, cfg: &ShootingConfig) -> Result<Shot> {
    cfg.validate()?;
    let u = rydberg_potential(req)?;
    integrate_even_with(omega, &u, cfg.endpoint(omega), cfg.step_tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingLevel {
    pub omega: f64,
    pub nu: u32,
    /// Final `ω` bracket; the node count steps from `nu + 1` to `nu` across it.
    pub bracket: (f64, f64),
    pub shots: usize,
}

/// Even level `nu` (0 = ground) of `χ'' = (ω² + u(ξ))χ`.
pub fn shoot_level_with<P: Fn(f64) -> f64>(
    potential: &P,
    nu: u32,
    cfg: &ShootingConfig,
) -> Result<ShootingLevel> {
    cfg.validate()?;
    let (mut lo, mut hi) = match cfg.omega_bracket {
        Some(b) => b,
        None => {
            // ω² cannot exceed the depth of the well at its bottom.
            let depth = (-potential(0.0)).max(1.0);
            (1e-2, depth.sqrt() * 1.001)
        }
    };
    let count = |w: f64| -> Result<usize> {
        Ok(integrate_even_with(w, potential, cfg.endpoint(w), cfg.step_tol)?.node_count)
    };
    let nu = nu as usize;
    let (n_lo, n_hi) = (count(lo)?, count(hi)?);
    if n_lo <= nu || n_hi > nu {
        return Err(Error::BracketFailure {
            lo,
            hi,
            nodes: if n_lo <= nu { n_lo } else { n_hi },
        });
    }
    let mut shots = 2;
    for _ in 0..cfg.max_bisections {
        if hi - lo <= cfg.omega_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        shots += 1;
        if count(mid)? > nu {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ShootingLevel {
        omega: 0.5 * (lo + hi),
        nu: nu as u32,
        bracket: (lo, hi),
        shots,
    })
}

/// Ground even level for the request's potential. The returned root's
/// `residual` is the width of the final `ω` bracket.
pub fn shoot_ground(req: &SpectrumRequest, cfg: &ShootingConfig) -> Result<SpectrumRoot> {
    shoot_level(req, 0, cfg)
}

pub fn shoot_level(req: &SpectrumRequest, nu: u32, cfg: &ShootingConfig) -> Result<SpectrumRoot> {
    let eps = req.permittivities()?;
    let u = rydberg_potential(req)?;
    let level = shoot_level_with(&u, nu, cfg)?;
    let omega = level.omega;
    let ry = -omega * omega;
    Ok(SpectrumRoot {
        omega,
        nu,
        kappa: req.charge.value() / (eps.eps_perp * omega),
        bracket: level.bracket,
        residual: level.bracket.1 - level.bracket.0,
        energy_ry: ry,
        energy_ev: ry * req.field.constants.rydberg_ev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_equation_is_cosh() {
        for w in [0.5, 2.0] {
            let shot = integrate_even_with(w, &|_| 0.0, 10.0, 1e-12).unwrap();
            let exact = (w * 10.0).cosh();
            assert_eq!(shot.node_count, 0);
            assert!(shot.endpoint_value > 0.0);
            assert!((shot.endpoint_value / exact - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn renormalization_keeps_sign() {
        let shot = integrate_even_with(50.0, &|_| 0.0, 20.0, 1e-10).unwrap();
        assert!(shot.endpoint_value > 0.0 && shot.endpoint_value.is_finite());
    }

    #[test]
    fn square_well_ground_state() {
        // Even ground state of a finite well of depth V, half-width a:
        // k tan(ka) = ω with k² = V - ω², ka < π/2.
        let (v, a) = (10.0, 1.0);
        let well = move |x: f64| if x < a { -v } else { 0.0 };
        let cfg = ShootingConfig {
            xi_max: Some(40.0),
            omega_bracket: Some((1.0, 3.16)),
            ..ShootingConfig::default()
        };
        let got = shoot_level_with(&well, 0, &cfg).unwrap().omega;
        let f = |k: f64| k * (k * a).tan() - (v - k * k).sqrt();
        let (k, _) = crate::roots::brent(f, 0.5, 1.5, Default::default()).unwrap();
        let exact = (v - k * k).sqrt();
        assert!((got - exact).abs() < 1e-6, "{got} vs {exact}");
    }

    #[test]
    fn config_validation() {
        let bad = ShootingConfig {
            xi_max: Some(10.0),
            omega_bracket: Some((1.0, 5.0)),
            ..ShootingConfig::default()
        };
        assert!(bad.validate().is_err());
        let inverted = ShootingConfig {
            omega_bracket: Some((5.0, 1.0)),
            ..ShootingConfig::default()
        };
        assert!(inverted.validate().is_err());
    }

    #[test]
    fn constant_node_count_is_a_bracket_failure() {
        let cfg = ShootingConfig {
            omega_bracket: Some((5.0, 6.0)),
            ..ShootingConfig::default()
        };
        let r = shoot_level_with(&|_| 0.0, 0, &cfg);
        assert!(matches!(r, Err(Error::BracketFailure { .. })));
    }
}
