use std::f64::consts::PI;

use super::is_integer;
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_617_6;

// B_{2k} / (2k (2k-1)), k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

// B_{2k} / (2k), k = 1..10
const DIGAMMA_ASYM: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43_867.0 / 14_364.0,
    -174_611.0 / 6600.0,
];

const SHIFT: f64 = 16.0;

/// Natural logarithm of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "ln_gamma",
            format!("x = {x} must be positive and finite"),
        ));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let mut y = x;
    let mut prod = 1.0;
    let mut log_acc = 0.0;
    while y < SHIFT {
        prod *= y;
        if prod > 1e280 {
            log_acc += prod.ln();
            prod = 1.0;
        }
        y += 1.0;
    }
    log_acc += prod.ln();
    Ok(stirling(y) - log_acc)
}

fn stirling(y: f64) -> f64 {
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    (y - 0.5) * y.ln() - y + LN_SQRT_2PI + series
}

/// Γ(x) for real x that is not a non-positive integer.
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && is_integer(x) {
        return Err(Error::Pole {
            function: "gamma",
            at: x,
        });
    }
    if x > 0.0 {
        return Ok(ln_gamma(x)?.exp());
    }
    // Reflection: Γ(x) Γ(1 - x) = π / sin(πx).
    let s = sin_pi(x);
    Ok(PI / (s * ln_gamma(1.0 - x)?.exp()))
}

/// ψ(x) = Γ'(x)/Γ(x).
pub fn digamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("digamma", format!("x = {x}")));
    }
    if x <= 0.0 && is_integer(x) {
        return Err(Error::Pole {
            function: "digamma",
            at: x,
        });
    }
    if x < 0.0 {
        // ψ(x) = ψ(1 - x) - π cot(πx)
        return Ok(digamma(1.0 - x)? - PI * cos_pi(x) / sin_pi(x));
    }
    let mut y = x;
    let mut acc = 0.0;
    while y < SHIFT {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    let mut pow = inv2;
    for c in DIGAMMA_ASYM {
        series += c * pow;
        pow *= inv2;
    }
    Ok(acc + y.ln() - 0.5 / y - series)
}

// sin(πx) and cos(πx) with the argument reduced first, so that poles and
// zeros land exactly.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r > 0.75 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.75 {
        -(PI * (1.0 + r)).sin()
    } else if r > 0.0 {
        (PI * (0.5 - r)).cos()
    } else {
        -(PI * (0.5 + r)).cos()
    }
}

fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}
