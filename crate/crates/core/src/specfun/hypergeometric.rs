//! Confluent hypergeometric functions: Kummer `M(a, c; x)` and Tricomi
//! `U(a, c; x)` (written Ψ in much of the physics literature).
//!
//! Only the families used by the Landau-level physics are supported:
//! terminating `M` (a a non-positive integer), `M` with half-integer `c`, and
//! `U(1/2, 1/2 - k; x)` for `0 ≤ k ≤ MAX_TRICOMI_ORDER`.

use std::f64::consts::PI;

use super::gamma::{gamma, ln_gamma};
use super::is_integer;
use crate::error::{Error, Result};
use crate::quad::{integrate_with_breaks, QuadConfig};

/// Largest `k` in `U(1/2, 1/2 - k; x)` evaluated to the 1e-9 accuracy target.
pub const MAX_TRICOMI_ORDER: u32 = 5;

const CONNECTION_MAX_X: f64 = 4.0;
const SERIES_MAX_TERMS: usize = 5000;

fn is_half_odd(x: f64) -> bool {
    is_integer(2.0 * x) && !is_integer(x)
}

/// Kummer's function M(a, c; x) = Σ (a)_n / (c)_n · x^n / n!.
///
/// Accepts `a` a non-positive integer (the series terminates), or `c` a
/// half-odd integer with `2a` an integer.
pub fn kummer_m(a: f64, c: f64, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "kummer_m",
            format!("x = {x} must be finite and ≥ 0"),
        ));
    }
    if c <= 0.0 && is_integer(c) {
        return Err(Error::domain(
            "kummer_m",
            format!("c = {c} is a non-positive integer"),
        ));
    }
    let terminating = a <= 0.0 && is_integer(a);
    if !terminating && !(is_half_odd(c) && is_integer(2.0 * a)) {
        return Err(Error::domain(
            "kummer_m",
            format!("unsupported parameters a = {a}, c = {c}"),
        ));
    }
    kummer_series(a, c, x)
}

fn kummer_series(a: f64, c: f64, x: f64) -> Result<f64> {
    let mut sum = 1.0;
    let mut term = 1.0;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        if a + nf == 0.0 {
            return Ok(sum);
        }
        term *= (a + nf) / (c + nf) * x / (nf + 1.0);
        sum += term;
        if nf > x && term.abs() <= 1e-17 * sum.abs() {
            return Ok(sum);
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::domain(
        "kummer_m",
        format!("series did not converge for a = {a}, c = {c}, x = {x}"),
    ))
}

fn tricomi_order(function: &'static str, a: f64, c: f64, x: f64) -> Result<u32> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            function,
            format!("x = {x} must be positive and finite"),
        ));
    }
    if is_integer(c) {
        return Err(Error::domain(
            function,
            format!("c = {c} is an integer (logarithmic case not implemented)"),
        ));
    }
    if a != 0.5 || !is_half_odd(c) || c > 0.5 {
        return Err(Error::domain(
            function,
            format!("supported family is a = 1/2, c = 1/2 - k; got a = {a}, c = {c}"),
        ));
    }
    let k = (0.5 - c).round() as u32;
    if k > MAX_TRICOMI_ORDER {
        return Err(Error::domain(
            function,
            format!("c = {c}: order {k} exceeds supported maximum {MAX_TRICOMI_ORDER}"),
        ));
    }
    Ok(k)
}

/// Abscissa above which the asymptotic expansion is used for order `k`.
fn asymptotic_threshold(k: u32) -> f64 {
    30.0 + 2.0 * k as f64
}

/// Tricomi's function U(1/2, 1/2 - k; x), x > 0.
pub fn tricomi_u(a: f64, c: f64, x: f64) -> Result<f64> {
    let k = tricomi_order("tricomi_u", a, c, x)?;
    Ok(tricomi_half(k, x))
}

/// U(1/2, 1/2 - k; x) for an order already checked against
/// [`MAX_TRICOMI_ORDER`]. Returns 0 for `x = ∞`.
pub(crate) fn tricomi_half(k: u32, x: f64) -> f64 {
    debug_assert!(k <= MAX_TRICOMI_ORDER && x > 0.0);
    if x.is_infinite() {
        0.0
    } else if x <= CONNECTION_MAX_X {
        connection(k, x).expect("connection formula is defined for supported orders")
    } else if x <= asymptotic_threshold(k) {
        recurrence(k, x)
    } else {
        asymptotic(k, x)
    }
}

/// U(a,c;x) = Γ(1-c)/Γ(a-c+1) M(a,c;x) + Γ(c-1)/Γ(a) x^{1-c} M(a-c+1, 2-c; x)
pub(crate) fn connection(k: u32, x: f64) -> Result<f64> {
    let a = 0.5;
    let c = 0.5 - k as f64;
    let first = (ln_gamma(1.0 - c)? - ln_gamma(a - c + 1.0)?).exp() * kummer_series(a, c, x)?;
    let second =
        gamma(c - 1.0)? / PI.sqrt() * x.powf(1.0 - c) * kummer_series(a - c + 1.0, 2.0 - c, x)?;
    Ok(first + second)
}

/// Starts from U(1/2, 3/2; x) = x^{-1/2} and U(1/2, 1/2; x) = √π erfcx(√x), then
/// steps c down by one with
/// (k+1) U_{k+1} = (1/2 + k - x) U_k + x U_{k-1},  U_k = U(1/2, 1/2 - k; x).
pub(crate) fn recurrence(k: u32, x: f64) -> f64 {
    let mut prev = 1.0 / x.sqrt();
    let mut cur = PI.sqrt() * erfcx(x.sqrt());
    for j in 0..k {
        let jf = j as f64;
        let next = ((0.5 + jf - x) * cur + x * prev) / (1.0 + jf);
        prev = cur;
        cur = next;
    }
    cur
}

/// U(a,c;x) ~ x^{-a} Σ (a)_n (a-c+1)_n / n! (-x)^{-n}, truncated at the
/// smallest term.
pub(crate) fn asymptotic(k: u32, x: f64) -> f64 {
    let a = 0.5;
    let ap = a - (0.5 - k as f64) + 1.0;
    let mut sum = 0.0_f64;
    let mut term = 1.0_f64;
    let mut last = f64::INFINITY;
    for n in 0..500 {
        let nf = n as f64;
        if term.abs() >= last {
            break;
        }
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        last = term.abs();
        term *= -(a + nf) * (ap + nf) / ((nf + 1.0) * x);
    }
    sum / x.sqrt()
}

/// Scaled complementary error function e^{y²} erfc(y) for y ≥ 2, by the
/// Laplace continued fraction evaluated with the modified Lentz method.
fn erfcx(y: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = y;
    let mut c = y;
    let mut d = 0.0;
    for n in 1..1000 {
        let an = 0.5 * n as f64;
        d = y + an * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = y + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / (PI.sqrt() * f)
}

/// U(a, c; x) from the Laplace integral
/// U = x^{-a} / Γ(a+1) ∫₀^∞ exp(-v^{1/a}) (1 + v^{1/a}/x)^{c-a-1} dv,
/// which follows from Γ(a) U = ∫₀^∞ e^{-xt} t^{a-1} (1+t)^{c-a-1} dt with
/// t = v^{1/a}/x. Valid for any a > 0, x > 0.
pub fn tricomi_u_oracle(a: f64, c: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(x > 0.0) || !x.is_finite() || !c.is_finite() {
        return Err(Error::domain(
            "tricomi_u_oracle",
            format!("need a > 0, x > 0; got a = {a}, c = {c}, x = {x}"),
        ));
    }
    let inv_a = 1.0 / a;
    let expo = c - a - 1.0;
    // exp(-v^{1/a}) < e^{-45} beyond this point.
    let upper = 45f64.powf(a);
    let integrand = |v: f64| {
        let t = v.powf(inv_a);
        (-t).exp() * (1.0 + t / x).powf(expo)
    };
    // The second factor varies on the scale v ~ x^a; split there so small x
    // resolves.
    let knee = x.powf(a).min(upper * 0.5);
    let mut breaks = vec![knee];
    if knee * 10.0 < upper {
        breaks.push(knee * 10.0);
    }
    let cfg = QuadConfig::with_tolerances(1e-300, 1e-12);
    let r = integrate_with_breaks(integrand, 0.0, upper, &breaks, cfg)?;
    Ok(r.value * x.powf(-a) / ln_gamma(a + 1.0)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kummer_trivial_cases() {
        assert_eq!(kummer_m(0.0, 2.0, 5.0).unwrap(), 1.0);
        assert_relative_eq!(
            kummer_m(-1.0, 2.0, 3.0).unwrap(),
            -0.5,
            max_relative = 1e-15
        );
        // M(1/2, 1/2; x) = e^x
        assert_relative_eq!(
            kummer_m(0.5, 0.5, 3.0).unwrap(),
            3f64.exp(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn kummer_rejects_bad_c() {
        assert!(kummer_m(0.5, -2.0, 1.0).is_err());
        assert!(kummer_m(0.3, 1.7, 1.0).is_err());
    }

    #[test]
    fn tricomi_domain() {
        assert!(tricomi_u(0.5, 1.0, 1.0).is_err());
        assert!(tricomi_u(0.5, 0.5, 0.0).is_err());
        assert!(tricomi_u(0.7, 0.5, 1.0).is_err());
        assert!(tricomi_u(0.5, 0.5 - 6.0, 1.0).is_err());
    }

    #[test]
    fn tricomi_special_case_c_eq_a_plus_one() {
        // Not in the supported family, but the oracle must know U(a, a+1; x) = x^{-a}.
        assert_relative_eq!(
            tricomi_u_oracle(0.5, 1.5, 7.0).unwrap(),
            7f64.powf(-0.5),
            max_relative = 1e-12
        );
    }

    #[test]
    fn tricomi_small_argument_limit() {
        // U(1/2, 1/2 - k; 0⁺) = Γ(k + 1/2) / Γ(k + 1)
        assert_relative_eq!(
            tricomi_u(0.5, 0.5, 1e-14).unwrap(),
            PI.sqrt(),
            max_relative = 1e-6
        );
        assert_relative_eq!(
            tricomi_u(0.5, -0.5, 1e-14).unwrap(),
            PI.sqrt() / 2.0,
            max_relative = 1e-9
        );
    }

    #[test]
    fn branches_agree_around_switch_points() {
        for k in 0..=MAX_TRICOMI_ORDER {
            let xs = asymptotic_threshold(k);
            for i in 0..=12 {
                let x = xs - 3.0 + 0.5 * i as f64;
                let r = recurrence(k, x);
                let s = asymptotic(k, x);
                assert!((r / s - 1.0).abs() < 1e-9, "k={k} x={x}: {r} vs {s}");
            }
            for i in 0..=20 {
                let x = CONNECTION_MAX_X - 1.0 + 0.1 * i as f64;
                let r = recurrence(k, x);
                let s = connection(k, x).unwrap();
                assert!((r / s - 1.0).abs() < 1e-10, "k={k} x={x}: {r} vs {s}");
            }
        }
    }

    #[test]
    fn erfcx_large_argument() {
        // erfcx(y) ~ 1/(y√π) (1 - 1/(2y²) + 3/(4y⁴))
        let y: f64 = 100.0;
        let approx = 1.0 / (y * PI.sqrt()) * (1.0 - 0.5 / (y * y) + 0.75 / y.powi(4));
        assert_relative_eq!(erfcx(y), approx, max_relative = 1e-10);
    }
}
