//! Real special functions for the parameter families the physics needs.
//!
//! Every routine here is a pure function of its arguments. Inputs outside the
//! supported family are rejected with [`Error::Domain`](crate::Error::Domain)
//! instead of being approximated.

mod gamma;
mod hypergeometric;
mod zeta;

pub use gamma::{digamma, gamma, ln_gamma, EULER_GAMMA};
pub(crate) use hypergeometric::tricomi_half;
pub use hypergeometric::{kummer_m, tricomi_u, tricomi_u_oracle, MAX_TRICOMI_ORDER};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_sderiv, hurwitz_zeta_sderiv_m1};

/// Tolerances used when comparing special-function values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionAccuracy {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for FunctionAccuracy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
        }
    }
}

impl FunctionAccuracy {
    pub fn new(abs_tol: f64, rel_tol: f64) -> crate::Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(crate::Error::InvalidParameter(format!(
                "tolerances must be strictly positive, got abs={abs_tol}, rel={rel_tol}"
            )));
        }
        Ok(Self { abs_tol, rel_tol })
    }

    pub fn accepts(&self, got: f64, want: f64) -> bool {
        (got - want).abs() <= self.abs_tol.max(self.rel_tol * want.abs())
    }
}

/// True when `x` is an integer (exactly representable).
pub(crate) fn is_integer(x: f64) -> bool {
    x.is_finite() && x == x.round()
}
