//! Lower even-parity energy levels of a hydrogen-like atom in a strong
//! magnetic field, with the Coulomb field of the nucleus screened by the
//! magnetized vacuum in the Euler–Heisenberg (local) approximation.
//!
//! The crate is organized bottom-up:
//!
//! - [`specfun`]: log-gamma, digamma, Kummer `M`, Tricomi `U`, Hurwitz zeta.
//! - [`fields`]: field-unit conversions, physical constants, permittivities.
//! - [`potential`]: Landau radial functions and the longitudinal effective
//!   potentials of the lowest Landau level.
//! - [`validity`]: shallow-well and Coulomb-tail diagnostics.
//! - [`spectrum`]: the matched-logarithmic-derivative spectrum equation and
//!   its saturation limit.
//! - [`oracle`]: direct shooting solution of the longitudinal Schrödinger
//!   equation, independent of the spectrum equation.
//!
//! Units: lengths are in electron Compton lengths (`zeta = z / λ_C`) unless a
//! function says otherwise, energies in `Mc²`.

pub mod error;
pub mod fields;
pub mod oracle;
pub mod output;
pub mod potential;
pub mod quad;
pub mod roots;
pub mod specfun;
pub mod spectrum;
pub mod validity;

pub use error::{Error, Result};
pub use fields::{
    field_from, permittivity, FieldStrength, FieldUnit, Permittivities, PermittivityModel,
    PhysicalConstants, RangeFlag,
};
pub use potential::{Charge, CurveTable, PotentialSample, QuantumNumbers, UnitsTag};
pub use spectrum::{SpectrumRequest, SpectrumRoot};
pub use validity::{ValidityReport, ValidityThresholds, Verdict};
