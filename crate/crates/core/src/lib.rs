//! Hydrogenlike composite-boson physics in atomic units: bound-state
//! energetics, mass-defect clock dynamics and pair potentials, each with an
//! independent brute-force cross-check.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clock;
pub mod constants;
pub mod error;
pub mod quadrature;
pub mod scattering;
pub mod spectrum;
pub mod wavefunctions;

pub use constants::{convert, make_species, PhysicalConstants, SpeciesParams, Unit};
pub use error::{CoreError, Result};
pub use spectrum::{QuantumNumbers, WilsonCoefficients};
