//! Split-step solver for coupled mean-field equations of internal-state
//! resolved composite bosons: state-dependent masses, rest-energy offsets,
//! an optional P⁴ correction, mode couplings and a dense contact tensor.
//!
//! Units are whatever the problem file uses with ħ = 1; the presets coming
//! from the core crate are in Hartree atomic units.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod ground;
pub mod observables;
pub mod problem;
pub mod state;
pub mod stepper;

pub use error::{GpeError, Result};
pub use grid::Grid;
pub use ground::{ground_state, ground_state_with, GroundState, GroundStateOptions};
pub use observables::{energy, observables, EnergyBreakdown, Observables};
pub use problem::{GpeProblem, ProblemSpec};
pub use state::GpeState;
pub use stepper::{step, Propagator};
