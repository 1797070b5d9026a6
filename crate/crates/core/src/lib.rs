//! Thermodynamic formalism for almost-additive potentials on topologically
//! mixing Markov shifts: pressure by three independent routes, Gibbs and
//! equilibrium measures, tightness bounds, and zero-temperature limits.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`.

pub mod cli;
pub mod config;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod potential;
pub mod pressure;
pub mod scalar;
pub mod shift;
pub mod zero_temp;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use shift::{AmbientRule, ShiftModel, Symbol, Word};

pub type Potential = potential::PotentialSeq<f64>;
pub type Measure = measures::CylinderMeasure<f64>;
pub type Estimate = pressure::PressureEstimate<f64>;
pub type Curve = pressure::PressureCurve<f64>;
pub type Law = potential::DecayLaw<f64>;
pub type Trace = zero_temp::AnnealTrace<f64>;
pub type Oracle = zero_temp::MaximizingReport<f64>;
