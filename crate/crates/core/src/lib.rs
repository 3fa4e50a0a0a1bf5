//! Desk-scale numerics for circular Rydberg atoms and superconducting
//! circuits in the Earth's tidal field.
//!
//! * [`quantities`]: pinned constants, dimensioned quantities, JSON scenarios
//! * [`rydberg`]: stretch-state geometry, moment and flux quanta, winding, gaps
//! * [`perturbation`]: first-order diamagnetic and tidal energy shifts and forces
//! * [`freefall`]: converging free-fall of two points, RK4
//! * [`electrostatics`]: exact dumbbell charge sums and the circuit equilibrium
//! * [`cavendish`]: rotating source masses, pendulum tilt, lock-in detection
//! * [`report`]: output records, scenario runners and the reproduction report

// NaN must fail the positivity checks, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cavendish;
pub mod electrostatics;
pub mod error;
pub mod freefall;
pub mod perturbation;
pub mod quadrature;
pub mod quantities;
pub mod report;
pub mod rydberg;

pub use error::{Error, Result};
pub use quantities::{constants, Dimension, PhysicalConstants, Quantity, ScenarioConfig};
pub use rydberg::CircularState;
