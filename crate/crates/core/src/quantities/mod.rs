//! Constants, dimensioned quantities and scenario configuration.

mod config;
mod constants;
mod units;

pub use config::{AtomConfig, CavendishConfig, CircuitConfig, DropConfig, ScenarioConfig};
pub use constants::{constants, Constant, PhysicalConstants};
pub use units::{Dimension, Quantity};
