//! Fixtures shared by the criterion benchmarks.

use qincompress_core::freefall::{FallMode, FallScenario};

/// A one-second drop of two points 1 m apart from 10 m.
pub fn one_second_drop(mode: FallMode) -> FallScenario {
    FallScenario { separation: 1.0, drop_height: 10.0, duration: 1.0, step: 1e-3, mode }
}
