//! JSON scenario configuration.
//!
//! ```json
//! {
//!   "circuit":   { "L_m": 0.01, "rho_kg_m3": 1e4 },
//!   "atom":      { "n": 100 },
//!   "drop":      { "height_m": 10, "duration_s": 1, "step_s": 1e-3, "separation_m": 1 },
//!   "cavendish": { "brick_mass_kg": 500, "orbit_radius_m": 0.5, "rotation_hz": 0.01, "noise_rms": 0.01 }
//! }
//! ```
//!
//! Every key is optional; missing keys take the defaults above. Unknown keys
//! are rejected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CircuitConfig {
    /// Cube edge and separation L (m).
    #[serde(rename = "L_m")]
    pub cube_edge: f64,
    /// Cube density ρ (kg/m³).
    #[serde(rename = "rho_kg_m3")]
    pub density: f64,
}

impl Default for CircuitConfig {
    fn default() -> Self {
        CircuitConfig { cube_edge: 0.01, density: 1e4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AtomConfig {
    #[serde(rename = "n")]
    pub principal_n: u32,
}

impl Default for AtomConfig {
    fn default() -> Self {
        AtomConfig { principal_n: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DropConfig {
    #[serde(rename = "height_m")]
    pub height: f64,
    #[serde(rename = "duration_s")]
    pub duration: f64,
    #[serde(rename = "step_s")]
    pub step: f64,
    #[serde(rename = "separation_m")]
    pub separation: f64,
}

impl Default for DropConfig {
    fn default() -> Self {
        DropConfig { height: 10.0, duration: 1.0, step: 1e-3, separation: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CavendishConfig {
    /// Mass of each of the two brick piles (kg).
    #[serde(rename = "brick_mass_kg")]
    pub brick_mass: f64,
    #[serde(rename = "orbit_radius_m")]
    pub orbit_radius: f64,
    #[serde(rename = "rotation_hz")]
    pub rotation_frequency: f64,
    /// Additive Gaussian noise, as a fraction of each channel's peak modulation.
    pub noise_rms: f64,
}

impl Default for CavendishConfig {
    fn default() -> Self {
        CavendishConfig {
            brick_mass: 500.0,
            orbit_radius: 0.5,
            rotation_frequency: 0.01,
            noise_rms: 0.01,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub circuit: CircuitConfig,
    pub atom: AtomConfig,
    pub drop: DropConfig,
    pub cavendish: CavendishConfig,
}

impl ScenarioConfig {
    /// Parses and validates a JSON document. Blank input yields the defaults.
    pub fn load(source: &str) -> Result<ScenarioConfig> {
        let source = if source.trim().is_empty() { "{}" } else { source };
        let de = &mut serde_json::Deserializer::from_str(source);
        let config: ScenarioConfig =
            serde_path_to_error::deserialize(de).map_err(|err| Error::MalformedInput {
                key: err.path().to_string(),
                message: err.inner().to_string(),
            })?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("circuit.L_m", self.circuit.cube_edge),
            ("circuit.rho_kg_m3", self.circuit.density),
            ("drop.duration_s", self.drop.duration),
            ("drop.step_s", self.drop.step),
            ("cavendish.brick_mass_kg", self.cavendish.brick_mass),
            ("cavendish.orbit_radius_m", self.cavendish.orbit_radius),
            ("cavendish.rotation_hz", self.cavendish.rotation_frequency),
        ];
        for (key, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(key, format!("must be positive and finite, got {v}")));
            }
        }
        let nonnegative = [
            ("drop.height_m", self.drop.height),
            ("drop.separation_m", self.drop.separation),
            ("cavendish.noise_rms", self.cavendish.noise_rms),
        ];
        for (key, v) in nonnegative {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(key, format!("must be non-negative and finite, got {v}")));
            }
        }
        if self.atom.principal_n < 1 {
            return Err(invalid("atom.n", "principal quantum number must be >= 1".into()));
        }
        if self.drop.duration < self.drop.step {
            return Err(invalid("drop.duration_s", "must be at least one step".into()));
        }
        Ok(())
    }
}

fn invalid(key: &str, message: String) -> Error {
    Error::Validation { key: key.to_string(), message }
}
