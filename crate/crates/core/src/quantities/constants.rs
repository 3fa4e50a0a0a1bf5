//! Pinned CODATA-2018 constants and Earth parameters.

use std::f64::consts::PI;

use super::units::{Dimension, Quantity};
use crate::error::{Error, Result};

/// The constant set shared by every calculation in the crate.
///
/// Values are CODATA-2018. `reduced_planck` and `flux_quantum` are derived
/// from the exact `planck` and `electron_charge` values so the defining
/// relations hold to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// e (C)
    pub electron_charge: f64,
    /// m (kg)
    pub electron_mass: f64,
    /// ħ (J s)
    pub reduced_planck: f64,
    /// h (J s)
    pub planck: f64,
    /// ε₀ (F/m)
    pub vacuum_permittivity: f64,
    /// a₀ (m)
    pub bohr_radius: f64,
    /// μ_B (J/T)
    pub bohr_magneton: f64,
    /// Φ₀ = h/2e (Wb)
    pub flux_quantum: f64,
    /// G (m³ kg⁻¹ s⁻²)
    pub gravitational_constant: f64,
    /// Standard gravity (m/s²)
    pub surface_gravity: f64,
    /// Mean Earth radius (m)
    pub earth_radius: f64,
    /// (kg)
    pub earth_mass: f64,
    /// R∞c (Hz)
    pub rydberg_frequency: f64,
}

const H: f64 = 6.626_070_15e-34;
const E: f64 = 1.602_176_634e-19;

static CONSTANTS: PhysicalConstants = PhysicalConstants {
    electron_charge: E,
    electron_mass: 9.109_383_701_5e-31,
    reduced_planck: H / (2.0 * PI),
    planck: H,
    vacuum_permittivity: 8.854_187_812_8e-12,
    bohr_radius: 5.291_772_109_03e-11,
    bohr_magneton: 9.274_010_078_3e-24,
    flux_quantum: H / (2.0 * E),
    gravitational_constant: 6.674_30e-11,
    surface_gravity: 9.806_65,
    earth_radius: 6.371e6,
    earth_mass: 5.9722e24,
    rydberg_frequency: 3.289_841_960_250_8e15,
};

/// Returns the pinned constant set.
pub fn constants() -> &'static PhysicalConstants {
    &CONSTANTS
}

/// Names a constant so it can be handed out as a dimensioned [`Quantity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    ElectronCharge,
    ElectronMass,
    ReducedPlanck,
    Planck,
    VacuumPermittivity,
    BohrRadius,
    BohrMagneton,
    FluxQuantum,
    GravitationalConstant,
    SurfaceGravity,
    EarthRadius,
    EarthMass,
    RydbergFrequency,
}

impl PhysicalConstants {
    /// 1/(4πε₀) in SI units.
    pub fn coulomb_constant(&self) -> f64 {
        1.0 / (4.0 * PI * self.vacuum_permittivity)
    }

    /// G·M_E (m³/s²).
    pub fn earth_gm(&self) -> f64 {
        self.gravitational_constant * self.earth_mass
    }

    pub fn quantity(&self, which: Constant) -> Quantity {
        use Constant::*;
        // exponents over (m, kg, s, A, K, mol, cd)
        let (value, dim) = match which {
            ElectronCharge => (self.electron_charge, [0, 0, 1, 1, 0, 0, 0]),
            ElectronMass => (self.electron_mass, [0, 1, 0, 0, 0, 0, 0]),
            ReducedPlanck => (self.reduced_planck, [2, 1, -1, 0, 0, 0, 0]),
            Planck => (self.planck, [2, 1, -1, 0, 0, 0, 0]),
            VacuumPermittivity => (self.vacuum_permittivity, [-3, -1, 4, 2, 0, 0, 0]),
            BohrRadius => (self.bohr_radius, [1, 0, 0, 0, 0, 0, 0]),
            BohrMagneton => (self.bohr_magneton, [2, 0, 0, 1, 0, 0, 0]),
            FluxQuantum => (self.flux_quantum, [2, 1, -2, -1, 0, 0, 0]),
            GravitationalConstant => (self.gravitational_constant, [3, -1, -2, 0, 0, 0, 0]),
            SurfaceGravity => (self.surface_gravity, [1, 0, -2, 0, 0, 0, 0]),
            EarthRadius => (self.earth_radius, [1, 0, 0, 0, 0, 0, 0]),
            EarthMass => (self.earth_mass, [0, 1, 0, 0, 0, 0, 0]),
            RydbergFrequency => (self.rydberg_frequency, [0, 0, -1, 0, 0, 0, 0]),
        };
        Quantity::new(value, Dimension(dim))
    }

    /// Verifies the defining relations between the pinned values.
    ///
    /// a₀ = 4πε₀ħ²/(m e²) and μ_B = eħ/2m to 1e-9 relative, Φ₀ = h/2e,
    /// and g against GM_E/R_E² to 0.5%. The Bohr-radius relation is also
    /// checked dimensionally.
    pub fn check_consistency(&self) -> Result<()> {
        let q = |c| self.quantity(c);
        let four_pi_eps0 = q(Constant::VacuumPermittivity).scale(4.0 * PI);
        let hbar = q(Constant::ReducedPlanck);
        let e = q(Constant::ElectronCharge);
        let a0 = four_pi_eps0 * hbar * hbar / (q(Constant::ElectronMass) * e * e);
        let diff = a0.checked_sub(&q(Constant::BohrRadius))?;
        rel_check("bohr_radius", diff.value / self.bohr_radius, 1e-9)?;

        let mu_b = self.electron_charge * self.reduced_planck / (2.0 * self.electron_mass);
        rel_check("bohr_magneton", mu_b / self.bohr_magneton - 1.0, 1e-9)?;

        let phi0 = self.planck / (2.0 * self.electron_charge);
        rel_check("flux_quantum", phi0 / self.flux_quantum - 1.0, 1e-15)?;

        let g_newton = self.earth_gm() / (self.earth_radius * self.earth_radius);
        rel_check("surface_gravity", g_newton / self.surface_gravity - 1.0, 5e-3)
    }
}

fn rel_check(key: &str, rel: f64, tol: f64) -> Result<()> {
    if rel.abs() <= tol {
        Ok(())
    } else {
        Err(Error::Validation {
            key: key.to_string(),
            message: format!("relative inconsistency {rel:e} exceeds {tol:e}"),
        })
    }
}
