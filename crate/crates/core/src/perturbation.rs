//! First-order energy shifts from the quadratic terms of the minimally
//! coupled Hamiltonian (p − eA − mh)²/2m, and the forces they produce.
//!
//! Both the diamagnetic A·A term and the gravitational h·h term are
//! quadratic forms in x² + y², so in first order each shift is a prefactor
//! times the transverse moment of the unperturbed state.

use crate::error::{domain, Result};
use crate::quantities::constants;
use crate::rydberg::CircularState;

/// Which transverse moment the shifts use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SizeModel {
    /// n³(n+1) a₀².
    #[default]
    Exact,
    /// a_n² = n⁴ a₀², the large-n form.
    PaperApprox,
}

impl SizeModel {
    pub fn moment(&self, state: &CircularState) -> f64 {
        match self {
            SizeModel::Exact => state.transverse_moment(),
            SizeModel::PaperApprox => state.approx_transverse_moment(),
        }
    }
}

/// Earth parameters for the horizontal tidal field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TidalFieldModel {
    pub surface_gravity: f64,
    pub earth_radius: f64,
    pub earth_gm: f64,
}

impl TidalFieldModel {
    pub fn new(surface_gravity: f64, earth_radius: f64, earth_gm: f64) -> Result<Self> {
        if !(surface_gravity > 0.0 && earth_radius > 0.0 && earth_gm > 0.0) {
            return Err(domain("tidal model parameters must be positive"));
        }
        let mismatch = surface_gravity * earth_radius * earth_radius / earth_gm - 1.0;
        if mismatch.abs() > 5e-3 {
            return Err(domain(format!(
                "g R_E^2 and GM_E disagree by {:.3}%",
                100.0 * mismatch
            )));
        }
        Ok(TidalFieldModel { surface_gravity, earth_radius, earth_gm })
    }

    /// The pinned Earth.
    pub fn earth() -> Self {
        let c = constants();
        TidalFieldModel {
            surface_gravity: c.surface_gravity,
            earth_radius: c.earth_radius,
            earth_gm: c.earth_gm(),
        }
    }

    /// g/R_E, the horizontal tidal gradient at the surface (s⁻²).
    pub fn surface_gradient(&self) -> f64 {
        self.surface_gravity / self.earth_radius
    }

    /// g(r)/r = GM/r³ at geocentric radius r.
    pub fn gradient_at(&self, r: f64) -> f64 {
        self.earth_gm / (r * r * r)
    }
}

impl Default for TidalFieldModel {
    fn default() -> Self {
        TidalFieldModel::earth()
    }
}

/// An energy shift and its force, evaluated at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationResult {
    pub energy_shift: f64,
    pub force: [f64; 3],
    pub time_evaluated: f64,
}

/// Gravitational vector potential h = (g t / R_E)(x, y, 0), the velocity a
/// free-falling point at (x, y) has picked up after time t (m/s).
pub fn tidal_field(x: f64, y: f64, t: f64, model: &TidalFieldModel) -> Result<[f64; 3]> {
    let limit = 1e-3 * model.earth_radius;
    if x.abs() > limit || y.abs() > limit {
        return Err(domain(format!(
            "horizontal offset ({x}, {y}) m exceeds 1e-3 R_E"
        )));
    }
    if t < 0.0 {
        return Err(domain("time since release must be non-negative"));
    }
    let k = model.surface_gradient() * t;
    Ok([k * x, k * y, 0.0])
}

/// Landau diamagnetic shift (e²/8m) ⟨x²+y²⟩ B² (J).
pub fn diamagnetic_shift(state: &CircularState, b: f64, size: SizeModel) -> Result<f64> {
    if b < 0.0 {
        return Err(domain("field magnitude must be non-negative"));
    }
    Ok(diamagnetic_prefactor(state, size) * b * b)
}

fn diamagnetic_prefactor(state: &CircularState, size: SizeModel) -> f64 {
    let c = constants();
    c.electron_charge * c.electron_charge * size.moment(state) / (8.0 * c.electron_mass)
}

/// −(e² ⟨x²+y²⟩/8m) ∇(B²): the atom is pushed toward weaker field.
pub fn magnetic_force(state: &CircularState, grad_b2: [f64; 3], size: SizeModel) -> [f64; 3] {
    let k = diamagnetic_prefactor(state, size);
    grad_b2.map(|g| -k * g)
}

/// Tidal shift (m/2) ⟨x²+y²⟩ (g t/R_E)² at the surface (J).
pub fn gravitational_shift(
    state: &CircularState,
    t: f64,
    model: &TidalFieldModel,
    size: SizeModel,
) -> Result<f64> {
    if t < 0.0 {
        return Err(domain("time since release must be non-negative"));
    }
    let m = constants().electron_mass;
    let k = model.surface_gradient() * t;
    Ok(0.5 * m * size.moment(state) * k * k)
}

/// The tidal shift with both g and R_E evaluated at geocentric radius r:
/// (m/2) ⟨x²+y²⟩ t² (GM/r³)².
pub fn gravitational_shift_at(
    state: &CircularState,
    t: f64,
    r: f64,
    model: &TidalFieldModel,
    size: SizeModel,
) -> Result<f64> {
    if t < 0.0 {
        return Err(domain("time since release must be non-negative"));
    }
    if !(r > 0.0) {
        return Err(domain("geocentric radius must be positive"));
    }
    let m = constants().electron_mass;
    let k = model.gradient_at(r) * t;
    Ok(0.5 * m * size.moment(state) * k * k)
}

/// −∂/∂r of [`gravitational_shift_at`]: 3 m ⟨x²+y²⟩ t² (GM)²/r⁷, along +z (up).
pub fn gravitational_force(
    state: &CircularState,
    t: f64,
    r: f64,
    model: &TidalFieldModel,
    size: SizeModel,
) -> Result<[f64; 3]> {
    if r < model.earth_radius {
        return Err(domain(format!("r = {r} m is below the surface")));
    }
    if t < 0.0 {
        return Err(domain("time since release must be non-negative"));
    }
    let m = constants().electron_mass;
    let gm = model.earth_gm;
    let up = 3.0 * m * size.moment(state) * t * t * gm * gm / r.powi(7);
    Ok([0.0, 0.0, up])
}

/// Shift and force together at altitude r.
pub fn evaluate_tidal(
    state: &CircularState,
    t: f64,
    r: f64,
    model: &TidalFieldModel,
    size: SizeModel,
) -> Result<PerturbationResult> {
    Ok(PerturbationResult {
        energy_shift: gravitational_shift_at(state, t, r, model, size)?,
        force: gravitational_force(state, t, r, model, size)?,
        time_evaluated: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n100() -> CircularState {
        CircularState::new(100).unwrap()
    }

    #[test]
    fn tidal_field_values() {
        let m = TidalFieldModel::earth();
        assert_eq!(tidal_field(0.0, 0.0, 3.0, &m).unwrap(), [0.0; 3]);
        let h = tidal_field(0.01, 0.0, 1.0, &m).unwrap();
        assert!((h[0] / 1.539e-8 - 1.0).abs() < 1e-3);
        assert_eq!(h[1], 0.0);
        let h2 = tidal_field(0.02, 0.0, 1.0, &m).unwrap();
        assert_eq!(h2[0], 2.0 * h[0]);
        assert!(tidal_field(1e4, 0.0, 1.0, &m).is_err());
        assert!(tidal_field(0.0, 0.0, -1.0, &m).is_err());
    }

    #[test]
    fn model_rejects_inconsistent_earth() {
        let c = constants();
        assert!(TidalFieldModel::new(9.80665, c.earth_radius, c.earth_gm()).is_ok());
        assert!(TidalFieldModel::new(9.0, c.earth_radius, c.earth_gm()).is_err());
    }

    #[test]
    fn diamagnetic_values() {
        let s = n100();
        assert_eq!(diamagnetic_shift(&s, 0.0, SizeModel::Exact).unwrap(), 0.0);
        let e = diamagnetic_shift(&s, 1.0, SizeModel::PaperApprox).unwrap();
        assert!((e / 9.9e-22 - 1.0).abs() < 0.01, "{e}");
        let ev = e / constants().electron_charge;
        assert!((ev / 6.2e-3 - 1.0).abs() < 0.02, "{ev}");
        let exact = diamagnetic_shift(&s, 1.0, SizeModel::Exact).unwrap();
        assert!((exact / e - 1.01).abs() < 1e-12);
        let b = 0.37;
        let one = diamagnetic_shift(&s, b, SizeModel::Exact).unwrap();
        let two = diamagnetic_shift(&s, 2.0 * b, SizeModel::Exact).unwrap();
        assert_eq!(two / one, 4.0);
        assert!(diamagnetic_shift(&s, -1.0, SizeModel::Exact).is_err());
    }

    #[test]
    fn magnetic_force_is_low_field_seeking() {
        let s = n100();
        assert_eq!(magnetic_force(&s, [0.0; 3], SizeModel::Exact), [0.0; 3]);
        let f = magnetic_force(&s, [1.0, 0.0, 0.0], SizeModel::PaperApprox);
        let e = diamagnetic_shift(&s, 1.0, SizeModel::PaperApprox).unwrap();
        assert_eq!(f, [-e, 0.0, 0.0]);
        for g in [[1.0, -2.0, 0.5], [-3.0, 0.1, 7.0], [0.0, 0.0, -1.0]] {
            let f = magnetic_force(&s, g, SizeModel::Exact);
            let dot: f64 = f.iter().zip(g).map(|(a, b)| a * b).sum();
            assert!(dot <= 0.0);
        }
    }

    #[test]
    fn gravitational_values() {
        let s = n100();
        let m = TidalFieldModel::earth();
        assert_eq!(gravitational_shift(&s, 0.0, &m, SizeModel::Exact).unwrap(), 0.0);
        let e = gravitational_shift(&s, 1.0, &m, SizeModel::PaperApprox).unwrap();
        assert!((e / 3.0e-55 - 1.0).abs() < 0.02, "{e}");
        let e1 = gravitational_shift(&s, 1.7, &m, SizeModel::Exact).unwrap();
        let e2 = gravitational_shift(&s, 3.4, &m, SizeModel::Exact).unwrap();
        assert_eq!(e2 / e1, 4.0);

        let r = m.earth_radius;
        assert_eq!(gravitational_force(&s, 0.0, r, &m, SizeModel::Exact).unwrap(), [0.0; 3]);
        let f = gravitational_force(&s, 1.0, r, &m, SizeModel::PaperApprox).unwrap();
        assert!((f[2] / 2.8e-61 - 1.0).abs() < 0.03, "{}", f[2]);
        for t in [0.1, 1.0, 10.0] {
            assert!(gravitational_force(&s, t, r, &m, SizeModel::Exact).unwrap()[2] > 0.0);
        }
        assert!(gravitational_force(&s, 1.0, 0.5 * r, &m, SizeModel::Exact).is_err());
    }

    #[test]
    fn force_falls_off_as_r_to_the_minus_seven() {
        let s = n100();
        let m = TidalFieldModel::earth();
        let r = m.earth_radius;
        let f1 = gravitational_force(&s, 1.0, r, &m, SizeModel::Exact).unwrap()[2];
        let f2 = gravitational_force(&s, 1.0, 2.0 * r, &m, SizeModel::Exact).unwrap()[2];
        assert!((f1 / f2 / 128.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gravity_mirrors_magnetism() {
        // e A <-> m h: equal shifts when eB/2m = g t / R_E
        let c = constants();
        let m = TidalFieldModel::earth();
        for n in [1, 10, 100] {
            let s = CircularState::new(n).unwrap();
            for t in [0.5, 1.0, 20.0] {
                let b = 2.0 * c.electron_mass * m.surface_gradient() * t / c.electron_charge;
                let eg = gravitational_shift(&s, t, &m, SizeModel::Exact).unwrap();
                let eb = diamagnetic_shift(&s, b, SizeModel::Exact).unwrap();
                assert!((eg / eb - 1.0).abs() < 1e-12);
            }
        }
    }
}
