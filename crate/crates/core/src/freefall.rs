//! Two points released side by side above a Newtonian point-mass Earth.
//!
//! Positions are local: x is horizontal along the line joining the points
//! (origin on the plumb line through their midpoint), z is altitude above
//! the surface. The geocentric radius is √(x² + (R_E + z)²).

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quantities::constants;

/// Beyond this L/R_E the small-angle form θ ≈ L/R_E is flagged.
pub const SMALL_ANGLE_LIMIT: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FallMode {
    /// Both points fall freely and converge.
    IndependentPoints,
    /// The horizontal separation is held at L; the constraint force is recorded.
    RigidExtended,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FallScenario {
    pub separation: f64,
    pub drop_height: f64,
    pub duration: f64,
    pub step: f64,
    pub mode: FallMode,
}

impl FallScenario {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) {
            return Err(domain("step must be positive"));
        }
        if !(self.duration >= self.step) {
            return Err(domain("duration must cover at least one step"));
        }
        if !(self.separation >= 0.0) || !(self.drop_height >= 0.0) {
            return Err(domain("separation and drop height must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub position: [[f64; 3]; 2],
    pub velocity: [[f64; 3]; 2],
    /// Horizontal force per unit mass holding each point in place (m/s²); zero when free.
    pub constraint_accel: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryPair {
    pub mode: FallMode,
    pub samples: Vec<TrajectorySample>,
}

impl TrajectoryPair {
    pub fn separation(&self, index: usize) -> f64 {
        let s = &self.samples[index];
        let d: f64 = (0..3).map(|k| (s.position[0][k] - s.position[1][k]).powi(2)).sum();
        d.sqrt()
    }

    pub fn separations(&self) -> Vec<f64> {
        (0..self.samples.len()).map(|i| self.separation(i)).collect()
    }

    pub fn last(&self) -> &TrajectorySample {
        self.samples.last().expect("trajectory is non-empty")
    }

    /// Angle of the net displacement of `point` from the vertical (rad).
    pub fn inclination(&self, point: usize) -> f64 {
        let first = &self.samples[0].position[point];
        let last = &self.last().position[point];
        let dx = last[0] - first[0];
        let dz = last[2] - first[2];
        if dz == 0.0 {
            0.0
        } else {
            (dx.abs() / dz.abs()).atan()
        }
    }

    /// Relative angle between the two trajectories, the sum of their inclinations.
    pub fn convergence_angle_observed(&self) -> f64 {
        self.inclination(0) + self.inclination(1)
    }

    /// Largest relative drift of the specific orbital energy of either point.
    pub fn max_energy_drift(&self) -> f64 {
        let energy = |s: &TrajectorySample, p: usize| {
            let v2: f64 = s.velocity[p].iter().map(|v| v * v).sum();
            0.5 * v2 - earth_gm() / geocentric_radius(s.position[p][0], s.position[p][2])
        };
        let e0 = [energy(&self.samples[0], 0), energy(&self.samples[0], 1)];
        self.samples
            .iter()
            .flat_map(|s| (0..2).map(move |p| ((energy(s, p) - e0[p]) / e0[p]).abs()))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceAngle {
    pub radians: f64,
    /// False once L/R_E exceeds [`SMALL_ANGLE_LIMIT`].
    pub small_angle_valid: bool,
}

/// θ ≈ L/R_E between the trajectories of two points a distance L apart.
pub fn convergence_angle(separation: f64) -> Result<ConvergenceAngle> {
    if !(separation >= 0.0) {
        return Err(domain("separation must be non-negative"));
    }
    let radians = separation / constants().earth_radius;
    Ok(ConvergenceAngle { radians, small_angle_valid: radians <= SMALL_ANGLE_LIMIT })
}

/// Magnitude of g′ = g·offset/R_E, pointing back toward the plumb line (m/s²).
pub fn horizontal_accel(offset: f64) -> Result<f64> {
    let c = constants();
    if offset.abs() > 1e-2 * c.earth_radius {
        return Err(domain(format!("offset {offset} m exceeds 1e-2 R_E")));
    }
    Ok(c.surface_gravity * offset.abs() / c.earth_radius)
}

fn earth_gm() -> f64 {
    constants().earth_gm()
}

fn geocentric_radius(x: f64, z: f64) -> f64 {
    x.hypot(constants().earth_radius + z)
}

fn gravity(x: f64, z: f64) -> [f64; 2] {
    let r = geocentric_radius(x, z);
    let k = -earth_gm() / (r * r * r);
    [k * x, k * (constants().earth_radius + z)]
}

// (x, z, vx, vz)
type State = [f64; 4];

fn rk4(s: State, h: f64, deriv: impl Fn(&State) -> State) -> State {
    let add = |a: &State, b: &State, k: f64| -> State {
        [a[0] + k * b[0], a[1] + k * b[1], a[2] + k * b[2], a[3] + k * b[3]]
    };
    let k1 = deriv(&s);
    let k2 = deriv(&add(&s, &k1, 0.5 * h));
    let k3 = deriv(&add(&s, &k2, 0.5 * h));
    let k4 = deriv(&add(&s, &k3, h));
    let mut out = s;
    for i in 0..4 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn free(s: &State) -> State {
    let a = gravity(s[0], s[1]);
    [s[2], s[3], a[0], a[1]]
}

fn rigid(s: &State) -> State {
    let a = gravity(s[0], s[1]);
    [0.0, s[3], 0.0, a[1]]
}

fn sample(t: f64, states: &[State; 2], mode: FallMode) -> TrajectorySample {
    let constraint_accel = match mode {
        FallMode::IndependentPoints => 0.0,
        FallMode::RigidExtended => gravity(states[1][0], states[1][1])[0].abs(),
    };
    TrajectorySample {
        t,
        position: states.map(|s| [s[0], 0.0, s[1]]),
        velocity: states.map(|s| [s[2], 0.0, s[3]]),
        constraint_accel,
    }
}

/// Integrates both points with fixed-step classical RK4.
pub fn simulate_pair(scenario: &FallScenario) -> Result<TrajectoryPair> {
    scenario.validate()?;
    let half = 0.5 * scenario.separation;
    let mut states: [State; 2] = [
        [-half, scenario.drop_height, 0.0, 0.0],
        [half, scenario.drop_height, 0.0, 0.0],
    ];
    let steps = (scenario.duration / scenario.step).round() as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(sample(0.0, &states, scenario.mode));
    for k in 1..=steps {
        states = states.map(|s| match scenario.mode {
            FallMode::IndependentPoints => rk4(s, scenario.step, free),
            FallMode::RigidExtended => rk4(s, scenario.step, rigid),
        });
        let t = k as f64 * scenario.step;
        if states.iter().any(|s| s[1] < 0.0) {
            return Err(Error::TruncatedTrajectory {
                time: t,
                partial: Box::new(TrajectoryPair { mode: scenario.mode, samples }),
            });
        }
        samples.push(sample(t, &states, scenario.mode));
    }
    Ok(TrajectoryPair { mode: scenario.mode, samples })
}
