//! Rotating source masses around the two-cube circuit: pendulum deflection,
//! predicted charge signal, synchronous detection and the outcome table.

use std::f64::consts::TAU;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::electrostatics::{alpha_constant, equilibrium_solve_with_accel, quoted_beta};
use crate::error::{domain, Error, Result};
use crate::quantities::{constants, ScenarioConfig};

/// Point-mass brick piles spaced evenly on a rotating platform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SourceAssembly {
    pub pile_mass: f64,
    pub orbit_radius: f64,
    pub rotation_frequency: f64,
    pub pile_count: u32,
}

impl SourceAssembly {
    pub fn new(pile_mass: f64, orbit_radius: f64, rotation_frequency: f64, pile_count: u32) -> Result<Self> {
        if !(pile_mass > 0.0 && orbit_radius > 0.0 && rotation_frequency > 0.0) {
            return Err(domain("pile mass, orbit radius and rotation frequency must be positive"));
        }
        if pile_count < 1 {
            return Err(domain("need at least one pile"));
        }
        Ok(SourceAssembly { pile_mass, orbit_radius, rotation_frequency, pile_count })
    }

    /// Two diametrically opposite piles as configured.
    pub fn from_config(config: &ScenarioConfig) -> Result<Self> {
        let c = &config.cavendish;
        Self::new(c.brick_mass, c.orbit_radius, c.rotation_frequency, 2)
    }

    /// Platform angle at time t.
    pub fn phase_at(&self, t: f64) -> f64 {
        TAU * self.rotation_frequency * t
    }

    pub fn pile_positions(&self, phase_angle: f64) -> Vec<[f64; 3]> {
        (0..self.pile_count)
            .map(|k| {
                let a = phase_angle + TAU * k as f64 / self.pile_count as f64;
                [self.orbit_radius * a.cos(), self.orbit_radius * a.sin(), 0.0]
            })
            .collect()
    }
}

/// Newtonian acceleration at `eval_point` (m, relative to the platform centre).
pub fn source_field(assembly: &SourceAssembly, phase_angle: f64, eval_point: [f64; 3]) -> Result<[f64; 3]> {
    let g = constants().gravitational_constant;
    let mut acc = [0.0; 3];
    for p in assembly.pile_positions(phase_angle) {
        let d = [p[0] - eval_point[0], p[1] - eval_point[1], p[2] - eval_point[2]];
        let r2: f64 = d.iter().map(|x| x * x).sum();
        if r2.sqrt() <= 1e-12 * assembly.orbit_radius {
            return Err(Error::Singularity("evaluation point sits on a source mass".into()));
        }
        let k = g * assembly.pile_mass / (r2 * r2.sqrt());
        for i in 0..3 {
            acc[i] += k * d[i];
        }
    }
    if eval_point[0].hypot(eval_point[1]) >= assembly.orbit_radius {
        return Err(domain("evaluation point must lie inside the orbit"));
    }
    Ok(acc)
}

/// Converging differential acceleration across a horizontal span along x:
/// a_x(−span/2) − a_x(+span/2). Positive squeezes the span.
pub fn differential_accel(assembly: &SourceAssembly, phase_angle: f64, span: f64) -> Result<f64> {
    let left = source_field(assembly, phase_angle, [-0.5 * span, 0.0, 0.0])?;
    let right = source_field(assembly, phase_angle, [0.5 * span, 0.0, 0.0])?;
    Ok(left[0] - right[0])
}

/// Static plumb-bob tilt a_h/g (rad).
pub fn pendulum_deflection(field_horizontal: f64) -> Result<f64> {
    let g = constants().surface_gravity;
    if field_horizontal.abs() >= 1e-2 * g {
        return Err(Error::SmallAngle(format!(
            "horizontal field {field_horizontal} m/s^2 exceeds 1e-2 g"
        )));
    }
    Ok(field_horizontal / g)
}

/// A uniformly sampled record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformSeries {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl UniformSeries {
    pub fn new(start: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        if !(step > 0.0) {
            return Err(domain("sample step must be positive"));
        }
        Ok(UniformSeries { start, step, values })
    }

    pub fn from_fn(start: f64, step: f64, count: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..count).map(|i| f(start + step * i as f64)).collect();
        Self::new(start, step, values)
    }

    pub fn time(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }

    pub fn duration(&self) -> f64 {
        self.step * self.values.len() as f64
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, k: f64) -> UniformSeries {
        UniformSeries { values: self.values.iter().map(|v| v * k).collect(), ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PendulumResponse {
    pub deflection: UniformSeries,
    /// rad per m/s², 1/g.
    pub static_gain: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionResult {
    pub harmonic: u32,
    pub amplitude: f64,
    /// φ in A cos(ωt − φ).
    pub phase: f64,
    /// 1σ amplitude uncertainty from the fit residual.
    pub noise_floor: f64,
    pub samples_used: usize,
}

/// Lock-in projection onto cos and sin at `harmonic` × `rotation_frequency`.
///
/// The window is the longest whole number of reference periods that fits in
/// `integration_time`, and its mean is removed before projecting.
pub fn synchronous_detect(
    signal: &UniformSeries,
    rotation_frequency: f64,
    harmonic: u32,
    integration_time: f64,
) -> Result<DetectionResult> {
    if harmonic < 1 {
        return Err(domain("harmonic must be >= 1"));
    }
    if !(rotation_frequency > 0.0) {
        return Err(domain("rotation frequency must be positive"));
    }
    let f = rotation_frequency * harmonic as f64;
    let min_time = 10.0 / f;
    if integration_time < min_time * (1.0 - 1e-12) {
        return Err(Error::InsufficientData(format!(
            "integration time {integration_time} s is shorter than 10 periods ({min_time} s)"
        )));
    }
    if signal.duration() < integration_time * (1.0 - 1e-12) {
        return Err(Error::InsufficientData(format!(
            "record of {} s is shorter than the integration time {integration_time} s",
            signal.duration()
        )));
    }
    let periods = (integration_time * f * (1.0 + 1e-12)).floor();
    let n = ((periods / f) / signal.step).round() as usize;
    let n = n.min(signal.len());
    if n < 2 {
        return Err(Error::InsufficientData("window holds fewer than two samples".into()));
    }
    let window = &signal.values[..n];
    let mean = window.iter().sum::<f64>() / n as f64;
    let omega = TAU * f;
    let (mut i_sum, mut q_sum) = (0.0, 0.0);
    for (k, y) in window.iter().enumerate() {
        let (s, c) = (omega * signal.time(k)).sin_cos();
        i_sum += (y - mean) * c;
        q_sum += (y - mean) * s;
    }
    let in_phase = 2.0 * i_sum / n as f64;
    let quadrature = 2.0 * q_sum / n as f64;

    let residual_sq: f64 = window
        .iter()
        .enumerate()
        .map(|(k, y)| {
            let (s, c) = (omega * signal.time(k)).sin_cos();
            let r = y - mean - in_phase * c - quadrature * s;
            r * r
        })
        .sum();
    let sigma = (residual_sq / n as f64).sqrt();

    Ok(DetectionResult {
        harmonic,
        amplitude: in_phase.hypot(quadrature),
        phase: quadrature.atan2(in_phase),
        noise_floor: sigma * (2.0 / n as f64).sqrt(),
        samples_used: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChargeSample {
    pub t: f64,
    /// Converging differential acceleration from the sources across span L (m/s²).
    pub source_accel: f64,
    /// Equilibrium charge under Earth plus source tides (C).
    pub charge: f64,
    /// Small-signal source part Q_E·Δa/(2 g′_E), linear in pile mass (C).
    pub source_charge: f64,
}

/// Induced charge on the circuit at time t.
///
/// The Earth's horizontal tide g L/R_E sets the operating point; the rotating
/// piles add their differential acceleration across the span L.
pub fn predicted_charge_signal(
    assembly: Option<&SourceAssembly>,
    circuit: &ScenarioConfig,
    t: f64,
) -> Result<ChargeSample> {
    let c = constants();
    let (rho, edge) = (circuit.circuit.density, circuit.circuit.cube_edge);
    let earth = c.surface_gravity * edge / c.earth_radius;
    let source_accel = match assembly {
        Some(a) => differential_accel(a, a.phase_at(t), edge)?,
        None => 0.0,
    };
    let alpha = alpha_constant();
    let beta = quoted_beta();
    let base = equilibrium_solve_with_accel(rho, edge, earth, &alpha, &beta)?;
    let total = earth + source_accel;
    let eq = equilibrium_solve_with_accel(rho, edge, total.abs(), &alpha, &beta)?;
    Ok(ChargeSample {
        t,
        source_accel,
        charge: eq.charge.copysign(total),
        source_charge: if earth > 0.0 { base.charge * source_accel / (2.0 * earth) } else { 0.0 },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::I => "I",
            Outcome::II => "II",
            Outcome::III => "III",
            Outcome::IV => "IV",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OutcomeRecord {
    pub charge_separation_detected: bool,
    pub deflection_detected: bool,
    pub classification: Outcome,
}

pub fn classify_outcome(charge_detected: bool, deflection_detected: bool) -> OutcomeRecord {
    let classification = match (charge_detected, deflection_detected) {
        (true, false) => Outcome::I,
        (false, true) => Outcome::II,
        (true, true) => Outcome::III,
        (false, false) => Outcome::IV,
    };
    OutcomeRecord {
        charge_separation_detected: charge_detected,
        deflection_detected,
        classification,
    }
}

/// What the superconducting bobs are assumed to do under the source tides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    /// Cooper pairs hold the lattice: charge appears, bobs do not tilt.
    PairsDragIons,
    /// Everything falls together: bobs tilt, no charge.
    UniversalFreeFall,
    /// Lattice drags the pairs: charge appears and bobs tilt.
    IonsDragPairs,
    /// No response at all.
    NoResponse,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 4] = [
        Hypothesis::PairsDragIons,
        Hypothesis::UniversalFreeFall,
        Hypothesis::IonsDragPairs,
        Hypothesis::NoResponse,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Hypothesis::PairsDragIons => "pairs-drag-ions",
            Hypothesis::UniversalFreeFall => "universal-free-fall",
            Hypothesis::IonsDragPairs => "ions-drag-pairs",
            Hypothesis::NoResponse => "no-response",
        }
    }

    fn channels(&self) -> (bool, bool) {
        match self {
            Hypothesis::PairsDragIons => (true, false),
            Hypothesis::UniversalFreeFall => (false, true),
            Hypothesis::IonsDragPairs => (true, true),
            Hypothesis::NoResponse => (false, false),
        }
    }
}

/// Samples per rotation period in a synthesized record.
pub const SAMPLES_PER_ROTATION: usize = 256;
/// Rotation periods in a synthesized record.
pub const RECORD_ROTATIONS: usize = 20;
/// A channel counts as detected above this many noise floors.
pub const DETECTION_THRESHOLD: f64 = 5.0;

/// A synthesized two-channel record with its detection and classification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CavendishRun {
    pub hypothesis: Hypothesis,
    pub seed: u64,
    pub charge: UniformSeries,
    pub pendulum: PendulumResponse,
    pub charge_detection: DetectionResult,
    pub deflection_detection: DetectionResult,
    pub outcome: OutcomeRecord,
}

/// Builds the charge and deflection records expected under `hypothesis`,
/// adds seeded Gaussian noise, detects both at twice the rotation frequency
/// and classifies the result.
///
/// The deflection channel is the tilt of the bob at +L/2. Noise rms is
/// `cavendish.noise_rms` times the peak modulation each channel has when present.
pub fn run_experiment(config: &ScenarioConfig, hypothesis: Hypothesis, seed: u64) -> Result<CavendishRun> {
    let assembly = SourceAssembly::from_config(config)?;
    let period = 1.0 / assembly.rotation_frequency;
    let step = period / SAMPLES_PER_ROTATION as f64;
    let count = SAMPLES_PER_ROTATION * RECORD_ROTATIONS;
    let bob = 0.5 * config.circuit.cube_edge;

    let mut charge = Vec::with_capacity(count);
    let mut tilt = Vec::with_capacity(count);
    for i in 0..count {
        let t = step * i as f64;
        charge.push(predicted_charge_signal(Some(&assembly), config, t)?.charge);
        let a = source_field(&assembly, assembly.phase_at(t), [bob, 0.0, 0.0])?;
        tilt.push(pendulum_deflection(a[0])?);
    }

    let (with_charge, with_tilt) = hypothesis.channels();
    let static_charge = predicted_charge_signal(None, config, 0.0)?.charge;
    let charge_scale = half_range(&charge);
    let tilt_scale = half_range(&tilt);
    if !with_charge {
        charge.iter_mut().for_each(|q| *q = static_charge);
    }
    if !with_tilt {
        tilt.iter_mut().for_each(|a| *a = 0.0);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    add_noise(&mut charge, config.cavendish.noise_rms * charge_scale, &mut rng)?;
    add_noise(&mut tilt, config.cavendish.noise_rms * tilt_scale, &mut rng)?;

    let charge = UniformSeries::new(0.0, step, charge)?;
    let deflection = UniformSeries::new(0.0, step, tilt)?;
    let window = period * RECORD_ROTATIONS as f64;
    let f = assembly.rotation_frequency;
    let charge_detection = synchronous_detect(&charge, f, 2, window)?;
    let deflection_detection = synchronous_detect(&deflection, f, 2, window)?;
    let outcome = classify_outcome(detected(&charge_detection), detected(&deflection_detection));

    Ok(CavendishRun {
        hypothesis,
        seed,
        charge,
        pendulum: PendulumResponse { deflection, static_gain: 1.0 / constants().surface_gravity },
        charge_detection,
        deflection_detection,
        outcome,
    })
}

fn half_range(v: &[f64]) -> f64 {
    let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    0.5 * (hi - lo)
}

fn add_noise(values: &mut [f64], rms: f64, rng: &mut ChaCha8Rng) -> Result<()> {
    if rms == 0.0 {
        return Ok(());
    }
    let normal = Normal::new(0.0, rms).map_err(|e| domain(e.to_string()))?;
    for v in values {
        *v += normal.sample(rng);
    }
    Ok(())
}

fn detected(d: &DetectionResult) -> bool {
    // noiseless records still carry rounding-level residue
    d.amplitude > DETECTION_THRESHOLD * d.noise_floor && d.amplitude > 0.0
}

/// Seeded zero-mean Gaussian noise record.
pub fn white_noise(count: usize, step: f64, rms: f64, seed: u64) -> Result<UniformSeries> {
    let mut values = vec![0.0; count];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    add_noise(&mut values, rms, &mut rng)?;
    UniformSeries::new(0.0, step, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pair() -> SourceAssembly {
        SourceAssembly::new(500.0, 0.5, 0.01, 2).unwrap()
    }

    #[test]
    fn single_pile_at_centre() {
        let one = SourceAssembly::new(1000.0, 0.5, 0.01, 1).unwrap();
        let a = source_field(&one, 0.0, [0.0; 3]).unwrap();
        let expect = constants().gravitational_constant * 1000.0 / 0.25;
        assert!((a[0] / expect - 1.0).abs() < 1e-14);
        assert!((expect / 2.67e-7 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn symmetric_pair_cancels_at_centre() {
        let a = source_field(&pair(), 0.3, [0.0; 3]).unwrap();
        assert!(a.iter().all(|x| x.abs() < 1e-22), "{a:?}");
        let off = source_field(&pair(), 0.3, [0.01, 0.0, 0.0]).unwrap();
        assert!(off[0].abs() > 1e-10);
    }

    #[test]
    fn half_turn_symmetry() {
        let p = [0.03, -0.02, 0.01];
        let a = source_field(&pair(), 0.7, p).unwrap();
        let b = source_field(&pair(), 0.7 + PI, p).unwrap();
        for i in 0..3 {
            assert!((a[i] - b[i]).abs() <= 1e-14 * a[i].abs().max(1e-20));
        }
    }

    #[test]
    fn superposition() {
        let four = SourceAssembly::new(500.0, 0.5, 0.01, 4).unwrap();
        let single = SourceAssembly::new(500.0, 0.5, 0.01, 1).unwrap();
        let p = [0.05, 0.02, -0.01];
        let phase = 0.4;
        let total = source_field(&four, phase, p).unwrap();
        let mut sum = [0.0; 3];
        for k in 0..4 {
            let a = source_field(&single, phase + TAU * k as f64 / 4.0, p).unwrap();
            for i in 0..3 {
                sum[i] += a[i];
            }
        }
        let scale = sum.iter().map(|x| x.abs()).fold(0.0, f64::max);
        for i in 0..3 {
            assert!((total[i] - sum[i]).abs() <= 1e-14 * scale);
        }
    }

    #[test]
    fn field_errors() {
        assert!(source_field(&pair(), 0.0, [0.6, 0.0, 0.0]).is_err());
        assert!(matches!(source_field(&pair(), 0.0, [0.5, 0.0, 0.0]), Err(Error::Singularity(_))));
        assert!(SourceAssembly::new(0.0, 0.5, 0.01, 2).is_err());
        assert!(SourceAssembly::new(1.0, 0.5, 0.01, 0).is_err());
    }

    #[test]
    fn deflection_values() {
        assert_eq!(pendulum_deflection(0.0).unwrap(), 0.0);
        let d = pendulum_deflection(2.67e-7).unwrap();
        assert!((d / 2.7e-8 - 1.0).abs() < 0.02);
        assert_eq!(pendulum_deflection(2e-7).unwrap() * 2.0, pendulum_deflection(4e-7).unwrap());
        assert!(matches!(pendulum_deflection(1.0), Err(Error::SmallAngle(_))));
    }

    #[test]
    fn detect_pure_tone() {
        let f = 0.01;
        let step = 1.0 / (f * 64.0);
        let s = UniformSeries::from_fn(0.0, step, 64 * 30, |t| 3.5 * (TAU * 2.0 * f * t - 0.4).cos()).unwrap();
        let d = synchronous_detect(&s, f, 2, 1.0 / f * 25.0).unwrap();
        assert!((d.amplitude / 3.5 - 1.0).abs() < 1e-9);
        assert!((d.phase - 0.4).abs() < 1e-9);
        let other = synchronous_detect(&s, f, 3, 1.0 / f * 25.0).unwrap();
        assert!(other.amplitude < 1e-9);
    }

    #[test]
    fn detect_ignores_dc() {
        let s = UniformSeries::from_fn(0.0, 0.25, 4000, |_| 7.0).unwrap();
        for h in 1..4 {
            let d = synchronous_detect(&s, 0.05, h, 600.0).unwrap();
            assert!(d.amplitude < 1e-9 * 7.0);
        }
    }

    #[test]
    fn detect_needs_enough_data() {
        let s = UniformSeries::from_fn(0.0, 0.1, 100, |t| t.sin()).unwrap();
        assert!(matches!(synchronous_detect(&s, 0.5, 1, 5.0), Err(Error::InsufficientData(_))));
        assert!(matches!(synchronous_detect(&s, 0.5, 1, 25.0), Err(Error::InsufficientData(_))));
        assert!(synchronous_detect(&s, 0.5, 0, 10.0).is_err());
    }

    #[test]
    fn outcome_table() {
        assert_eq!(classify_outcome(true, false).classification, Outcome::I);
        assert_eq!(classify_outcome(false, true).classification, Outcome::II);
        assert_eq!(classify_outcome(true, true).classification, Outcome::III);
        assert_eq!(classify_outcome(false, false).classification, Outcome::IV);
    }

    #[test]
    fn earth_only_charge() {
        let cfg = ScenarioConfig::default();
        let q = predicted_charge_signal(None, &cfg, 123.0).unwrap();
        assert!((1.6e-12..1.8e-12).contains(&q.charge));
        assert_eq!(q.source_charge, 0.0);
    }
}
