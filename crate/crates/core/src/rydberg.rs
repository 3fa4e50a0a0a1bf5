//! Circular Rydberg stretch states |n, n−1, n−1⟩.
//!
//! The electron density is |N|² (r sinθ)^{2(n−1)} exp(−2r/(n a₀)). Its
//! radial integrals are Gamma functions and its polar integrals are Wallis
//! integrals, which gives the exact transverse moment
//!
//! ⟨x² + y²⟩ = n³ (n + 1) a₀²,
//!
//! approaching a_n² = (n² a₀)² as n grows.

use std::f64::consts::{PI, TAU};

use libm::lgamma;

use crate::error::{domain, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::quantities::constants;

/// The stretch state with l = m = n − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircularState {
    n: u32,
}

impl CircularState {
    pub fn new(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(domain("principal quantum number must be >= 1"));
        }
        Ok(CircularState { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.n - 1
    }

    pub fn m(&self) -> u32 {
        self.n - 1
    }

    /// a_n = n² a₀ (m).
    pub fn orbit_radius(&self) -> f64 {
        let n = self.n as f64;
        n * n * constants().bohr_radius
    }

    /// Exact ⟨x² + y²⟩ (m²).
    pub fn transverse_moment(&self) -> f64 {
        let a0 = constants().bohr_radius;
        transverse_moment_bohr(self.n) * a0 * a0
    }

    /// Root-mean-square transverse size √⟨x² + y²⟩ (m).
    pub fn rms_transverse_size(&self) -> f64 {
        self.transverse_moment().sqrt()
    }

    /// ⟨x² + y²⟩ under the large-n approximation a_n² (m²).
    pub fn approx_transverse_moment(&self) -> f64 {
        self.orbit_radius().powi(2)
    }

    /// ln |N|² with lengths in units of a₀.
    pub fn log_norm_squared(&self) -> f64 {
        let n = self.n as f64;
        let beta = 2.0 / n;
        let radial = lgamma(2.0 * n + 1.0) - (2.0 * n + 1.0) * beta.ln();
        let polar = log_wallis(2 * self.n - 1);
        -(radial + polar + TAU.ln())
    }

    /// |∫|Ψ|² dV − 1| with the closed-form normalization and numerical quadrature.
    ///
    /// Everything is evaluated in the log domain so large n does not overflow.
    pub fn normalization_check(&self) -> f64 {
        let n = self.n as f64;
        let log_total = self.log_norm_squared()
            + log_radial_quadrature(2.0 * n, 2.0 / n)
            + polar_quadrature(2.0 * n - 1.0).ln()
            + TAU.ln();
        (log_total.exp() - 1.0).abs()
    }
}

/// ⟨x² + y²⟩ (m²) by Gauss–Legendre quadrature of the density instead of the closed form.
pub fn transverse_moment_quadrature(state: &CircularState) -> f64 {
    let n = state.n as f64;
    let beta = 2.0 / n;
    let radial = (log_radial_quadrature(2.0 * n + 2.0, beta) - log_radial_quadrature(2.0 * n, beta)).exp();
    let polar = polar_quadrature(2.0 * n + 1.0) / polar_quadrature(2.0 * n - 1.0);
    let a0 = constants().bohr_radius;
    radial * polar * a0 * a0
}

/// ln ∫_0^∞ r^k e^{−βr} dr, integrated around the peak r = k/β.
fn log_radial_quadrature(k: f64, beta: f64) -> f64 {
    let peak = k / beta;
    let width = k.max(1.0).sqrt() / beta;
    let lo = (peak - 40.0 * width).max(0.0);
    let hi = peak + 60.0 * width;
    let log_peak = if peak > 0.0 { k * peak.ln() - beta * peak } else { 0.0 };
    let rule = GaussLegendre::new(20);
    let integral = rule.composite(lo, hi, 64, |r| {
        if r <= 0.0 {
            if k == 0.0 { (-log_peak).exp() } else { 0.0 }
        } else {
            (k * r.ln() - beta * r - log_peak).exp()
        }
    });
    log_peak + integral.ln()
}

/// ∫_0^π sin^p θ dθ.
fn polar_quadrature(p: f64) -> f64 {
    GaussLegendre::new(20).composite(0.0, PI, 64, |t| {
        let s = t.sin();
        if s <= 0.0 {
            if p == 0.0 { 1.0 } else { 0.0 }
        } else {
            (p * s.ln()).exp()
        }
    })
}

/// Builds the stretch state for principal quantum number n.
pub fn circular_state(n: u32) -> Result<CircularState> {
    CircularState::new(n)
}

/// ⟨x² + y²⟩ / a₀² = n³ (n + 1).
pub fn transverse_moment_bohr(n: u32) -> f64 {
    let n = n as f64;
    n * n * n * (n + 1.0)
}

/// ln ∫_0^π sin^k θ dθ = ln(√π Γ((k+1)/2) / Γ(k/2 + 1)).
fn log_wallis(k: u32) -> f64 {
    let k = k as f64;
    0.5 * PI.ln() + lgamma(0.5 * (k + 1.0)) - lgamma(0.5 * k + 1.0)
}

/// Quantized orbital magnetic moment n μ_B (J/T).
pub fn magnetic_moment(n: u32) -> Result<f64> {
    if n < 1 {
        return Err(domain("magnetic moment needs n >= 1"));
    }
    Ok(n as f64 * constants().bohr_magneton)
}

/// Trapped flux n h/2e (Wb).
pub fn trapped_flux(n: i64) -> Result<f64> {
    if n < 0 {
        return Err(domain("trapped flux needs n >= 0"));
    }
    Ok(n as f64 * constants().flux_quantum)
}

/// Gap frequency R∞c (1/n_lower² − 1/n_upper²) in Hz.
pub fn transition_frequency(n_upper: u32, n_lower: u32) -> Result<f64> {
    if n_lower < 1 || n_upper <= n_lower {
        return Err(domain(format!(
            "transition needs n_upper > n_lower >= 1, got {n_upper} -> {n_lower}"
        )));
    }
    let inv_sq = |n: u32| 1.0 / (n as f64 * n as f64);
    Ok(constants().rydberg_frequency * (inv_sq(n_lower) - inv_sq(n_upper)))
}

/// Samples of the wavefunction phase around a closed loop.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseLoop {
    samples: Vec<(f64, f64)>,
}

impl PhaseLoop {
    pub const MIN_SAMPLES: usize = 8;

    /// `samples` are (loop angle in [0, 2π), phase in rad), angles strictly increasing.
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < Self::MIN_SAMPLES {
            return Err(Error::InsufficientData(format!(
                "phase loop needs at least {} samples, got {}",
                Self::MIN_SAMPLES,
                samples.len()
            )));
        }
        if let Some(&(a, _)) = samples.iter().find(|(a, _)| !(0.0..TAU).contains(a)) {
            return Err(domain(format!("loop angle {a} outside [0, 2pi)")));
        }
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(domain("loop angles must be strictly increasing"));
        }
        Ok(PhaseLoop { samples })
    }

    /// Samples `phase(angle)` at `count` equally spaced angles.
    pub fn sample(count: usize, phase: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = (0..count)
            .map(|i| {
                let a = TAU * i as f64 / count as f64;
                (a, phase(a))
            })
            .collect();
        Self::new(samples)
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

fn wrap_to_pi(d: f64) -> f64 {
    d - TAU * (d / TAU).round()
}

/// Integer winding m of the phase around the loop, Δφ = 2π m.
///
/// Steps are unwrapped to the nearest branch; a step whose wrapped magnitude
/// reaches π is ambiguous and rejected as undersampled.
pub fn winding_number(phase_loop: &PhaseLoop) -> Result<i64> {
    let s = &phase_loop.samples;
    let limit = PI * (1.0 - 1e-9);
    let mut total = 0.0;
    for i in 0..s.len() {
        let next = s[(i + 1) % s.len()].1;
        let step = wrap_to_pi(next - s[i].1);
        if step.abs() >= limit {
            return Err(Error::Undersampled { index: i, step });
        }
        total += step;
    }
    Ok((total / TAU).round() as i64)
}

/// Whether adjacent-state transitions are dipole allowed distinguishes the two systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantumSystemKind {
    RydbergAtom,
    SuperconductingRing,
}

impl QuantumSystemKind {
    pub fn allowed_adjacent_transitions(&self) -> bool {
        matches!(self, QuantumSystemKind::RydbergAtom)
    }
}

/// True when a perturbation is slow enough that no quantum jump can occur.
///
/// A ring's adjacent flux states are not connected by allowed transitions,
/// so it always passes.
pub fn adiabaticity_check(
    system: QuantumSystemKind,
    gap_frequency: f64,
    perturbation_frequency: f64,
    margin: f64,
) -> Result<bool> {
    if gap_frequency < 0.0 || perturbation_frequency < 0.0 {
        return Err(domain("frequencies must be non-negative"));
    }
    if margin <= 1.0 {
        return Err(domain(format!("margin must exceed 1, got {margin}")));
    }
    if !system.allowed_adjacent_transitions() {
        return Ok(true);
    }
    Ok(perturbation_frequency * margin < gap_frequency)
}
