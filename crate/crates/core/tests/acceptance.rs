//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use qincompress_core::cavendish::{self, Outcome, SourceAssembly, UniformSeries};
use qincompress_core::electrostatics::{self, alpha_constant, quoted_beta, ratio, to_f64};
use qincompress_core::freefall::{self, FallMode, FallScenario};
use qincompress_core::perturbation::{self, SizeModel, TidalFieldModel};
use qincompress_core::report::{reproduce_paper, ReproduceOptions};
use qincompress_core::rydberg::{self, circular_state};
use qincompress_core::{constants, Result};

// Regression locks, evaluated once from the pinned constants outside this crate.
const V_FF_LOCK: f64 = 1.176_189_338_085_707_8;
const GAP_LOCK: f64 = 6_679_711_765.023_031;

type Criterion = (&'static str, fn() -> Result<Verdict>);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict { passed, detail: detail.into() })
}

fn alpha_exact() -> Result<Verdict> {
    let start = Instant::now();
    let alpha = alpha_constant();
    let elapsed = start.elapsed();
    verdict(alpha == ratio(11, 18) && elapsed.as_secs_f64() < 1e-3, format!("alpha = {alpha} in {elapsed:?}"))
}

fn voltage_scale() -> Result<Verdict> {
    let c = constants();
    let (rho, l) = (1e4, 0.01);
    let v = electrostatics::freefall_voltage_scale(rho, l)?;
    let direct = (rho * c.surface_gravity * l.powi(4) / (4.0 * PI * c.vacuum_permittivity * c.earth_radius)).sqrt();
    let ok = (0.8..=1.5).contains(&v) && (v / V_FF_LOCK - 1.0).abs() <= 1e-9 && (v / direct - 1.0).abs() <= 1e-12;
    verdict(ok, format!("V_FF = {v:.12} V"))
}

fn charge_scale() -> Result<Verdict> {
    let eq = electrostatics::equilibrium_solve(1e4, 0.01, &alpha_constant(), &quoted_beta())?;
    let ok = (0.5e-12..=5e-12).contains(&eq.charge) && eq.residual <= 1e-12;
    verdict(ok, format!("Q = {:.4e} C, residual {:.1e}", eq.charge, eq.residual))
}

fn chain_identity() -> Result<Verdict> {
    let (alpha, beta) = (alpha_constant(), quoted_beta());
    let eq = electrostatics::equilibrium_solve(1e4, 0.01, &alpha, &beta)?;
    let vff = electrostatics::freefall_voltage_scale(1e4, 0.01)?;
    let chain = to_f64(&beta).abs() / to_f64(&alpha).sqrt() * vff;
    let err = (eq.voltage / chain - 1.0).abs();
    verdict(err <= 1e-12, format!("V = {:.12} V, relative gap {err:.1e}", eq.voltage))
}

fn transition_gap() -> Result<Verdict> {
    let gap = rydberg::transition_frequency(100, 99)?;
    let formula = constants().rydberg_frequency * (1.0 / (99.0 * 99.0) - 1.0 / (100.0 * 100.0));
    let ok = (5e9..=8e9).contains(&gap) && (gap / GAP_LOCK - 1.0).abs() <= 1e-9 && (gap / formula - 1.0).abs() <= 1e-12;
    verdict(ok, format!("gap = {gap:.6e} Hz"))
}

fn moment_asymptote() -> Result<Verdict> {
    let a0 = constants().bohr_radius;
    let ratio100 = circular_state(100)?.transverse_moment() / (1e8 * a0 * a0);
    let worst = (1..=50)
        .map(|n| (rydberg::transverse_moment_bohr(n) / common::transverse_moment_oracle(n) - 1.0).abs())
        .fold(0.0, f64::max);
    let r2 = common::ground_state_r2_oracle();
    let ground = circular_state(1)?.transverse_moment() / (a0 * a0);
    let ground_ok = (ground - 2.0).abs() < 1e-12 && (ground - 2.0 / 3.0 * r2).abs() < 1e-10;
    let ok = (ratio100 - 1.0).abs() <= 0.02 && worst <= 1e-10 && ground_ok;
    verdict(ok, format!("ratio(100) = {ratio100:.6}, worst quadrature gap {worst:.1e}, n=1 -> {ground:.12} a0^2"))
}

fn gradient_consistency() -> Result<Verdict> {
    let model = TidalFieldModel::earth();
    let s = circular_state(100)?;
    let mut worst: f64 = 0.0;
    for k in 0..5 {
        let r = model.earth_radius + 1e5 * k as f64;
        let shift = |x: f64| perturbation::gravitational_shift_at(&s, 1.0, x, &model, SizeModel::Exact).unwrap_or(f64::NAN);
        let fd = -common::richardson_derivative(shift, r, 1e-3 * model.earth_radius);
        let f = perturbation::gravitational_force(&s, 1.0, r, &model, SizeModel::Exact)?[2];
        worst = worst.max((f / fd - 1.0).abs());
    }
    let surface = perturbation::gravitational_force(&s, 1.0, model.earth_radius, &model, SizeModel::Exact)?[2].abs();
    let ok = worst <= 1e-6 && surface < 1e-50 && (surface / 2.8e-61 - 1.0).abs() < 0.1;
    verdict(ok, format!("|F| = {surface:.3e} N, worst gradient gap {worst:.1e}"))
}

fn freefall_convergence() -> Result<Verdict> {
    let c = constants();
    let scenario =
        FallScenario { separation: 1.0, drop_height: 10.0, duration: 1.0, step: 1e-3, mode: FallMode::IndependentPoints };
    let pair = freefall::simulate_pair(&scenario)?;
    let shrink = 1.0 - pair.separation(pair.samples.len() - 1);
    let gm = c.gravitational_constant * c.earth_mass;
    let r = c.earth_radius + 10.0;
    let predicted = gm / r.powi(3) / 2.0;
    let shrink_err = (shrink / predicted - 1.0).abs();
    let theta = freefall::convergence_angle(1.0)?.radians;
    let angle_err = (0..2).map(|p| (2.0 * pair.inclination(p) / theta - 1.0).abs()).fold(0.0, f64::max);
    let drift = pair.max_energy_drift();
    let ok = shrink_err <= 1e-3 && angle_err <= 0.01 && drift <= 1e-9;
    verdict(ok, format!("shrink gap {shrink_err:.1e}, angle gap {angle_err:.1e}, energy drift {drift:.1e}"))
}

fn cavendish_scales() -> Result<Verdict> {
    let pile = SourceAssembly::new(500.0, 0.5, 0.01, 1)?;
    let tilt = cavendish::pendulum_deflection(cavendish::source_field(&pile, 0.0, [0.0; 3])?[0])?.abs();

    let f = 0.01;
    let per_turn = 128;
    let step = 1.0 / (f * per_turn as f64);
    let count = per_turn * 20;
    let amp = 4.0e-9;
    let tone = UniformSeries::from_fn(0.0, step, count, |t| amp * (TAU * 2.0 * f * t - 1.1).cos())?;
    let clean = cavendish::synchronous_detect(&tone, f, 2, 20.0 / f)?;
    let clean_err = (clean.amplitude / amp - 1.0).abs();

    let sigma = 0.2 * amp;
    let mut worst: f64 = 0.0;
    for seed in 0..20 {
        let noise = cavendish::white_noise(count, step, sigma, seed)?;
        let noisy = UniformSeries::new(0.0, step, tone.values.iter().zip(&noise.values).map(|(a, b)| a + b).collect())?;
        let d = cavendish::synchronous_detect(&noisy, f, 2, 20.0 / f)?;
        let bound = 5.0 * sigma / (d.samples_used as f64).sqrt();
        worst = worst.max((d.amplitude - amp).abs() / bound);
    }
    let ok = (5e-9..=100e-9).contains(&tilt) && clean_err <= 1e-6 && worst <= 1.0;
    verdict(ok, format!("tilt = {:.2} nrad, noiseless gap {clean_err:.1e}, worst noisy error {worst:.2} of 5 sigma/sqrt(N)", tilt * 1e9))
}

fn outcome_table() -> Result<Verdict> {
    let table = [(true, false, Outcome::I), (false, true, Outcome::II), (true, true, Outcome::III), (false, false, Outcome::IV)];
    let ok = table.iter().all(|&(q, d, o)| cavendish::classify_outcome(q, d).classification == o);
    verdict(ok, "(Y,N) I, (N,Y) II, (Y,Y) III, (N,N) IV")
}

fn determinism() -> Result<Verdict> {
    let opts = ReproduceOptions { seed: 0, alpha_override: None };
    let a = reproduce_paper(&opts)?.to_json();
    let b = reproduce_paper(&opts)?.to_json();
    verdict(a == b, format!("{} bytes per report", a.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [Criterion; 11] = [
        ("alpha exactness", alpha_exact),
        ("voltage scale", voltage_scale),
        ("charge scale", charge_scale),
        ("chain identity", chain_identity),
        ("transition gap", transition_gap),
        ("moment asymptote", moment_asymptote),
        ("gradient consistency", gradient_consistency),
        ("free-fall convergence", freefall_convergence),
        ("cavendish orders of magnitude", cavendish_scales),
        ("outcome table", outcome_table),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (passed, detail) = match check() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failures += 1;
        }
        println!("{} [{}] {name}: {detail}", if passed { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failures, criteria.len(), start.elapsed());
    if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
