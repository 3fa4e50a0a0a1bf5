//! Reference computations kept apart from the library code paths they check.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

// 10-point Gauss–Legendre on [-1, 1]
const GL10_X: [f64; 5] = [
    0.148_874_338_981_631_2,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL10_W: [f64; 5] = [
    0.295_524_224_714_752_9,
    0.269_266_719_309_996_3,
    0.219_086_362_515_982,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_1,
];

/// Composite 10-point Gauss–Legendre nodes and weights on [a, b].
pub fn gl10_grid(a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * 10);
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        for (x, w) in GL10_X.iter().zip(GL10_W) {
            out.push((mid - 0.5 * h * x, 0.5 * h * w));
            out.push((mid + 0.5 * h * x, 0.5 * h * w));
        }
    }
    out
}

pub fn gl10(a: f64, b: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    gl10_grid(a, b, panels).into_iter().map(|(x, w)| w * f(x)).sum()
}

/// ⟨x² + y²⟩/a₀² for the stretch state by 2-D (r, θ) quadrature of the
/// density r^{2n−2} sin^{2n−2}θ e^{−2r/n} over r² sinθ dr dθ.
pub fn transverse_moment_oracle(n: u32) -> f64 {
    let nf = n as f64;
    let beta = 2.0 / nf;
    let k = 2.0 * nf; // power of r including the Jacobian
    let peak = k / beta;
    let sigma = k.sqrt() / beta;
    let r_grid = gl10_grid(0.0, peak + 80.0 * sigma, 80);
    let t_grid = gl10_grid(0.0, PI, 60);
    let log_peak = k * peak.ln() - beta * peak;
    let p = 2.0 * nf - 1.0; // power of sinθ including the Jacobian

    let mut num = 0.0;
    let mut den = 0.0;
    for &(r, wr) in &r_grid {
        let radial = (k * r.ln() - beta * r - log_peak).exp();
        for &(t, wt) in &t_grid {
            let s = t.sin();
            let w = wr * wt * radial * (p * s.ln()).exp();
            den += w;
            num += w * r * r * s * s;
        }
    }
    num / den
}

/// ⟨r²⟩/a₀² of the 1s state from ∫ r⁴ e^{−2r} / ∫ r² e^{−2r}.
pub fn ground_state_r2_oracle() -> f64 {
    let num = gl10(0.0, 60.0, 60, |r| r.powi(4) * (-2.0 * r).exp());
    let den = gl10(0.0, 60.0, 60, |r| r.powi(2) * (-2.0 * r).exp());
    num / den
}

/// Net winding of phase(θ) by sequential unwrapping on a dense grid.
pub fn brute_force_winding(samples: usize, phase: impl Fn(f64) -> f64) -> f64 {
    let mut prev = phase(0.0);
    let mut total = 0.0;
    for i in 1..=samples {
        let cur = phase(TAU * i as f64 / samples as f64);
        let mut d = cur - prev;
        while d > PI {
            d -= TAU;
        }
        while d < -PI {
            d += TAU;
        }
        total += d;
        prev = cur;
    }
    total / TAU
}

/// Force on the charges in `group` along +x, floating point, k = 1.
pub fn float_axial_force(charges: &[(f64, f64)], group: &[usize]) -> f64 {
    let mut f = 0.0;
    for &i in group {
        for (j, &(qj, xj)) in charges.iter().enumerate() {
            if group.contains(&j) {
                continue;
            }
            let (qi, xi) = charges[i];
            let d = xi - xj;
            f += qi * qj * d.signum() / (d * d);
        }
    }
    f
}

/// Central difference with one Richardson step.
pub fn richardson_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

/// Amplitude of the k-th Fourier component of one period sampled uniformly.
pub fn dft_amplitude(values: &[f64], k: usize) -> f64 {
    let n = values.len() as f64;
    let (mut re, mut im) = (0.0, 0.0);
    for (i, v) in values.iter().enumerate() {
        let a = TAU * (k * i) as f64 / n;
        re += v * a.cos();
        im += v * a.sin();
    }
    2.0 * re.hypot(im) / n
}
