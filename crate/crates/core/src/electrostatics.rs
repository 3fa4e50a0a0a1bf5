//! Exact point-charge electrostatics of the two-dumbbell model and the
//! electro-gravitational equilibrium of the two-cube circuit.
//!
//! Charges are rational multiples of Q and positions rational multiples of L
//! along the dumbbell axis, so forces come out as exact multiples of
//! kQ²/L² and potentials as exact multiples of kQ/L, with k = 1/(4πε₀).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quantities::constants;

/// Builds n/d.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCharge {
    /// In units of Q.
    pub charge: BigRational,
    /// In units of L.
    pub position: BigRational,
}

impl PointCharge {
    pub fn new(charge: BigRational, position: BigRational) -> Self {
        PointCharge { charge, position }
    }
}

/// Collinear point charges with distinct positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeConfiguration {
    charges: Vec<PointCharge>,
}

impl ChargeConfiguration {
    pub fn new(charges: Vec<PointCharge>) -> Result<Self> {
        for (i, a) in charges.iter().enumerate() {
            for b in &charges[i + 1..] {
                if a.position == b.position {
                    return Err(Error::Singularity(format!(
                        "two charges share position {}",
                        a.position
                    )));
                }
            }
        }
        Ok(ChargeConfiguration { charges })
    }

    pub fn charges(&self) -> &[PointCharge] {
        &self.charges
    }

    /// Exact potential at `point` from the charges selected by `sources`.
    pub fn potential_at(&self, point: &BigRational, sources: &[usize]) -> Result<BigRational> {
        let mut v = BigRational::zero();
        for &j in sources {
            let c = &self.charges[j];
            let d = (point - &c.position).abs();
            if d.is_zero() {
                return Err(Error::Singularity(format!("potential evaluated on charge {j}")));
            }
            v += &c.charge / d;
        }
        Ok(v)
    }

    /// Net force along +x on `group` from every other charge, exact.
    pub fn axial_force(&self, group: &[usize]) -> Result<BigRational> {
        self.check_group(group)?;
        let mut f = BigRational::zero();
        for &i in group {
            let a = &self.charges[i];
            for (j, b) in self.charges.iter().enumerate() {
                if group.contains(&j) {
                    continue;
                }
                let d = &a.position - &b.position;
                let d2 = &d * &d;
                let term = &a.charge * &b.charge / d2;
                if d.is_positive() {
                    f += term;
                } else {
                    f -= term;
                }
            }
        }
        Ok(f)
    }

    fn check_group(&self, group: &[usize]) -> Result<()> {
        if group.is_empty() {
            return Err(domain("force group must not be empty"));
        }
        if let Some(&i) = group.iter().find(|&&i| i >= self.charges.len()) {
            return Err(domain(format!("charge index {i} out of range")));
        }
        Ok(())
    }

    fn mean_position(&self, idx: impl Iterator<Item = usize>) -> Option<BigRational> {
        let mut sum = BigRational::zero();
        let mut count = 0i64;
        for i in idx {
            sum += &self.charges[i].position;
            count += 1;
        }
        (count > 0).then(|| sum / BigRational::from_integer(count.into()))
    }
}

/// Net Coulomb force on `group` from the rest of the configuration, in units
/// of kQ²/L². Positive means repulsive, i.e. directed away from the other charges.
pub fn coulomb_force(config: &ChargeConfiguration, group: &[usize]) -> Result<BigRational> {
    let axial = config.axial_force(group)?;
    let mine = config.mean_position(group.iter().copied());
    let theirs = config.mean_position((0..config.charges.len()).filter(|j| !group.contains(j)));
    match (mine, theirs) {
        (Some(a), Some(b)) if a < b => Ok(-axial),
        (Some(a), Some(b)) if a > b => Ok(axial),
        (Some(_), Some(_)) => Err(domain("group and remainder share a centre; repulsion is undefined")),
        _ => Ok(BigRational::zero()),
    }
}

/// Floating-point force along an arbitrary axis for charges anywhere in space,
/// in units of kQ²/L².
pub fn coulomb_force_3d(
    charges: &[(f64, [f64; 3])],
    group: &[usize],
    axis: [f64; 3],
) -> Result<f64> {
    let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(domain("projection axis must be non-zero"));
    }
    let mut f = 0.0;
    for &i in group {
        let (qi, pi) = charges[i];
        for (j, &(qj, pj)) in charges.iter().enumerate() {
            if group.contains(&j) {
                continue;
            }
            let d = [pi[0] - pj[0], pi[1] - pj[1], pi[2] - pj[2]];
            let r2 = d.iter().map(|x| x * x).sum::<f64>();
            if r2 == 0.0 {
                return Err(Error::Singularity(format!("charges {i} and {j} coincide")));
            }
            let along = (d[0] * axis[0] + d[1] * axis[1] + d[2] * axis[2]) / norm;
            f += qi * qj * along / (r2 * r2.sqrt());
        }
    }
    Ok(f)
}

/// Two collinear dumbbells of length L, inner ends L apart:
/// (−Q at 0, +Q at L) and (+Q at 2L, −Q at 3L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DumbbellPair {
    config: ChargeConfiguration,
}

impl DumbbellPair {
    pub const LEFT_OUTER: usize = 0;
    pub const LEFT_INNER: usize = 1;
    pub const RIGHT_INNER: usize = 2;
    pub const RIGHT_OUTER: usize = 3;

    pub fn canonical() -> Self {
        Self::with_spacing(ratio(1, 1))
    }

    /// The canonical layout with every distance multiplied by `spacing`.
    pub fn with_spacing(spacing: BigRational) -> Self {
        let at = |k: i64| BigRational::from_integer(k.into()) * &spacing;
        let charges = vec![
            PointCharge::new(ratio(-1, 1), at(0)),
            PointCharge::new(ratio(1, 1), at(1)),
            PointCharge::new(ratio(1, 1), at(2)),
            PointCharge::new(ratio(-1, 1), at(3)),
        ];
        DumbbellPair {
            config: ChargeConfiguration::new(charges).expect("distinct positions"),
        }
    }

    pub fn config(&self) -> &ChargeConfiguration {
        &self.config
    }

    pub fn right_group() -> [usize; 2] {
        [Self::RIGHT_INNER, Self::RIGHT_OUTER]
    }

    pub fn left_group() -> [usize; 2] {
        [Self::LEFT_OUTER, Self::LEFT_INNER]
    }
}

/// The dimensionless force constant α of the canonical pair: 11/18.
pub fn alpha_constant() -> BigRational {
    coulomb_force(DumbbellPair::canonical().config(), &DumbbellPair::right_group())
        .expect("canonical pair is valid")
}

/// The magnitude quoted for β; no convention below reproduces it.
pub fn quoted_beta() -> BigRational {
    ratio(-2, 3)
}

/// Which charges set the potential at each end of the left dumbbell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VoltageConvention {
    /// Each end sees the three charges other than itself.
    AllOtherCharges,
    /// Both ends see only the two charges of the right dumbbell.
    OtherDumbbellOnly,
    /// Each end sees only its partner on the same rod.
    PartnerOnly,
    /// Both ends see only the right dumbbell charge nearest the system midpoint.
    MidpointNearestCharge,
}

impl VoltageConvention {
    pub const ALL: [VoltageConvention; 4] = [
        VoltageConvention::AllOtherCharges,
        VoltageConvention::OtherDumbbellOnly,
        VoltageConvention::PartnerOnly,
        VoltageConvention::MidpointNearestCharge,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            VoltageConvention::AllOtherCharges => "all-other-charges",
            VoltageConvention::OtherDumbbellOnly => "other-dumbbell-only",
            VoltageConvention::PartnerOnly => "partner-only",
            VoltageConvention::MidpointNearestCharge => "midpoint-nearest-charge",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            VoltageConvention::AllOtherCharges => "each end sees the three other charges",
            VoltageConvention::OtherDumbbellOnly => "both ends see only the other dumbbell",
            VoltageConvention::PartnerOnly => "each end sees only its partner on the rod",
            VoltageConvention::MidpointNearestCharge => {
                "both ends see only the other dumbbell's charge nearest the midpoint"
            }
        }
    }

    // (sources at the outer end, sources at the inner end)
    fn sources(&self) -> (Vec<usize>, Vec<usize>) {
        use DumbbellPair as D;
        match self {
            VoltageConvention::AllOtherCharges => (
                vec![D::LEFT_INNER, D::RIGHT_INNER, D::RIGHT_OUTER],
                vec![D::LEFT_OUTER, D::RIGHT_INNER, D::RIGHT_OUTER],
            ),
            VoltageConvention::OtherDumbbellOnly => (
                vec![D::RIGHT_INNER, D::RIGHT_OUTER],
                vec![D::RIGHT_INNER, D::RIGHT_OUTER],
            ),
            VoltageConvention::PartnerOnly => (vec![D::LEFT_INNER], vec![D::LEFT_OUTER]),
            VoltageConvention::MidpointNearestCharge => {
                (vec![D::RIGHT_INNER], vec![D::RIGHT_INNER])
            }
        }
    }
}

impl fmt::Display for VoltageConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DumbbellVoltage {
    pub convention: VoltageConvention,
    /// V(outer end) − V(inner end) of the left dumbbell, in units of kQ/L.
    pub value: BigRational,
}

pub fn dumbbell_voltage(pair: &DumbbellPair, convention: VoltageConvention) -> DumbbellVoltage {
    let c = pair.config();
    let (outer_src, inner_src) = convention.sources();
    let outer = &c.charges()[DumbbellPair::LEFT_OUTER].position;
    let inner = &c.charges()[DumbbellPair::LEFT_INNER].position;
    let v_outer = c.potential_at(outer, &outer_src).expect("sources exclude the end itself");
    let v_inner = c.potential_at(inner, &inner_src).expect("sources exclude the end itself");
    DumbbellVoltage { convention, value: v_outer - v_inner }
}

fn non_negative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be non-negative and finite, got {v}")))
    }
}

/// M g′ with M = ρL³ and g′ = gL/R_E (N).
pub fn tidal_force_on_cube(density: f64, edge: f64) -> Result<f64> {
    let c = constants();
    tidal_force_with_accel(density, edge, c.surface_gravity * edge / c.earth_radius)
}

/// ρL³ times an arbitrary horizontal differential acceleration (N).
pub fn tidal_force_with_accel(density: f64, edge: f64, accel: f64) -> Result<f64> {
    non_negative("density", density)?;
    non_negative("edge", edge)?;
    Ok(density * edge.powi(3) * accel)
}

/// V_F-F = √(ρ g L⁴ / (4πε₀ R_E)) (V).
pub fn freefall_voltage_scale(density: f64, edge: f64) -> Result<f64> {
    let c = constants();
    non_negative("density", density)?;
    non_negative("edge", edge)?;
    Ok((density * c.surface_gravity * edge.powi(4) * c.coulomb_constant() / c.earth_radius).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumResult {
    /// Q (C).
    pub charge: f64,
    /// |V| (V).
    pub voltage: f64,
    /// Sign of β·Q.
    pub voltage_sign: f64,
    /// α kQ²/L² recomputed from Q (N).
    pub coulomb_force: f64,
    /// M g′ (N).
    pub tidal_force: f64,
    /// |F_coulomb − F_tidal| / F_tidal, zero when there is no tidal force.
    pub residual: f64,
    /// Q found by bisection on the force balance, as a cross-check (C).
    pub charge_root: f64,
}

/// Balances the Coulomb repulsion α kQ²/L² against the tidal force at the
/// Earth's surface and reports the charge and end-to-end voltage.
pub fn equilibrium_solve(
    density: f64,
    edge: f64,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<EquilibriumResult> {
    let c = constants();
    equilibrium_solve_with_accel(density, edge, c.surface_gravity * edge / c.earth_radius, alpha, beta)
}

/// [`equilibrium_solve`] with the horizontal differential acceleration supplied.
pub fn equilibrium_solve_with_accel(
    density: f64,
    edge: f64,
    accel: f64,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<EquilibriumResult> {
    if !alpha.is_positive() {
        return Err(domain(format!("alpha must be positive, got {alpha}")));
    }
    if beta.is_zero() {
        return Err(domain("beta must be non-zero"));
    }
    if !(edge > 0.0) {
        return Err(domain("edge must be positive"));
    }
    non_negative("acceleration", accel)?;
    let k = constants().coulomb_constant();
    let alpha_f = to_f64(alpha);
    let beta_f = to_f64(beta);

    let tidal = tidal_force_with_accel(density, edge, accel)?;
    let per_q2 = alpha_f * k / (edge * edge);
    let charge = (tidal / per_q2).sqrt();
    let coulomb = per_q2 * charge * charge;
    let residual = if tidal > 0.0 { (coulomb - tidal).abs() / tidal } else { 0.0 };
    let voltage = beta_f * k * charge / edge;

    Ok(EquilibriumResult {
        charge,
        voltage: voltage.abs(),
        voltage_sign: if voltage < 0.0 { -1.0 } else { 1.0 },
        coulomb_force: coulomb,
        tidal_force: tidal,
        residual,
        charge_root: bisect_charge(per_q2, tidal),
    })
}

fn bisect_charge(per_q2: f64, tidal: f64) -> f64 {
    if tidal <= 0.0 {
        return 0.0;
    }
    let f = |q: f64| per_q2 * q * q - tidal;
    let mut lo = 0.0;
    let mut hi = 1e-30;
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
