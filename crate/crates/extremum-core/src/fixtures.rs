//! Canonical moduli with controlled flatness order at known locations.
//!
//! Each profile is monotone nonincreasing on [0, 2π) with an exact closed
//! form, so the decreasing rearrangement is (up to the constant case) the
//! identity permutation and the critical-set census is predictable: a flat
//! of quadratic order lands in the first-order critical set only, a cubic
//! flat also in the second-order set, and the exponential profile in
//! neither. Amplitudes keep every profile strictly positive on the period.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Gauge, RealSamples};
use crate::norms::lorentz_norm;

/// Primary flat location, chosen on the default θ grid (2π·41/256).
pub const FLAT_T0: f64 = TAU * 41.0 / 256.0;

/// Flat locations of the four-flat profile.
pub const QUAD_FLAT_4_ROOTS: [f64; 4] = [0.8, 2.2, 3.6, 5.0];

/// Flat location of the cubic profile.
pub const CUBIC_FLAT_T0: f64 = 2.0;

/// Identifier of a canonical fixture profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureId {
    /// μ ≡ const: the modulus of an inner function.
    Constant,
    /// μ(t) ∝ e^{−t}: strictly decreasing, no flat point.
    Exponential,
    /// One quadratic-order flat at `FLAT_T0`.
    QuadFlat1,
    /// Two quadratic-order flats at `FLAT_T0` and `FLAT_T0 + π`.
    QuadFlat2Collinear,
    /// Two quadratic-order flats at `FLAT_T0` and `FLAT_T0 + 1`.
    QuadFlat2Generic,
    /// Four quadratic-order flats at `QUAD_FLAT_4_ROOTS`.
    QuadFlat4,
    /// One cubic-order flat at `CUBIC_FLAT_T0`.
    CubicFlat1,
}

impl FixtureId {
    pub const ALL: [FixtureId; 7] = [
        FixtureId::Constant,
        FixtureId::Exponential,
        FixtureId::QuadFlat1,
        FixtureId::QuadFlat2Collinear,
        FixtureId::QuadFlat2Generic,
        FixtureId::QuadFlat4,
        FixtureId::CubicFlat1,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureId::Constant => "constant",
            FixtureId::Exponential => "exponential",
            FixtureId::QuadFlat1 => "quad-flat-1",
            FixtureId::QuadFlat2Collinear => "quad-flat-2-collinear",
            FixtureId::QuadFlat2Generic => "quad-flat-2-generic",
            FixtureId::QuadFlat4 => "quad-flat-4",
            FixtureId::CubicFlat1 => "cubic-flat-1",
        }
    }

    /// Locations of the flat points of the unnormalized profile, ascending.
    pub fn flat_points(&self) -> Vec<f64> {
        match self {
            FixtureId::Constant | FixtureId::Exponential => Vec::new(),
            FixtureId::QuadFlat1 => vec![FLAT_T0],
            FixtureId::QuadFlat2Collinear => vec![FLAT_T0, FLAT_T0 + PI],
            FixtureId::QuadFlat2Generic => vec![FLAT_T0, FLAT_T0 + 1.0],
            FixtureId::QuadFlat4 => QUAD_FLAT_4_ROOTS.to_vec(),
            FixtureId::CubicFlat1 => vec![CUBIC_FLAT_T0],
        }
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FixtureId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                Error::data(format!(
                    "unknown fixture id {s:?}; expected one of {}",
                    FixtureId::ALL.map(|id| id.as_str()).join(", ")
                ))
            })
    }
}

/// Antiderivative of (x − t1)(x − t2).
fn quad_primitive(x: f64, t1: f64, t2: f64) -> f64 {
    x * x * x / 3.0 - (t1 + t2) * x * x / 2.0 + t1 * t2 * x
}

/// ∫₀ˣ |(s − t1)(s − t2)| ds for 0 ≤ t1 < t2 (sign pattern + − +).
fn quad_abs_integral(x: f64, t1: f64, t2: f64) -> f64 {
    let p = |x| quad_primitive(x, t1, t2);
    if x <= t1 {
        p(x) - p(0.0)
    } else if x <= t2 {
        (p(t1) - p(0.0)) - (p(x) - p(t1))
    } else {
        (p(t1) - p(0.0)) - (p(t2) - p(t1)) + (p(x) - p(t2))
    }
}

/// Antiderivative of ∏ (x − r_j) over the four-flat roots.
fn quartic_primitive(x: f64) -> f64 {
    let [r1, r2, r3, r4] = QUAD_FLAT_4_ROOTS;
    let e1 = r1 + r2 + r3 + r4;
    let e2 = r1 * r2 + r1 * r3 + r1 * r4 + r2 * r3 + r2 * r4 + r3 * r4;
    let e3 = r1 * r2 * r3 + r1 * r2 * r4 + r1 * r3 * r4 + r2 * r3 * r4;
    let e4 = r1 * r2 * r3 * r4;
    ((((x / 5.0 - e1 / 4.0) * x + e2 / 3.0) * x - e3 / 2.0) * x + e4) * x
}

/// ∫₀ˣ |∏ (s − r_j)| ds, exact by alternating the primitive's sign over the
/// root intervals (pattern + − + − +).
fn quartic_abs_integral(x: f64) -> f64 {
    let mut bounds = vec![0.0];
    bounds.extend(QUAD_FLAT_4_ROOTS);
    let mut acc = 0.0;
    let mut sign = 1.0;
    for w in bounds.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if x <= hi {
            return acc + sign * (quartic_primitive(x) - quartic_primitive(lo));
        }
        acc += sign * (quartic_primitive(hi) - quartic_primitive(lo));
        sign = -sign;
    }
    acc + sign * (quartic_primitive(x) - quartic_primitive(*bounds.last().unwrap()))
}

/// Unnormalized profile value at t ∈ [0, 2π).
pub fn raw_profile(id: FixtureId, t: f64) -> f64 {
    match id {
        FixtureId::Constant => 1.0,
        FixtureId::Exponential => (-t).exp(),
        FixtureId::QuadFlat1 => 30.0 - (t - FLAT_T0) * (t - FLAT_T0).abs(),
        FixtureId::QuadFlat2Collinear => {
            25.0 - 0.25 * quad_abs_integral(t, FLAT_T0, FLAT_T0 + PI)
        }
        FixtureId::QuadFlat2Generic => {
            25.0 - 0.25 * quad_abs_integral(t, FLAT_T0, FLAT_T0 + 1.0)
        }
        FixtureId::QuadFlat4 => 25.0 - 0.03 * quartic_abs_integral(t),
        FixtureId::CubicFlat1 => {
            let d = t - CUBIC_FLAT_T0;
            30.0 - 0.6 * (d * d * d + CUBIC_FLAT_T0.powi(3)) / 3.0
        }
    }
}

/// Samples the profile on the gauge's grid and scales it to Lorentz norm 1.
pub fn build_fixture(id: FixtureId, gauge: &Gauge) -> Result<RealSamples> {
    let raw: Vec<f64> = gauge
        .grid()
        .points()
        .into_iter()
        .map(|t| raw_profile(id, t))
        .collect();
    debug_assert!(raw.iter().all(|v| *v > 0.0), "fixture profiles stay positive");
    let mut mu = RealSamples::modulus(gauge.grid(), raw)?;
    let norm = lorentz_norm(&mu, gauge)?;
    mu.scale(1.0 / norm)?;
    Ok(mu)
}
