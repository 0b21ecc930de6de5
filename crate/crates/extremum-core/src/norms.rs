//! Lorentz and Marcinkiewicz norms and the rearrangement-additivity
//! equality-case test.
//!
//! The Lorentz norm is the increment-weighted sum Σ x*_i · Δφ_i — exact for
//! grid step functions, so the discrete norm IS the Lorentz norm of the step
//! interpolant. The Marcinkiewicz norm takes the sup of prefix averages
//! against φ.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::grid::{Gauge, RealSamples};
use crate::rearrangement::decreasing_rearrangement;

/// Lorentz norm of an already-decreasing sample sequence against the gauge
/// increments. The sequence length must match the gauge grid.
pub fn lorentz_norm_sorted(mu_star: &[f64], gauge: &Gauge) -> f64 {
    mu_star
        .iter()
        .zip(gauge.increments())
        .map(|(v, d)| v * d)
        .sum()
}

/// Lorentz norm ‖x‖ = Σ x*_i · (φ(t_{i+1}) − φ(t_i)).
pub fn lorentz_norm(x: &RealSamples, gauge: &Gauge) -> Result<f64> {
    if x.grid() != gauge.grid() {
        return Err(Error::precondition("norm requires a common grid"));
    }
    let r = decreasing_rearrangement(x)?;
    Ok(lorentz_norm_sorted(r.mu_star(), gauge))
}

/// Marcinkiewicz norm: max over grid prefixes k of (Σ_{i<k} x*_i · 2π/N) / φ(t_k).
pub fn marcinkiewicz_norm(x: &RealSamples, gauge: &Gauge) -> Result<f64> {
    if x.grid() != gauge.grid() {
        return Err(Error::precondition("norm requires a common grid"));
    }
    if !gauge.strictly_increasing() {
        return Err(Error::precondition(
            "Marcinkiewicz norm requires a strictly increasing gauge",
        ));
    }
    let r = decreasing_rearrangement(x)?;
    let n = x.grid().n();
    let cell = TAU / n as f64;
    let phi = gauge.phi_values();
    let mut best: f64 = 0.0;
    let mut prefix = 0.0;
    for (mu_k, &phi_k) in r.mu_star().iter().zip(&phi[1..=n]) {
        prefix += mu_k * cell;
        if phi_k > 0.0 {
            best = best.max(prefix / phi_k);
        }
    }
    Ok(best)
}

/// Tests the norm-additivity equality case: returns
/// (rearrangement-additivity, norm-additivity) — whether f* + g* = (f+g)*
/// pointwise within tol, and whether ‖f‖ + ‖g‖ = ‖f+g‖ within tol. For a
/// strictly increasing, strictly concave gauge the two flags agree.
pub fn check_norm_equality_case(
    f: &RealSamples,
    g: &RealSamples,
    gauge: &Gauge,
    tol: f64,
) -> Result<(bool, bool)> {
    if f.grid() != g.grid() || f.grid() != gauge.grid() {
        return Err(Error::precondition("equality case requires a common grid"));
    }
    if !gauge.is_strict() {
        return Err(Error::precondition(
            "equality case requires a strictly increasing, strictly concave gauge",
        ));
    }
    let sum_values: Vec<f64> = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(a, b)| a + b)
        .collect();
    let sum = RealSamples::modulus(f.grid(), sum_values)?;

    let rf = decreasing_rearrangement(f)?;
    let rg = decreasing_rearrangement(g)?;
    let rs = decreasing_rearrangement(&sum)?;

    let rearrangement_additivity = (0..f.grid().n())
        .all(|i| (rf.mu_star()[i] + rg.mu_star()[i] - rs.mu_star()[i]).abs() <= tol);

    let nf = lorentz_norm_sorted(rf.mu_star(), gauge);
    let ng = lorentz_norm_sorted(rg.mu_star(), gauge);
    let ns = lorentz_norm_sorted(rs.mu_star(), gauge);
    let norm_additivity = (nf + ng - ns).abs() <= tol;

    Ok((rearrangement_additivity, norm_additivity))
}
