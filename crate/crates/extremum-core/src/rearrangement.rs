//! Decreasing rearrangements, the associated sorting permutation, discrete
//! equimeasurability, and the nested prefix level-set family.
//!
//! On the grid, the decreasing rearrangement of a modulus is its descending
//! sort and the measure-preserving map ω is the deterministic (stable) sort
//! permutation: μ*[i] = μ[ω[i]], ties broken towards the smaller original
//! index. Level sets at grid times are ω-prefixes.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, RealRole, RealSamples};

/// Decreasing rearrangement μ* together with the sort permutation ω (from
/// rearranged position to original index) and its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangementResult {
    grid: GridSpec,
    mu_star: Vec<f64>,
    omega: Vec<usize>,
    omega_inv: Vec<usize>,
    prefix: Vec<f64>,
}

impl RearrangementResult {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Values sorted descending: μ*[i] = μ[ω[i]].
    pub fn mu_star(&self) -> &[f64] {
        &self.mu_star
    }

    /// Permutation from rearranged position to original sample index.
    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    /// Inverse permutation: omega_inv[omega[i]] = i.
    pub fn omega_inv(&self) -> &[usize] {
        &self.omega_inv
    }

    /// Level set E_{t_k} as the index set {ω[0], …, ω[k−1]}.
    pub fn level_set(&self, k: usize) -> &[usize] {
        &self.omega[..k]
    }

    /// Prefix integral Σ_{i<k} μ*[i] · (2π/N), the mass of E_{t_k}.
    pub fn prefix_integral(&self, k: usize) -> f64 {
        self.prefix[k]
    }

    /// Pulls a sampled function back through ω: result[i] = x[ω[i]].
    pub fn pull_back(&self, x: &[f64]) -> Vec<f64> {
        self.omega.iter().map(|&j| x[j]).collect()
    }
}

/// Sorts a modulus into decreasing order and records the permutation.
pub fn decreasing_rearrangement(x: &RealSamples) -> Result<RearrangementResult> {
    if x.role() != RealRole::Modulus {
        return Err(Error::precondition(
            "decreasing rearrangement expects a modulus-role function",
        ));
    }
    let n = x.grid().n();
    let values = x.values();
    let mut omega: Vec<usize> = (0..n).collect();
    omega.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    let mu_star: Vec<f64> = omega.iter().map(|&i| values[i]).collect();
    let mut omega_inv = vec![0usize; n];
    for (pos, &orig) in omega.iter().enumerate() {
        omega_inv[orig] = pos;
    }
    let cell = TAU / n as f64;
    let mut prefix = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    prefix.push(0.0);
    for v in &mu_star {
        acc += v * cell;
        prefix.push(acc);
    }
    Ok(RearrangementResult {
        grid: x.grid(),
        mu_star,
        omega,
        omega_inv,
        prefix,
    })
}

/// True iff the two moduli have pointwise-equal descending sorts within tol.
pub fn check_equimeasurable(x: &RealSamples, y: &RealSamples, tol: f64) -> Result<bool> {
    if x.grid() != y.grid() {
        return Err(Error::precondition(
            "equimeasurability test requires a common grid",
        ));
    }
    let rx = decreasing_rearrangement(x)?;
    let ry = decreasing_rearrangement(y)?;
    Ok(rx
        .mu_star()
        .iter()
        .zip(ry.mu_star())
        .all(|(a, b)| (a - b).abs() <= tol))
}

/// Flags produced by [`verify_reduction4`].
///
/// `flag_iii`: both η± = g*·(1 ± h∘ω) are nonincreasing within tol.
/// `flag_ii`: the independently computed rearrangements (g(1±h))* equal
/// g*·(1 ± h∘ω) pointwise within tol.
/// `equivalent`: the two flags agree — the testable content of the
/// rearrangement reduction equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reduction4Report {
    pub flag_ii: bool,
    pub flag_iii: bool,
    pub equivalent: bool,
}

fn nonincreasing_within(seq: &[f64], tol: f64) -> bool {
    seq.windows(2).all(|w| w[1] <= w[0] + tol)
}

/// Checks the perturbed-rearrangement reduction on a strictly positive g:
/// compares the pulled-back products g*·(1±h∘ω) against the directly
/// rearranged (g(1±h))* and reports the monotonicity/equality flags.
pub fn verify_reduction4(
    g: &RealSamples,
    h: &RealSamples,
    r: &RearrangementResult,
    tol: f64,
) -> Result<Reduction4Report> {
    if g.role() != RealRole::Modulus {
        return Err(Error::precondition("g must be a modulus-role function"));
    }
    if h.role() != RealRole::RealSigned {
        return Err(Error::precondition("h must be a real-signed function"));
    }
    if g.grid() != h.grid() || g.grid() != r.grid() {
        return Err(Error::precondition("g, h and r must share one grid"));
    }
    if g.values().iter().any(|v| *v <= 0.0) {
        return Err(Error::precondition(
            "g must be strictly positive (zero values rejected)",
        ));
    }
    for (pos, &orig) in r.omega().iter().enumerate() {
        if r.mu_star()[pos] != g.values()[orig] {
            return Err(Error::precondition(
                "rearrangement result does not match g",
            ));
        }
    }

    let h_omega = r.pull_back(h.values());
    let n = g.grid().n();
    let mut flag_iii = true;
    let mut flag_ii = true;
    for sign in [1.0, -1.0] {
        let eta: Vec<f64> = (0..n)
            .map(|i| r.mu_star()[i] * (1.0 + sign * h_omega[i]))
            .collect();
        if !nonincreasing_within(&eta, tol) {
            flag_iii = false;
        }
        // Independent rearrangement of g(1 ± h) in original indexing.
        let perturbed: Vec<f64> = (0..n)
            .map(|j| g.values()[j] * (1.0 + sign * h.values()[j]))
            .collect();
        let mut sorted = perturbed;
        sorted.sort_by(|a, b| b.total_cmp(a));
        if !eta
            .iter()
            .zip(&sorted)
            .all(|(a, b)| (a - b).abs() <= tol)
        {
            flag_ii = false;
        }
    }
    Ok(Reduction4Report {
        flag_ii,
        flag_iii,
        equivalent: flag_ii == flag_iii,
    })
}
