//! The cosine perturbation family h = α + β·cos(ξ − θ), its analytic
//! companion g̃ = (αĨ + wĨ² + w̄)·F̃, membership and balance conditions, and
//! the witness search certifying non-extremality.
//!
//! The search slaves α to (θ, β) through the balance integral, so the
//! perturbed norms ‖f ± g‖ equal 1 by construction whenever the monotone
//! reduction applies; β is halved geometrically until the grid monotonicity
//! and the verification tolerances are met. θ candidates are admitted only
//! when the γ-scan row at γ = θ mod π stays bounded below — the discrete
//! form of the equivalence between bounded critical ratios and the existence
//! of a monotone perturbation family at that angle.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::boundary::{check_analytic, trace_product, BoundaryTrace};
use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::extremality::gamma_scan;
use crate::grid::{ComplexSamples, Gauge, GridSpec, RealRole, RealSamples};
use crate::norms::{lorentz_norm, lorentz_norm_sorted};
use crate::rearrangement::decreasing_rearrangement;

/// Default spectral depth for negative-index residual checks.
pub const RESIDUAL_K_MAX: usize = 8;

/// Threshold below which a companion function counts as null.
pub const NON_NULL_FLOOR: f64 = 1e-8;

/// Per-step slack for the grid monotonicity checks.
pub const MONOTONE_SLACK: f64 = 1e-12;

/// Perturbation parameters (α, β, θ) with β ≠ 0 and |α| + |β| ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationParams {
    alpha: f64,
    beta: f64,
    theta: f64,
}

impl PerturbationParams {
    pub fn new(alpha: f64, beta: f64, theta: f64) -> Result<Self> {
        if beta == 0.0 || !beta.is_finite() || !alpha.is_finite() || !theta.is_finite() {
            return Err(Error::precondition(
                "perturbation requires finite parameters with beta != 0",
            ));
        }
        if alpha.abs() + beta.abs() > 1.0 + 1e-12 {
            return Err(Error::precondition(format!(
                "perturbation requires |alpha| + |beta| <= 1, got {}",
                alpha.abs() + beta.abs()
            )));
        }
        Ok(PerturbationParams {
            alpha,
            beta,
            theta: theta.rem_euclid(std::f64::consts::TAU),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// θ normalized into [0, 2π).
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Derived coefficient w = (β/2)·e^{−iθ}, so h = α + 2Re(w·e^{iξ}).
    pub fn w(&self) -> Complex64 {
        Complex64::from_polar(self.beta / 2.0, -self.theta)
    }
}

/// Samples h[i] = α + β·cos(ξ[i] − θ) as a real-signed function.
pub fn perturbation_h(p: &PerturbationParams, xi: &[f64], grid: GridSpec) -> RealSamples {
    let values: Vec<f64> = xi
        .iter()
        .map(|&x| p.alpha + p.beta * (x - p.theta).cos())
        .collect();
    RealSamples::real_signed(grid, values).expect("|alpha| + |beta| <= 1 bounds h")
}

/// Companion analytic function g̃ = (α·Ĩ + w·Ĩ² + w̄)·F̃; satisfies
/// g̃ = h·Ĩ·F̃ = h·f̃ identically.
pub fn companion_g(
    p: &PerturbationParams,
    inner: &BoundaryTrace,
    outer: &BoundaryTrace,
) -> Result<ComplexSamples> {
    if !inner.unimodular() {
        return Err(Error::precondition(
            "companion construction requires a unimodular inner trace",
        ));
    }
    if inner.grid() != outer.grid() {
        return Err(Error::precondition("companion requires a common grid"));
    }
    let w = p.w();
    let wc = w.conj();
    let values: Vec<Complex64> = inner
        .values()
        .values()
        .iter()
        .zip(outer.values().values())
        .map(|(&iv, &fv)| (p.alpha * iv + w * iv * iv + wc) * fv)
        .collect();
    ComplexSamples::new(inner.grid(), values)
}

/// Membership test for the multiplier class of f: h is admissible iff f̃·h
/// has vanishing negative-index Fourier coefficients (within tol) and h is
/// nonconstant (range width above tol).
pub fn check_lf_membership(
    f_trace: &ComplexSamples,
    h: &RealSamples,
    tol: f64,
    k_max: usize,
) -> Result<bool> {
    if f_trace.grid() != h.grid() {
        return Err(Error::precondition("membership test requires a common grid"));
    }
    if h.role() != RealRole::RealSigned {
        return Err(Error::precondition("h must be a real-signed function"));
    }
    let product: Vec<Complex64> = f_trace
        .values()
        .iter()
        .zip(h.values())
        .map(|(&fv, &hv)| fv * hv)
        .collect();
    let product = ComplexSamples::new(f_trace.grid(), product)?;
    let check = check_analytic(&product, tol, k_max)?;
    let hi = h.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = h.values().iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(check.analytic && (hi - lo) > tol)
}

/// Balance integral B(θ) = Σ_i μ*_i · cos(ξ_ω[i] − θ) · Δφ_i; satisfies
/// |B(θ)| ≤ ‖μ‖ and B(θ+π) = −B(θ).
pub fn balance_integral(mu_star: &[f64], xi_omega: &[f64], theta: f64, gauge: &Gauge) -> f64 {
    mu_star
        .iter()
        .zip(xi_omega)
        .zip(gauge.increments())
        .map(|((&m, &x), &d)| m * (x - theta).cos() * d)
        .sum()
}

/// True iff both perturbed rearranged sequences μ*_i(1 ± h_ω[i]) are
/// nonincreasing within the slack per step.
pub fn monotone_check(mu_star: &[f64], h_omega: &[f64], slack: f64) -> bool {
    for sign in [1.0, -1.0] {
        let mut prev = f64::INFINITY;
        for (m, h) in mu_star.iter().zip(h_omega) {
            let eta = m * (1.0 + sign * h);
            if eta > prev + slack {
                return false;
            }
            prev = eta;
        }
    }
    true
}

/// Verification numbers for a candidate companion function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessVerdict {
    pub norm_plus: f64,
    pub norm_minus: f64,
    pub neg_fourier_residual: f64,
    pub max_abs_g: f64,
    pub accepted: bool,
}

/// Independently verifies a companion g̃ against f̃: both perturbed norms
/// within norm_tol of 1 (neither exceeding 1 + norm_tol), negative-index
/// residual below fourier_tol, and g̃ non-null.
pub fn verify_witness(
    f_trace: &ComplexSamples,
    g_trace: &ComplexSamples,
    gauge: &Gauge,
    norm_tol: f64,
    fourier_tol: f64,
) -> Result<WitnessVerdict> {
    if f_trace.grid() != g_trace.grid() || f_trace.grid() != gauge.grid() {
        return Err(Error::precondition("verification requires a common grid"));
    }
    let n = f_trace.grid().n();
    let mut norms = [0.0; 2];
    for (slot, sign) in [(0usize, 1.0), (1usize, -1.0)] {
        let mut perturbed: Vec<f64> = (0..n)
            .map(|i| (f_trace.values()[i] + sign * g_trace.values()[i]).norm())
            .collect();
        perturbed.sort_by(|a, b| b.total_cmp(a));
        norms[slot] = lorentz_norm_sorted(&perturbed, gauge);
    }
    let check = check_analytic(g_trace, fourier_tol, RESIDUAL_K_MAX)?;
    let max_abs_g = g_trace
        .values()
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let in_ball = norms[0] <= 1.0 + norm_tol && norms[1] <= 1.0 + norm_tol;
    let attained = norms[0].max(norms[1]) >= 1.0 - norm_tol;
    let accepted = in_ball && attained && check.analytic && max_abs_g > NON_NULL_FLOOR;
    Ok(WitnessVerdict {
        norm_plus: norms[0],
        norm_minus: norms[1],
        neg_fourier_residual: check.max_neg_residual,
        max_abs_g,
        accepted,
    })
}

/// Accepted non-extremality certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub params: PerturbationParams,
    pub theta_index: usize,
    pub halvings: u32,
    pub g_trace: ComplexSamples,
    pub norm_plus: f64,
    pub norm_minus: f64,
    pub neg_fourier_residual: f64,
    pub max_abs_g: f64,
}

/// Outcome of one θ candidate in the scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaOutcome {
    /// Accepted at the recorded number of halvings.
    Found { halvings: u32 },
    /// The γ-scan row at θ mod π attains zero: no monotone family exists at
    /// this angle, so the candidate is skipped.
    GammaRowAttainsZero,
    /// All β levels were tried without passing monotonicity + verification.
    Exhausted,
}

/// Per-θ record of the scan (the failure profile of a "none" result).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaProbe {
    pub theta_index: usize,
    pub theta: f64,
    pub outcome: ThetaOutcome,
}

/// Deterministic counters describing a finished search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchStats {
    pub theta_steps: usize,
    pub theta_admitted: usize,
    pub theta_gated: usize,
    pub candidates_evaluated: usize,
}

/// Full result of [`witness_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub witness: Option<Witness>,
    pub theta_profile: Vec<ThetaProbe>,
    pub stats: SearchStats,
}

/// Scans the (θ, β) family for a verified witness.
///
/// For each admitted θ on the uniform grid, β runs down β₀·2^{−j} with α
/// slaved to −β·B(θ); the first candidate passing the parameter bound, the
/// grid monotonicity of μ*(1 ± h∘ω), and [`verify_witness`] is accepted.
/// Every θ candidate is evaluated (in parallel) and the smallest admitted θ
/// index wins, so the result is independent of scheduling. Returns the full
/// per-θ profile and deterministic counters alongside the optional witness.
pub fn witness_search(
    mu: &RealSamples,
    inner: &BoundaryTrace,
    outer: &BoundaryTrace,
    gauge: &Gauge,
    config: &AnalysisConfig,
) -> Result<SearchOutcome> {
    config.validate()?;
    if !gauge.is_strict() {
        return Err(Error::precondition(
            "witness search requires a strictly increasing, strictly concave gauge",
        ));
    }
    let norm = lorentz_norm(mu, gauge)?;
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::precondition(format!(
            "witness search requires a normalized modulus, got norm {norm}"
        )));
    }
    if mu.grid() != inner.grid() || mu.grid() != outer.grid() || mu.grid() != gauge.grid() {
        return Err(Error::precondition("witness search requires a common grid"));
    }

    let r = decreasing_rearrangement(mu)?;
    let xi = inner.arg_branch();
    let xi_omega = r.pull_back(xi);
    let f_trace = trace_product(&[inner, outer])?.values().clone();

    // The branch of ξ is free up to an additive constant; h and B(θ) use the
    // supplied branch, while the companion's w = (β/2)e^{−iθ} multiplies the
    // raw trace values. Reporting θ relative to the value phases keeps
    // g̃ = h·f̃ exact for any branch choice (the lag is 0 for traces built
    // here, so this only matters for externally shifted branches).
    let branch_lag = xi[0] - inner.values().values()[0].arg();

    // Admission gate: γ rows that attain zero admit no monotone family.
    let gamma = gamma_scan(r.mu_star(), &xi_omega, config)?;
    let gamma_step = std::f64::consts::PI / config.gamma_steps as f64;

    let theta_grid: Vec<f64> = (0..config.theta_steps)
        .map(|k| std::f64::consts::TAU * k as f64 / config.theta_steps as f64)
        .collect();

    struct Candidate {
        probe: ThetaProbe,
        witness: Option<Witness>,
        evaluated: usize,
    }

    let evaluate = |k: usize| -> Result<Candidate> {
        let theta = theta_grid[k];
        let row_idx =
            ((theta.rem_euclid(std::f64::consts::PI) / gamma_step).round() as usize)
                % config.gamma_steps;
        if gamma.rows[row_idx].attains_zero {
            return Ok(Candidate {
                probe: ThetaProbe {
                    theta_index: k,
                    theta,
                    outcome: ThetaOutcome::GammaRowAttainsZero,
                },
                witness: None,
                evaluated: 0,
            });
        }
        let b = balance_integral(r.mu_star(), &xi_omega, theta, gauge);
        let mut evaluated = 0usize;
        for j in 0..=config.max_halvings {
            let beta = config.beta0 * 0.5_f64.powi(j as i32);
            let alpha = -beta * b;
            if alpha.abs() + beta.abs() > 1.0 {
                continue;
            }
            evaluated += 1;
            let scan_params = PerturbationParams::new(alpha, beta, theta)?;
            let h = perturbation_h(&scan_params, xi, mu.grid());
            let h_omega = r.pull_back(h.values());
            if !monotone_check(r.mu_star(), &h_omega, MONOTONE_SLACK) {
                continue;
            }
            let params = PerturbationParams::new(alpha, beta, theta - branch_lag)?;
            let g = companion_g(&params, inner, outer)?;
            let verdict = verify_witness(&f_trace, &g, gauge, config.norm_tol, config.fourier_tol)?;
            if verdict.accepted {
                return Ok(Candidate {
                    probe: ThetaProbe {
                        theta_index: k,
                        theta,
                        outcome: ThetaOutcome::Found { halvings: j },
                    },
                    witness: Some(Witness {
                        params,
                        theta_index: k,
                        halvings: j,
                        g_trace: g,
                        norm_plus: verdict.norm_plus,
                        norm_minus: verdict.norm_minus,
                        neg_fourier_residual: verdict.neg_fourier_residual,
                        max_abs_g: verdict.max_abs_g,
                    }),
                    evaluated,
                });
            }
        }
        Ok(Candidate {
            probe: ThetaProbe {
                theta_index: k,
                theta,
                outcome: ThetaOutcome::Exhausted,
            },
            witness: None,
            evaluated,
        })
    };

    let candidates: Vec<Candidate> = (0..config.theta_steps)
        .into_par_iter()
        .map(evaluate)
        .collect::<Result<Vec<_>>>()?;

    let mut witness = None;
    let mut theta_profile = Vec::with_capacity(candidates.len());
    let mut admitted = 0usize;
    let mut gated = 0usize;
    let mut evaluated = 0usize;
    for c in candidates {
        if c.probe.outcome == ThetaOutcome::GammaRowAttainsZero {
            gated += 1;
        } else {
            admitted += 1;
        }
        evaluated += c.evaluated;
        if witness.is_none() {
            if let Some(w) = c.witness {
                witness = Some(w);
            }
        }
        theta_profile.push(c.probe);
    }

    Ok(SearchOutcome {
        witness,
        theta_profile,
        stats: SearchStats {
            theta_steps: config.theta_steps,
            theta_admitted: admitted,
            theta_gated: gated,
            candidates_evaluated: evaluated,
        },
    })
}
