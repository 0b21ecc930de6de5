//! Analysis configuration shared by the scans, the witness search, and the
//! decision procedure.

use crate::error::{Error, Result};

/// Tunable parameters for the full analysis pipeline.
///
/// The defaults are the reference configuration: every documented fixture
/// classification and witness example holds under them.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    /// Grid resolution (power of two, at least 16).
    pub n_samples: usize,
    /// Power gauge exponent p > 1; the gauge is φ(t) = (t/2π)^(1/p).
    pub gauge_p: f64,
    /// Smallness threshold for the windowed liminf ratios.
    pub eps_crit: f64,
    /// Decay factor required across the last three window levels.
    pub rho: f64,
    /// Angular tolerance (radians) for mod-π collinearity of flat points.
    pub tol_ang: f64,
    /// Number of θ candidates on the uniform [0,2π) grid.
    pub theta_steps: usize,
    /// Number of γ rows on the uniform [0,π) grid.
    pub gamma_steps: usize,
    /// Initial perturbation amplitude β₀ for the witness search.
    pub beta0: f64,
    /// Maximum number of times β is halved per θ candidate.
    pub max_halvings: u32,
    /// Acceptance tolerance for the witness norms |‖f±g‖ − 1|.
    pub norm_tol: f64,
    /// Acceptance tolerance for the negative-index Fourier residual of g̃.
    pub fourier_tol: f64,
    /// Minimum admissible modulus value for the outer construction.
    pub modulus_floor: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            n_samples: 4096,
            gauge_p: 2.0,
            eps_crit: 1e-3,
            rho: 0.5,
            tol_ang: 1e-2,
            theta_steps: 256,
            gamma_steps: 128,
            beta0: 0.5,
            max_halvings: 20,
            norm_tol: 1e-4,
            fourier_tol: 1e-6,
            modulus_floor: 1e-6,
        }
    }
}

impl AnalysisConfig {
    /// Coarsest dyadic window level used by the critical-set scans.
    pub fn k_min(&self) -> u32 {
        3
    }

    /// Finest dyadic window level for an `n`-point grid: half-width 4 cells.
    pub fn k_max_for(n: usize) -> u32 {
        (n.trailing_zeros()).saturating_sub(2)
    }

    /// Validates positivity and range constraints on every field.
    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 16 || !self.n_samples.is_power_of_two() {
            return Err(Error::precondition(format!(
                "n_samples must be a power of two >= 16, got {}",
                self.n_samples
            )));
        }
        if self.gauge_p <= 1.0 || !self.gauge_p.is_finite() {
            return Err(Error::precondition(format!(
                "gauge_p must be a finite real > 1, got {}",
                self.gauge_p
            )));
        }
        let positives = [
            ("eps_crit", self.eps_crit),
            ("rho", self.rho),
            ("tol_ang", self.tol_ang),
            ("beta0", self.beta0),
            ("norm_tol", self.norm_tol),
            ("fourier_tol", self.fourier_tol),
            ("modulus_floor", self.modulus_floor),
        ];
        for (name, v) in positives {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::precondition(format!(
                    "{name} must be a finite positive real, got {v}"
                )));
            }
        }
        if self.theta_steps == 0 || self.gamma_steps == 0 {
            return Err(Error::precondition(
                "theta_steps and gamma_steps must be positive",
            ));
        }
        if self.beta0 > 1.0 {
            return Err(Error::precondition(format!(
                "beta0 must not exceed 1 (|alpha| + |beta| <= 1 must be reachable), got {}",
                self.beta0
            )));
        }
        Ok(())
    }
}
