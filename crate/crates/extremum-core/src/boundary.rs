//! Boundary traces of analytic building blocks: Blaschke factors with a
//! continuous argument branch, outer functions reconstructed from a
//! prescribed modulus, Fourier coefficients, and analyticity checks.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{ComplexSamples, GridSpec, RealRole, RealSamples};

/// Disk point a with |a| < 1 parameterizing the elementary inner factor
/// I_a(z) = z for a = 0 and (|a|/a)·(a−z)/(1−āz) otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlaschkePoint {
    a: Complex64,
}

impl BlaschkePoint {
    /// Numerical margin kept from the unit circle.
    pub const MAX_MODULUS: f64 = 1.0 - 1e-9;

    pub fn new(a: Complex64) -> Result<Self> {
        if !a.re.is_finite() || !a.im.is_finite() || a.norm() > Self::MAX_MODULUS {
            return Err(Error::precondition(format!(
                "Blaschke point must satisfy |a| <= 1 - 1e-9, got |a| = {}",
                a.norm()
            )));
        }
        Ok(BlaschkePoint { a })
    }

    pub fn origin() -> Self {
        BlaschkePoint {
            a: Complex64::new(0.0, 0.0),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }
}

/// Complex boundary samples together with a continuous (unwrapped) argument
/// branch ξ; `unimodular` marks traces with |value| ≡ 1 (inner factors).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrace {
    values: ComplexSamples,
    arg_branch: Vec<f64>,
    unimodular: bool,
}

impl BoundaryTrace {
    /// Wraps raw complex samples, unwrapping their argument into a branch and
    /// detecting unimodularity.
    pub fn from_values(values: ComplexSamples) -> Self {
        let arg_branch = unwrap_argument(values.values());
        let unimodular = values.values().iter().all(|v| (v.norm() - 1.0).abs() <= 1e-9);
        BoundaryTrace {
            values,
            arg_branch,
            unimodular,
        }
    }

    pub fn values(&self) -> &ComplexSamples {
        &self.values
    }

    pub fn grid(&self) -> GridSpec {
        self.values.grid()
    }

    /// Continuous argument branch ξ with ξ(0) ∈ (−π, π].
    pub fn arg_branch(&self) -> &[f64] {
        &self.arg_branch
    }

    pub fn unimodular(&self) -> bool {
        self.unimodular
    }

    /// Winding ξ(2π) − ξ(0) of the closed boundary curve, computed by
    /// extending the unwrapped branch across the period seam.
    pub fn branch_winding(&self) -> f64 {
        let v = self.values.values();
        let n = v.len();
        let closing = (v[0] * v[n - 1].conj()).arg();
        self.arg_branch[n - 1] + closing - self.arg_branch[0]
    }
}

/// Accumulates principal-value argument increments left to right; the branch
/// constant is fixed by ξ(0) = Arg(v_0) ∈ (−π, π].
pub fn unwrap_argument(values: &[Complex64]) -> Vec<f64> {
    let mut xi = Vec::with_capacity(values.len());
    let mut current = values[0].arg();
    xi.push(current);
    for w in values.windows(2) {
        current += (w[1] * w[0].conj()).arg();
        xi.push(current);
    }
    xi
}

/// Samples the elementary inner factor I_a on the grid and unwraps its
/// argument into a continuous branch.
pub fn blaschke_boundary(a: &BlaschkePoint, grid: GridSpec) -> BoundaryTrace {
    let av = a.a();
    let values: Vec<Complex64> = (0..grid.n())
        .map(|i| {
            let z = Complex64::from_polar(1.0, grid.point(i));
            if av.norm() == 0.0 {
                z
            } else {
                (av.norm() / av) * (av - z) / (Complex64::new(1.0, 0.0) - av.conj() * z)
            }
        })
        .collect();
    let arg_branch = unwrap_argument(&values);
    BoundaryTrace {
        values: ComplexSamples::new(grid, values).expect("finite Blaschke samples"),
        arg_branch,
        unimodular: true,
    }
}

/// Two-sided Lipschitz constants for the half-gap sine of a Blaschke
/// argument: c·|u−v| ≤ |sin((ξ(u)−ξ(v))/2)| ≤ C·|u−v| for |u−v| ≤ π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipschitzConstants {
    /// Lower constant (1−|a|)/(π(1+|a|)).
    pub c_lower: f64,
    /// Upper constant (1+|a|)/(2(1−|a|)).
    pub c_upper: f64,
}

/// Derived two-sided bounds on the argument distortion of I_a.
pub fn lipschitz_constants(a: &BlaschkePoint) -> LipschitzConstants {
    let r = a.a().norm();
    LipschitzConstants {
        c_lower: (1.0 - r) / (PI * (1.0 + r)),
        c_upper: (1.0 + r) / (2.0 * (1.0 - r)),
    }
}

/// |sin((ξ(v) − ξ(u))/2)| from the stored continuous branch; equals half the
/// chord length |Ĩ(v) − Ĩ(u)| for unimodular traces.
pub fn sine_half_gap(u_idx: usize, v_idx: usize, tr: &BoundaryTrace) -> f64 {
    ((tr.arg_branch[v_idx] - tr.arg_branch[u_idx]) / 2.0).sin().abs()
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut planner = FftPlanner::new();
    if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    }
}

/// Conjugate function (boundary Hilbert transform) of a real sample vector,
/// computed spectrally: coefficient multiplier −i·sgn(k) with the constant
/// and Nyquist bins zeroed.
pub fn conjugate_function(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    plan(n, false).process(&mut buf);
    buf[0] = Complex64::new(0.0, 0.0);
    if n.is_multiple_of(2) {
        buf[n / 2] = Complex64::new(0.0, 0.0);
    }
    let neg_i = Complex64::new(0.0, -1.0);
    let pos_i = Complex64::new(0.0, 1.0);
    for k in 1..n.div_ceil(2) {
        buf[k] *= neg_i;
        buf[n - k] *= pos_i;
    }
    plan(n, true).process(&mut buf);
    buf.iter().map(|v| v.re / n as f64).collect()
}

/// Reconstructs the outer factor with prescribed boundary modulus:
/// F̃(t) = μ(t)·exp(i(𝒞[ln μ](t) + λ)), so |F̃| = μ holds to machine
/// precision and the phase is the conjugate function of ln μ.
pub fn outer_from_modulus(mu: &RealSamples, lambda: f64, floor: f64) -> Result<BoundaryTrace> {
    if mu.role() != RealRole::Modulus {
        return Err(Error::precondition("outer construction expects a modulus"));
    }
    let min = mu.values().iter().cloned().fold(f64::INFINITY, f64::min);
    if min < floor {
        return Err(Error::precondition(format!(
            "modulus minimum {min} is below the floor {floor}; too close to zero for a stable outer construction"
        )));
    }
    let ln_mu: Vec<f64> = mu.values().iter().map(|v| v.ln()).collect();
    let conj = conjugate_function(&ln_mu);
    let phase: Vec<f64> = conj.iter().map(|c| c + lambda).collect();
    let values: Vec<Complex64> = mu
        .values()
        .iter()
        .zip(&phase)
        .map(|(&m, &p)| Complex64::from_polar(m, p))
        .collect();
    Ok(BoundaryTrace {
        values: ComplexSamples::new(mu.grid(), values)?,
        arg_branch: phase,
        unimodular: false,
    })
}

/// Fourier coefficients c_k for k = −k_max..k_max, computed as the DFT of
/// the samples scaled by 1/N (exact for trigonometric polynomials of degree
/// below N/2).
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    k_max: usize,
    coeffs: Vec<Complex64>,
}

impl FourierCoefficients {
    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Coefficient c_k, |k| ≤ k_max.
    pub fn coeff(&self, k: isize) -> Complex64 {
        let idx = (k + self.k_max as isize) as usize;
        self.coeffs[idx]
    }

    /// Largest |c_{−k}| over k = 1..k_max.
    pub fn max_negative_residual(&self) -> f64 {
        (1..=self.k_max)
            .map(|k| self.coeff(-(k as isize)).norm())
            .fold(0.0, f64::max)
    }
}

/// DFT/N spectrum of a complex sample vector, windowed to |k| ≤ k_max.
pub fn fourier_coefficients(tr: &ComplexSamples, k_max: usize) -> Result<FourierCoefficients> {
    let n = tr.grid().n();
    if k_max > n / 2 - 1 {
        return Err(Error::precondition(format!(
            "k_max must be at most N/2 - 1 = {}, got {k_max}",
            n / 2 - 1
        )));
    }
    let mut buf = tr.values().to_vec();
    plan(n, false).process(&mut buf);
    let coeffs: Vec<Complex64> = (-(k_max as isize)..=k_max as isize)
        .map(|k| buf[k.rem_euclid(n as isize) as usize] / n as f64)
        .collect();
    Ok(FourierCoefficients { k_max, coeffs })
}

/// Result of the analyticity test on a boundary trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticCheck {
    pub analytic: bool,
    pub max_neg_residual: f64,
}

/// Checks that negative-index Fourier coefficients vanish within tol.
pub fn check_analytic(tr: &ComplexSamples, tol: f64, k_max: usize) -> Result<AnalyticCheck> {
    let coeffs = fourier_coefficients(tr, k_max)?;
    let max_neg_residual = coeffs.max_negative_residual();
    Ok(AnalyticCheck {
        analytic: max_neg_residual < tol,
        max_neg_residual,
    })
}

/// Pointwise product of boundary traces; argument branches add, and the
/// product is unimodular iff every factor is.
pub fn trace_product(ts: &[&BoundaryTrace]) -> Result<BoundaryTrace> {
    let first = ts
        .first()
        .ok_or_else(|| Error::precondition("trace product needs at least one factor"))?;
    let grid = first.grid();
    let n = grid.n();
    let mut values = vec![Complex64::new(1.0, 0.0); n];
    let mut arg_branch = vec![0.0; n];
    let mut unimodular = true;
    for t in ts {
        if t.grid() != grid {
            return Err(Error::precondition("trace product requires a common grid"));
        }
        for i in 0..n {
            values[i] *= t.values.values()[i];
            arg_branch[i] += t.arg_branch[i];
        }
        unimodular &= t.unimodular;
    }
    Ok(BoundaryTrace {
        values: ComplexSamples::new(grid, values)?,
        arg_branch,
        unimodular,
    })
}

/// Product trace of a finite list of Blaschke factors.
pub fn blaschke_product(points: &[BlaschkePoint], grid: GridSpec) -> Result<BoundaryTrace> {
    let traces: Vec<BoundaryTrace> = points
        .iter()
        .map(|p| blaschke_boundary(p, grid))
        .collect();
    let refs: Vec<&BoundaryTrace> = traces.iter().collect();
    trace_product(&refs)
}

/// Constant unimodular trace (multiplicative identity for trace products).
pub fn unit_trace(grid: GridSpec) -> BoundaryTrace {
    let values = vec![Complex64::new(1.0, 0.0); grid.n()];
    BoundaryTrace {
        values: ComplexSamples::new(grid, values).expect("finite"),
        arg_branch: vec![0.0; grid.n()],
        unimodular: true,
    }
}

/// Test hook: shifts the argument branch by a constant without touching the
/// sample values (every downstream quantity must be invariant under this).
pub fn with_branch_offset(tr: &BoundaryTrace, offset: f64) -> BoundaryTrace {
    BoundaryTrace {
        values: tr.values.clone(),
        arg_branch: tr.arg_branch.iter().map(|x| x + offset).collect(),
        unimodular: tr.unimodular,
    }
}

// Re-export for callers that keep only sample values.
pub use crate::grid::mod_pi_distance;

/// Angle helper: 2π.
pub const PERIOD: f64 = TAU;
