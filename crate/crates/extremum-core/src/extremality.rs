//! Critical-set detection, mod-π collinearity classes, the γ-scan, and the
//! top-level extreme-point decision procedure.
//!
//! The continuum liminf conditions are discretized with dyadic windows:
//! at level k the half-width is N·2^{−k} samples, and a point is flagged
//! only when the finest windowed minimum is both small (below `eps_crit`)
//! and still decaying across the last three levels — a grid cannot decide a
//! liminf, but the decay test separates "tends to zero" from "small yet
//! bounded below" for polynomial flatness orders.

use rayon::prelude::*;

use crate::boundary::{
    blaschke_boundary, blaschke_product, outer_from_modulus, trace_product, BlaschkePoint,
    BoundaryTrace,
};
use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::grid::{mod_pi_distance, Gauge, RealSamples};
use crate::norms::lorentz_norm;
use crate::perturbation::{witness_search, SearchOutcome, Witness};
use crate::rearrangement::decreasing_rearrangement;

/// ξ¹(u,v) = |sin((ξ_ω(u) − ξ_ω(v))/2)| on rearranged indices.
pub fn xi1(u_idx: usize, v_idx: usize, xi_omega: &[f64]) -> f64 {
    ((xi_omega[u_idx] - xi_omega[v_idx]) / 2.0).sin().abs()
}

/// ξ²(u,v,γ) = |sin((ξ_ω(u) + ξ_ω(v))/2 − γ)| on rearranged indices.
pub fn xi2(u_idx: usize, v_idx: usize, gamma: f64, xi_omega: &[f64]) -> f64 {
    ((xi_omega[u_idx] + xi_omega[v_idx]) / 2.0 - gamma).sin().abs()
}

/// One clustered component of flagged grid indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Flagged member indices, ascending (a wrapped cluster lists both arcs).
    pub members: Vec<usize>,
    /// Member with the smallest finest-level ratio (ties: smallest index).
    pub representative: usize,
    /// Maximal runs of consecutive indices, as inclusive (lo, hi) intervals.
    pub intervals: Vec<(usize, usize)>,
}

/// Output of a critical-set scan: per-level windowed minima and the
/// clustered flagged components.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalScan {
    /// Window levels k (half-width N·2^{−k} samples), coarse to fine.
    pub levels: Vec<u32>,
    /// profiles[l][t] = m_{k_l}(t), the windowed minimum at level l.
    pub profiles: Vec<Vec<f64>>,
    /// Per-point flag: small at the finest level and decaying.
    pub flagged: Vec<bool>,
    /// Flagged points clustered within 2 grid steps (cyclically).
    pub components: Vec<Component>,
}

impl CriticalScan {
    /// Representatives of all components, in component order.
    pub fn representatives(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.representative).collect()
    }

    /// Number of clustered components (the grid realization of cardinality).
    pub fn cardinality(&self) -> usize {
        self.components.len()
    }
}

fn window_levels(n: usize, config: &AnalysisConfig) -> Result<Vec<u32>> {
    let k_min = config.k_min();
    let k_max = AnalysisConfig::k_max_for(n);
    if k_max < k_min {
        return Err(Error::precondition(format!(
            "grid with {n} samples is too coarse for the dyadic critical-set scan (needs at least 32)"
        )));
    }
    Ok((k_min..=k_max).collect())
}

/// Sampled pairs (u, v), u < v, straddling or flanking t at half-width w.
fn window_pairs(t: usize, w: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    let lo = t.checked_sub(w);
    let hi = if t + w < n { Some(t + w) } else { None };
    [
        lo.map(|u| (u, t)),
        hi.map(|v| (t, v)),
        lo.zip(hi),
    ]
    .into_iter()
    .flatten()
    .filter(|(u, v)| u < v)
}

fn scan_flags(
    profiles: &[Vec<f64>],
    eps_crit: f64,
    rho: f64,
) -> Vec<bool> {
    let finest = profiles.last().expect("at least one level");
    let base_idx = profiles.len().saturating_sub(4);
    let base = &profiles[base_idx];
    finest
        .iter()
        .zip(base)
        .map(|(&m_fine, &m_base)| m_fine < eps_crit && (m_fine == 0.0 || m_fine <= rho * m_base))
        .collect()
}

/// Clusters flagged indices within 2 grid steps, merging across the period
/// seam; the representative minimizes the finest-level profile.
fn cluster(flagged: &[bool], finest: &[f64]) -> Vec<Component> {
    let n = flagged.len();
    let idx: Vec<usize> = (0..n).filter(|&i| flagged[i]).collect();
    if idx.is_empty() {
        return Vec::new();
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &idx {
        match groups.last_mut() {
            Some(g) if i - *g.last().unwrap() <= 2 => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    // Endpoint wrap: indices 0 and N are identified.
    if groups.len() > 1 {
        let first_start = groups[0][0];
        let last_end = *groups.last().unwrap().last().unwrap();
        if n - last_end + first_start <= 2 {
            let first = groups.remove(0);
            groups.last_mut().unwrap().extend(first);
        }
    }
    groups
        .into_iter()
        .map(|mut members| {
            members.sort_unstable();
            let representative = members
                .iter()
                .copied()
                .min_by(|&a, &b| finest[a].total_cmp(&finest[b]).then(a.cmp(&b)))
                .unwrap();
            let mut intervals = Vec::new();
            let mut run_start = members[0];
            let mut prev = members[0];
            for &m in &members[1..] {
                if m != prev + 1 {
                    intervals.push((run_start, prev));
                    run_start = m;
                }
                prev = m;
            }
            intervals.push((run_start, prev));
            Component {
                members,
                representative,
                intervals,
            }
        })
        .collect()
}

fn check_scan_inputs(mu_star: &[f64], omega: &[usize]) -> Result<()> {
    if mu_star.len() != omega.len() {
        return Err(Error::precondition("mu_star and omega length mismatch"));
    }
    if mu_star.iter().any(|v| *v <= 0.0) {
        return Err(Error::precondition(
            "critical-set scan requires a strictly positive rearranged modulus",
        ));
    }
    if mu_star.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::precondition(
            "critical-set scan requires a nonincreasing rearranged modulus",
        ));
    }
    Ok(())
}

/// First-order critical-set scan: windowed minima of
/// (μ*(u) − μ*(v)) / (μ*(v) · |ω(v) − ω(u)| · 2π/N).
pub fn critical_set_e1(
    mu_star: &[f64],
    omega: &[usize],
    config: &AnalysisConfig,
) -> Result<CriticalScan> {
    critical_scan_impl(mu_star, omega, config, false)
}

/// Second-order critical-set scan: as E1 with the additional denominator
/// factor max(|ω(u) − ω(t)|, |ω(v) − ω(t)|) · 2π/N.
pub fn critical_set_e2(
    mu_star: &[f64],
    omega: &[usize],
    config: &AnalysisConfig,
) -> Result<CriticalScan> {
    critical_scan_impl(mu_star, omega, config, true)
}

fn critical_scan_impl(
    mu_star: &[f64],
    omega: &[usize],
    config: &AnalysisConfig,
    second_order: bool,
) -> Result<CriticalScan> {
    check_scan_inputs(mu_star, omega)?;
    let n = mu_star.len();
    let levels = window_levels(n, config)?;
    let cell = std::f64::consts::TAU / n as f64;

    let profiles: Vec<Vec<f64>> = levels
        .iter()
        .map(|&k| {
            let w = n >> k;
            (0..n)
                .into_par_iter()
                .map(|t| {
                    let mut m = f64::INFINITY;
                    for (u, v) in window_pairs(t, w, n) {
                        let num = mu_star[u] - mu_star[v];
                        if num <= 0.0 {
                            m = 0.0;
                            continue;
                        }
                        let omega_gap = omega[v].abs_diff(omega[u]) as f64 * cell;
                        let mut denom = mu_star[v] * omega_gap;
                        if second_order {
                            let du = omega[u].abs_diff(omega[t]) as f64;
                            let dv = omega[v].abs_diff(omega[t]) as f64;
                            denom *= du.max(dv) * cell;
                        }
                        if denom > 0.0 {
                            m = m.min(num / denom);
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();

    let flagged = scan_flags(&profiles, config.eps_crit, config.rho);
    let components = cluster(&flagged, profiles.last().unwrap());
    Ok(CriticalScan {
        levels,
        profiles,
        flagged,
        components,
    })
}

/// Pairwise mod-π collinearity of flat-point representatives: matrix[i][j]
/// is true iff ξ_ω(t_i) − ξ_ω(t_j) is within tol_ang of a multiple of π;
/// `exists_t0` iff all representatives are pairwise collinear.
pub fn collinearity_classes(
    points: &[usize],
    xi_omega: &[f64],
    tol_ang: f64,
) -> (Vec<Vec<bool>>, bool) {
    let matrix: Vec<Vec<bool>> = points
        .iter()
        .map(|&ti| {
            points
                .iter()
                .map(|&tj| mod_pi_distance(xi_omega[ti] - xi_omega[tj]) < tol_ang)
                .collect()
        })
        .collect();
    let exists_t0 = matrix.iter().all(|row| row.iter().all(|&b| b));
    (matrix, exists_t0)
}

/// One γ row of the scan table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRow {
    pub gamma: f64,
    /// min over t of the finest-level windowed ratio estimate.
    pub min_ratio: f64,
    /// Whether some t passes the smallness + decay test at this γ.
    pub attains_zero: bool,
}

/// γ-scan table over the uniform [0, π) grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaScan {
    pub rows: Vec<GammaRow>,
}

impl GammaScan {
    /// The necessary condition for extremality holds iff every row attains 0.
    pub fn all_rows_attain_zero(&self) -> bool {
        self.rows.iter().all(|r| r.attains_zero)
    }
}

/// Scans the two-factor critical ratio
/// (μ*(u) − μ*(v)) / (μ*(v) · ξ¹(u,v) · ξ²(u,v,γ)) over dyadic windows for
/// each γ on a uniform grid of `config.gamma_steps` points in [0, π).
pub fn gamma_scan(
    mu_star: &[f64],
    xi_omega: &[f64],
    config: &AnalysisConfig,
) -> Result<GammaScan> {
    if mu_star.len() != xi_omega.len() {
        return Err(Error::precondition("mu_star and xi_omega length mismatch"));
    }
    if mu_star.iter().any(|v| *v <= 0.0) {
        return Err(Error::precondition(
            "gamma scan requires a strictly positive rearranged modulus",
        ));
    }
    let n = mu_star.len();
    let levels = window_levels(n, config)?;

    // γ-independent pair data per (level, t): either an exact zero of the
    // numerator, or (num/(μ*(v)·ξ¹), midpoint (ξ_ω(u)+ξ_ω(v))/2).
    #[derive(Clone, Copy)]
    enum Pair {
        Zero,
        Ratio { base: f64, mid: f64 },
    }
    let pair_data: Vec<Vec<Vec<Pair>>> = levels
        .iter()
        .map(|&k| {
            let w = n >> k;
            (0..n)
                .into_par_iter()
                .map(|t| {
                    window_pairs(t, w, n)
                        .filter_map(|(u, v)| {
                            let num = mu_star[u] - mu_star[v];
                            if num <= 0.0 {
                                return Some(Pair::Zero);
                            }
                            let x1 = xi1(u, v, xi_omega);
                            if x1 <= 0.0 {
                                return None;
                            }
                            Some(Pair::Ratio {
                                base: num / (mu_star[v] * x1),
                                mid: (xi_omega[u] + xi_omega[v]) / 2.0,
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let base_idx = levels.len().saturating_sub(4);
    let gammas: Vec<f64> = (0..config.gamma_steps)
        .map(|g| std::f64::consts::PI * g as f64 / config.gamma_steps as f64)
        .collect();

    let eval_profile = |level: usize, gamma: f64| -> Vec<f64> {
        pair_data[level]
            .iter()
            .map(|pairs| {
                let mut m = f64::INFINITY;
                for p in pairs {
                    match *p {
                        Pair::Zero => m = 0.0,
                        Pair::Ratio { base, mid } => {
                            let x2 = (mid - gamma).sin().abs();
                            if x2 > 0.0 {
                                m = m.min(base / x2);
                            }
                        }
                    }
                }
                m
            })
            .collect()
    };

    let rows: Vec<GammaRow> = gammas
        .par_iter()
        .map(|&gamma| {
            let finest = eval_profile(levels.len() - 1, gamma);
            let base = eval_profile(base_idx, gamma);
            let mut min_ratio = f64::INFINITY;
            let mut attains = false;
            for (&m_fine, &m_base) in finest.iter().zip(&base) {
                min_ratio = min_ratio.min(m_fine);
                if m_fine < config.eps_crit && (m_fine == 0.0 || m_fine <= config.rho * m_base) {
                    attains = true;
                }
            }
            GammaRow {
                gamma,
                min_ratio,
                attains_zero: attains,
            }
        })
        .collect();

    Ok(GammaScan { rows })
}

/// Extreme-point status of the analyzed function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Extreme,
    NotExtreme,
    Unknown,
}

/// Citation tag of the rule that decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    InnerConstantModulus,
    OuterThmC,
    Corollary69i,
    Corollary69ii,
    Corollary69iiiCollinear,
    Corollary69iiiGeneric,
    Corollary65,
    Theorem66,
    UnknownGap,
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::InnerConstantModulus => "inner-constant-modulus",
            Rule::OuterThmC => "outer-thmC",
            Rule::Corollary69i => "corollary-6.9-i",
            Rule::Corollary69ii => "corollary-6.9-ii",
            Rule::Corollary69iiiCollinear => "corollary-6.9-iii-collinear",
            Rule::Corollary69iiiGeneric => "corollary-6.9-iii-generic",
            Rule::Corollary65 => "corollary-6.5",
            Rule::Theorem66 => "theorem-6.6",
            Rule::UnknownGap => "unknown-gap",
        }
    }
}

/// Critical-set evidence attached to every verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSetReport {
    pub e1: CriticalScan,
    pub e2: CriticalScan,
    /// Pairwise collinearity of the E1 representatives under the analyzed
    /// inner factor (single-factor case) or the first qualifying divisor.
    pub collinearity: Vec<Vec<bool>>,
    pub exists_t0: bool,
    pub gamma: GammaScan,
}

/// Decision output: status, the rule applied, the witness when not extreme,
/// the critical-set evidence, and human-readable diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub rule: Rule,
    pub witness: Option<Witness>,
    pub report: CriticalSetReport,
    pub diagnostics: Vec<String>,
}

/// Input to the decision procedure: boundary modulus, finite inner factor
/// list, and whether the factorization carries an outer part.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    pub mu: RealSamples,
    pub inner: Vec<BlaschkePoint>,
    pub outer: bool,
}

/// Relative tolerance below which the modulus counts as constant.
pub const CONSTANT_MODULUS_TOL: f64 = 1e-9;

fn is_constant(values: &[f64]) -> bool {
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    hi - lo <= CONSTANT_MODULUS_TOL * hi.max(1.0)
}

/// Enumerates nonempty divisor subsets: single factors in input order first,
/// then larger subsets by (size, lexicographic index order).
fn divisor_subsets(m: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1usize..1 << m)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

fn attempt_witness(
    mu: &RealSamples,
    divisor: &BoundaryTrace,
    cofactor: &BoundaryTrace,
    gauge: &Gauge,
    config: &AnalysisConfig,
) -> Result<SearchOutcome> {
    witness_search(mu, divisor, cofactor, gauge, config)
}

/// Top-level decision procedure.
///
/// Dispatch: constant modulus → Extreme; no inner factor → Extreme (outer
/// case); a single Blaschke factor → the critical-set census decides, with
/// a mandatory verified witness on the non-extreme side; several factors →
/// the single-class necessity test over all inner divisors, or Unknown in
/// the documented gap.
pub fn decide_extreme(
    f_spec: &FunctionSpec,
    gauge: &Gauge,
    config: &AnalysisConfig,
) -> Result<Verdict> {
    config.validate()?;
    if !gauge.is_strict() {
        return Err(Error::precondition(
            "decision procedure requires a strictly increasing, strictly concave gauge",
        ));
    }
    if f_spec.mu.grid() != gauge.grid() {
        return Err(Error::precondition("modulus and gauge grids differ"));
    }
    let norm = lorentz_norm(&f_spec.mu, gauge)?;
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::precondition(format!(
            "decision procedure requires a normalized modulus, got norm {norm}"
        )));
    }

    let grid = f_spec.mu.grid();
    let r = decreasing_rearrangement(&f_spec.mu)?;
    let e1 = critical_set_e1(r.mu_star(), r.omega(), config)?;
    let e2 = critical_set_e2(r.mu_star(), r.omega(), config)?;

    // ξ pulled back through ω for the primary inner factor (or the full
    // product); used for the report's collinearity matrix and γ table.
    let primary_trace = if f_spec.inner.is_empty() {
        None
    } else {
        Some(blaschke_product(&f_spec.inner, grid)?)
    };
    let xi_omega_primary: Option<Vec<f64>> = primary_trace
        .as_ref()
        .map(|tr| r.pull_back(tr.arg_branch()));

    let reps = e1.representatives();
    let (collinearity, exists_t0) = match &xi_omega_primary {
        Some(xi) => collinearity_classes(&reps, xi, config.tol_ang),
        None => {
            let m = reps.len();
            (vec![vec![true; m]; m], true)
        }
    };
    let gamma = match &xi_omega_primary {
        Some(xi) => gamma_scan(r.mu_star(), xi, config)?,
        None => GammaScan { rows: Vec::new() },
    };

    let report = CriticalSetReport {
        e1,
        e2,
        collinearity,
        exists_t0,
        gamma,
    };
    let mut diagnostics = Vec::new();

    // (1) Constant modulus: f is a unimodular multiple of an inner function.
    if is_constant(f_spec.mu.values()) {
        return Ok(Verdict {
            status: Status::Extreme,
            rule: Rule::InnerConstantModulus,
            witness: None,
            report,
            diagnostics,
        });
    }

    // (2) No inner factor: normalized outer functions are extreme.
    if f_spec.inner.is_empty() {
        return Ok(Verdict {
            status: Status::Extreme,
            rule: Rule::OuterThmC,
            witness: None,
            report,
            diagnostics,
        });
    }

    let card = report.e1.cardinality();
    let e2_empty = report.e2.cardinality() == 0;

    // (3) Exactly one Blaschke factor: the census decides.
    if f_spec.inner.len() == 1 {
        if !report.exists_t0 || !e2_empty {
            let rule = if !e2_empty || card >= 4 {
                Rule::Corollary69i
            } else if card == 2 {
                Rule::Corollary69iiiGeneric
            } else {
                Rule::Theorem66
            };
            return Ok(Verdict {
                status: Status::Extreme,
                rule,
                witness: None,
                report,
                diagnostics,
            });
        }
        let rule = if card <= 1 {
            Rule::Corollary69ii
        } else if card == 2 {
            Rule::Corollary69iiiCollinear
        } else {
            Rule::Theorem66
        };
        let inner_trace = primary_trace.expect("single factor present");
        let outer_trace = outer_from_modulus(&f_spec.mu, 0.0, config.modulus_floor)?;
        let outcome = attempt_witness(&f_spec.mu, &inner_trace, &outer_trace, gauge, config)?;
        return Ok(match outcome.witness {
            Some(w) => Verdict {
                status: Status::NotExtreme,
                rule,
                witness: Some(w),
                report,
                diagnostics,
            },
            None => {
                diagnostics.push(format!(
                    "critical census indicates non-extremality (card E1 = {card}, E2 empty, common class) but the witness scan exhausted: {} theta admitted, {} gated",
                    outcome.stats.theta_admitted, outcome.stats.theta_gated
                ));
                Verdict {
                    status: Status::Unknown,
                    rule: Rule::UnknownGap,
                    witness: None,
                    report,
                    diagnostics,
                }
            }
        });
    }

    // (4) Several inner factors.
    let outer_trace = outer_from_modulus(&f_spec.mu, 0.0, config.modulus_floor)?;
    let factor_traces: Vec<BoundaryTrace> = f_spec
        .inner
        .iter()
        .map(|p| blaschke_boundary(p, grid))
        .collect();
    if f_spec.inner.len() > 12 {
        return Err(Error::precondition(
            "at most 12 inner factors are supported (divisor subsets are enumerated)",
        ));
    }

    let build_divisor = |subset: &[usize]| -> Result<(BoundaryTrace, BoundaryTrace)> {
        let div_refs: Vec<&BoundaryTrace> =
            subset.iter().map(|&i| &factor_traces[i]).collect();
        let divisor = trace_product(&div_refs)?;
        let mut cof_refs: Vec<&BoundaryTrace> = (0..factor_traces.len())
            .filter(|i| !subset.contains(i))
            .map(|i| &factor_traces[i])
            .collect();
        cof_refs.push(&outer_trace);
        let cofactor = trace_product(&cof_refs)?;
        Ok((divisor, cofactor))
    };

    if card <= 1 && e2_empty {
        // Small census: not extreme; certify through any single factor.
        for (i, _) in f_spec.inner.iter().enumerate() {
            let (divisor, cofactor) = build_divisor(&[i])?;
            let outcome = attempt_witness(&f_spec.mu, &divisor, &cofactor, gauge, config)?;
            if let Some(w) = outcome.witness {
                return Ok(Verdict {
                    status: Status::NotExtreme,
                    rule: Rule::Corollary65,
                    witness: Some(w),
                    report,
                    diagnostics,
                });
            }
            diagnostics.push(format!(
                "witness scan through factor {i} exhausted ({} theta admitted)",
                outcome.stats.theta_admitted
            ));
        }
        diagnostics.push(
            "census card E1 <= 1 with empty E2 indicates non-extremality but no factor produced a verified witness"
                .to_string(),
        );
        return Ok(Verdict {
            status: Status::Unknown,
            rule: Rule::UnknownGap,
            witness: None,
            report,
            diagnostics,
        });
    }

    if e2_empty {
        // Necessity test: some inner divisor putting all E1 representatives
        // into one mod-π class certifies non-extremality.
        for subset in divisor_subsets(f_spec.inner.len()) {
            let (divisor, cofactor) = build_divisor(&subset)?;
            let xi_omega = r.pull_back(divisor.arg_branch());
            let (_, collinear) = collinearity_classes(&reps, &xi_omega, config.tol_ang);
            if !collinear {
                continue;
            }
            let outcome = attempt_witness(&f_spec.mu, &divisor, &cofactor, gauge, config)?;
            if let Some(w) = outcome.witness {
                return Ok(Verdict {
                    status: Status::NotExtreme,
                    rule: Rule::Theorem66,
                    witness: Some(w),
                    report,
                    diagnostics,
                });
            }
            diagnostics.push(format!(
                "divisor subset {subset:?} is collinear on E1 but its witness scan exhausted"
            ));
        }
    }

    diagnostics.push(
        "multi-factor inner part outside the decided cases (necessity conditions hold for every divisor or scans exhausted)"
            .to_string(),
    );
    Ok(Verdict {
        status: Status::Unknown,
        rule: Rule::UnknownGap,
        witness: None,
        report,
        diagnostics,
    })
}
