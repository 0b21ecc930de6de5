//! Uniform discretization of [0,2π), sampled real/complex functions, and
//! concave gauge construction/validation.
//!
//! All downstream integrals are increment-weighted cell sums, so the grid
//! carries both the sample points t_i = 2πi/N and, through [`Gauge`], the
//! gauge increments φ(t_{i+1}) − φ(t_i).

use std::f64::consts::{PI, TAU};
use std::io::BufRead;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance distinguishing strict from non-strict monotonicity and
/// concavity in gauge validation.
pub const STRICTNESS_TOL: f64 = 1e-12;

/// Formats a float with 17 significant digits, enough to round-trip f64
/// exactly; shared by the CSV writers and the JSON report serializer.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Uniform N-point grid on [0,2π).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    n_samples: usize,
}

/// Builds a uniform grid; `n` must be a power of two and at least 16.
pub fn make_grid(n: usize) -> Result<GridSpec> {
    if n < 16 || !n.is_power_of_two() {
        return Err(Error::precondition(format!(
            "grid size must be a power of two >= 16, got {n}"
        )));
    }
    Ok(GridSpec { n_samples: n })
}

impl GridSpec {
    pub fn n(&self) -> usize {
        self.n_samples
    }

    /// Cell width 2π/N.
    pub fn step(&self) -> f64 {
        TAU / self.n_samples as f64
    }

    /// Sample point t_i = 2πi/N.
    pub fn point(&self, i: usize) -> f64 {
        TAU * i as f64 / self.n_samples as f64
    }

    /// All sample points in order.
    pub fn points(&self) -> Vec<f64> {
        (0..self.n_samples).map(|i| self.point(i)).collect()
    }

    /// Index of the grid point nearest to angle `t` (taken mod 2π).
    pub fn nearest_index(&self, t: f64) -> usize {
        let n = self.n_samples as f64;
        let raw = (t / TAU * n).round();
        (raw.rem_euclid(n)) as usize % self.n_samples
    }
}

/// Role of a real sampled function: nonnegative modulus or a bounded
/// real-signed perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealRole {
    Modulus,
    RealSigned,
}

/// Real function sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct RealSamples {
    grid: GridSpec,
    values: Vec<f64>,
    role: RealRole,
}

impl RealSamples {
    /// Nonnegative modulus samples.
    pub fn modulus(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::precondition(format!(
                "expected {} samples, got {}",
                grid.n(),
                values.len()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::precondition(format!(
                    "modulus sample {i} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(RealSamples {
            grid,
            values,
            role: RealRole::Modulus,
        })
    }

    /// Real-signed samples with |value| <= 1 (tiny roundoff excess is clamped).
    pub fn real_signed(grid: GridSpec, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::precondition(format!(
                "expected {} samples, got {}",
                grid.n(),
                values.len()
            )));
        }
        for (i, v) in values.iter_mut().enumerate() {
            if !v.is_finite() || v.abs() > 1.0 + 1e-9 {
                return Err(Error::precondition(format!(
                    "real-signed sample {i} must lie in [-1,1], got {v}"
                )));
            }
            *v = v.clamp(-1.0, 1.0);
        }
        Ok(RealSamples {
            grid,
            values,
            role: RealRole::RealSigned,
        })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn role(&self) -> RealRole {
        self.role
    }

    /// Rescales a modulus in place (used for normalization).
    pub fn scale(&mut self, c: f64) -> Result<()> {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::precondition(format!(
                "scale factor must be finite and >= 0, got {c}"
            )));
        }
        for v in &mut self.values {
            *v *= c;
        }
        Ok(())
    }
}

/// Complex function sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSamples {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl ComplexSamples {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::precondition(format!(
                "expected {} samples, got {}",
                grid.n(),
                values.len()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::precondition(format!(
                    "complex sample {i} must be finite"
                )));
            }
        }
        Ok(ComplexSamples { grid, values })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Pointwise modulus as a modulus-role [`RealSamples`].
    pub fn modulus(&self) -> RealSamples {
        RealSamples {
            grid: self.grid,
            values: self.values.iter().map(|v| v.norm()).collect(),
            role: RealRole::Modulus,
        }
    }
}

/// Sampled concave normalization function φ with strictness flags.
///
/// `phi` holds φ at the N+1 cell boundaries t_0..t_N (t_N = 2π); increments
/// Δφ_i = φ(t_{i+1}) − φ(t_i) are precomputed for the quadrature sums.
#[derive(Debug, Clone, PartialEq)]
pub struct Gauge {
    grid: GridSpec,
    phi: Vec<f64>,
    dphi: Vec<f64>,
    strictly_increasing: bool,
    strictly_concave: bool,
}

/// Validation flags recomputed from the stored φ values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaugeReport {
    pub increasing: bool,
    pub strictly_increasing: bool,
    pub concave: bool,
    pub strictly_concave: bool,
    pub normalized: bool,
}

impl Gauge {
    /// Builds a gauge from explicit boundary values; requires φ(0)=0,
    /// φ(2π)=1 (within 1e−12) and φ nondecreasing.
    pub fn from_phi_values(grid: GridSpec, phi: Vec<f64>) -> Result<Self> {
        if phi.len() != grid.n() + 1 {
            return Err(Error::precondition(format!(
                "gauge needs {} boundary values, got {}",
                grid.n() + 1,
                phi.len()
            )));
        }
        if phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::precondition("gauge values must be finite"));
        }
        if phi[0].abs() > STRICTNESS_TOL || (phi[grid.n()] - 1.0).abs() > STRICTNESS_TOL {
            return Err(Error::precondition(format!(
                "gauge must satisfy phi(0)=0 and phi(2pi)=1, got {} and {}",
                phi[0],
                phi[grid.n()]
            )));
        }
        let dphi: Vec<f64> = phi.windows(2).map(|w| w[1] - w[0]).collect();
        if dphi.iter().any(|d| *d < -STRICTNESS_TOL) {
            return Err(Error::precondition("gauge must be nondecreasing"));
        }
        let strictly_increasing = dphi.iter().all(|d| *d > STRICTNESS_TOL);
        let strictly_concave = dphi.windows(2).all(|w| w[1] - w[0] < -STRICTNESS_TOL);
        Ok(Gauge {
            grid,
            phi,
            dphi,
            strictly_increasing,
            strictly_concave,
        })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// φ at the cell boundaries t_0..t_N.
    pub fn phi_values(&self) -> &[f64] {
        &self.phi
    }

    /// Increments Δφ_i = φ(t_{i+1}) − φ(t_i), i = 0..N−1.
    pub fn increments(&self) -> &[f64] {
        &self.dphi
    }

    pub fn strictly_increasing(&self) -> bool {
        self.strictly_increasing
    }

    pub fn strictly_concave(&self) -> bool {
        self.strictly_concave
    }

    /// Both strictness flags, required by the decision procedure.
    pub fn is_strict(&self) -> bool {
        self.strictly_increasing && self.strictly_concave
    }
}

/// Builds the power gauge φ(t) = (t/2π)^(1/p); strictly increasing and
/// strictly concave for every p > 1.
pub fn make_power_gauge(p: f64, grid: GridSpec) -> Result<Gauge> {
    if p <= 1.0 || !p.is_finite() {
        return Err(Error::precondition(format!(
            "power gauge requires p > 1 (p = 1 is not strictly concave), got {p}"
        )));
    }
    let n = grid.n() as f64;
    let phi = (0..=grid.n())
        .map(|k| (k as f64 / n).powf(1.0 / p))
        .collect();
    Gauge::from_phi_values(grid, phi)
}

/// Recomputes all validation flags of a gauge (report-only; never fails).
pub fn validate_gauge(g: &Gauge) -> GaugeReport {
    let phi = &g.phi;
    let n = g.grid.n();
    let diffs: Vec<f64> = phi.windows(2).map(|w| w[1] - w[0]).collect();
    let increasing = diffs.iter().all(|d| *d >= -STRICTNESS_TOL);
    let strictly_increasing = diffs.iter().all(|d| *d > STRICTNESS_TOL);
    let second: Vec<f64> = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    let concave = second.iter().all(|d| *d <= STRICTNESS_TOL);
    let strictly_concave = second.iter().all(|d| *d < -STRICTNESS_TOL);
    let normalized = phi[0].abs() <= STRICTNESS_TOL && (phi[n] - 1.0).abs() <= STRICTNESS_TOL;
    GaugeReport {
        increasing,
        strictly_increasing,
        concave,
        strictly_concave,
        normalized,
    }
}

fn parse_field(field: &str, line_no: usize) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|_| {
        Error::data(format!(
            "line {line_no}: cannot parse '{}' as a number",
            field.trim()
        ))
    })
}

fn read_csv_rows(reader: impl BufRead, columns: usize) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::data(format!("line {line_no}: {e}")))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        // An optional header row is detected by a non-numeric first field.
        if rows.is_empty() && fields[0].trim().parse::<f64>().is_err() {
            continue;
        }
        if fields.len() != columns {
            return Err(Error::data(format!(
                "line {line_no}: expected {columns} comma-separated fields, got {}",
                fields.len()
            )));
        }
        let mut row = Vec::with_capacity(columns);
        for f in fields {
            let v = parse_field(f, line_no)?;
            if !v.is_finite() {
                return Err(Error::data(format!("line {line_no}: non-finite value")));
            }
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::data("no data rows in CSV input"));
    }
    Ok(rows)
}

/// Circular distance between two angles mod 2π.
fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// For each grid point picks the row (t, ...) with the nearest t mod 2π.
fn resample_nearest(rows: &[Vec<f64>], grid: GridSpec) -> Vec<usize> {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&i, &j| rows[i][0].total_cmp(&rows[j][0]));
    let sorted_t: Vec<f64> = order.iter().map(|&i| rows[i][0].rem_euclid(TAU)).collect();
    let mut sorted_order: Vec<usize> = order.clone();
    // Re-sort by the wrapped angle so binary search works on [0,2π).
    let mut pairs: Vec<(f64, usize)> = sorted_t.into_iter().zip(sorted_order.drain(..)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let m = pairs.len();
    (0..grid.n())
        .map(|i| {
            let t = grid.point(i);
            let pos = pairs.partition_point(|(pt, _)| *pt < t);
            // Candidates: neighbors around the insertion point, cyclically.
            let candidates = [pos.wrapping_sub(1).min(m - 1), pos % m, (pos + 1) % m];
            let best = candidates
                .iter()
                .copied()
                .min_by(|&a, &b| {
                    angle_distance(pairs[a].0, t).total_cmp(&angle_distance(pairs[b].0, t))
                })
                .unwrap();
            pairs[best].1
        })
        .collect()
}

/// Reads modulus samples from two-column `t,value` CSV (optional header),
/// resampling by nearest grid point mod 2π.
pub fn read_modulus_csv(reader: impl BufRead, grid: GridSpec) -> Result<RealSamples> {
    let rows = read_csv_rows(reader, 2)?;
    let picks = resample_nearest(&rows, grid);
    let values: Vec<f64> = picks.iter().map(|&r| rows[r][1]).collect();
    if values.iter().any(|v| *v < 0.0) {
        return Err(Error::data("modulus CSV contains negative values"));
    }
    RealSamples::modulus(grid, values)
}

/// Reads complex trace samples from three-column `t,re,im` CSV.
pub fn read_trace_csv(reader: impl BufRead, grid: GridSpec) -> Result<ComplexSamples> {
    let rows = read_csv_rows(reader, 3)?;
    let picks = resample_nearest(&rows, grid);
    let values: Vec<Complex64> = picks
        .iter()
        .map(|&r| Complex64::new(rows[r][1], rows[r][2]))
        .collect();
    ComplexSamples::new(grid, values)
}

/// Writes `t,value` CSV with full-precision floats and a header row.
pub fn write_modulus_csv(out: &mut String, samples: &RealSamples) {
    out.push_str("t,value\n");
    let grid = samples.grid();
    for (i, v) in samples.values().iter().enumerate() {
        out.push_str(&format_float(grid.point(i)));
        out.push(',');
        out.push_str(&format_float(*v));
        out.push('\n');
    }
}

/// Writes `t,re,im` CSV with full-precision floats and a header row.
pub fn write_trace_csv(out: &mut String, samples: &ComplexSamples) {
    out.push_str("t,re,im\n");
    let grid = samples.grid();
    for (i, v) in samples.values().iter().enumerate() {
        out.push_str(&format_float(grid.point(i)));
        out.push(',');
        out.push_str(&format_float(v.re));
        out.push(',');
        out.push_str(&format_float(v.im));
        out.push('\n');
    }
}

/// Wrapped angular distance to the nearest multiple of π.
pub fn mod_pi_distance(x: f64) -> f64 {
    let d = x.rem_euclid(PI);
    d.min(PI - d)
}
