//! Machine-readable report documents for the CLI subcommands.
//!
//! Every document is JSON with a fixed field order and fixed float formatting
//! (the same `{:.16e}` rendering the CSV layer uses), so identical inputs
//! produce byte-identical output. Wall-clock timing and other run-dependent
//! chatter go to the human summary string, never into the document.

use std::time::Instant;

use extremum_core::{
    blaschke_product, decide_extreme, decreasing_rearrangement, format_float, lorentz_norm,
    make_grid, make_power_gauge, marcinkiewicz_norm, outer_from_modulus, read_modulus_csv,
    trace_product, witness_search, AnalysisConfig, BlaschkePoint, BoundaryTrace, CriticalScan,
    Error, FixtureId, FunctionSpec, GammaScan, Gauge, RealSamples, RearrangementResult, Result,
    Status, ThetaOutcome, Witness,
};

/// Schema version stamped into every document this build emits.
pub const SCHEMA_VERSION: u64 = 1;

/// Result of running a subcommand: the JSON document (newline-terminated)
/// plus a one-line human summary destined for stderr.
pub struct CommandOutput {
    pub json: String,
    pub summary: String,
}

/// Append-only JSON writer with explicit structure calls. Keys are plain
/// ASCII identifiers supplied by this crate; string *values* are escaped.
pub struct JsonBuf {
    out: String,
    comma: Vec<bool>,
}

impl Default for JsonBuf {
    fn default() -> Self {
        Self::new()
    }
}

impl JsonBuf {
    pub fn new() -> Self {
        JsonBuf {
            out: String::new(),
            comma: vec![false],
        }
    }

    fn pad(&mut self, key: Option<&str>) {
        if let Some(flag) = self.comma.last_mut() {
            if *flag {
                self.out.push(',');
            }
            *flag = true;
        }
        if let Some(k) = key {
            self.out.push('"');
            self.out.push_str(k);
            self.out.push_str("\":");
        }
    }

    pub fn begin_obj(&mut self, key: Option<&str>) {
        self.pad(key);
        self.out.push('{');
        self.comma.push(false);
    }

    pub fn end_obj(&mut self) {
        self.comma.pop();
        self.out.push('}');
    }

    pub fn begin_arr(&mut self, key: Option<&str>) {
        self.pad(key);
        self.out.push('[');
        self.comma.push(false);
    }

    pub fn end_arr(&mut self) {
        self.comma.pop();
        self.out.push(']');
    }

    pub fn string(&mut self, key: Option<&str>, v: &str) {
        self.pad(key);
        self.out.push('"');
        self.out.push_str(&escape_json(v));
        self.out.push('"');
    }

    /// Non-finite values have no JSON representation; they serialize as null.
    pub fn float(&mut self, key: Option<&str>, v: f64) {
        self.pad(key);
        if v.is_finite() {
            self.out.push_str(&format_float(v));
        } else {
            self.out.push_str("null");
        }
    }

    pub fn int(&mut self, key: Option<&str>, v: u64) {
        self.pad(key);
        self.out.push_str(&v.to_string());
    }

    pub fn boolean(&mut self, key: Option<&str>, v: bool) {
        self.pad(key);
        self.out.push_str(if v { "true" } else { "false" });
    }

    pub fn null(&mut self, key: Option<&str>) {
        self.pad(key);
        self.out.push_str("null");
    }

    pub fn float_array(&mut self, key: Option<&str>, vs: &[f64]) {
        self.begin_arr(key);
        for &v in vs {
            self.float(None, v);
        }
        self.end_arr();
    }

    pub fn finish(mut self) -> String {
        self.out.push('\n');
        self.out
    }
}

/// Escapes a string for inclusion in a JSON document.
pub fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn status_str(status: Status) -> &'static str {
    match status {
        Status::Extreme => "extreme",
        Status::NotExtreme => "not-extreme",
        Status::Unknown => "unknown",
    }
}

fn config_block(j: &mut JsonBuf, config: &AnalysisConfig) {
    j.begin_obj(Some("config"));
    j.int(Some("n_samples"), config.n_samples as u64);
    j.float(Some("gauge_p"), config.gauge_p);
    j.float(Some("eps_crit"), config.eps_crit);
    j.float(Some("rho"), config.rho);
    j.float(Some("tol_ang"), config.tol_ang);
    j.int(Some("theta_steps"), config.theta_steps as u64);
    j.int(Some("gamma_steps"), config.gamma_steps as u64);
    j.float(Some("beta0"), config.beta0);
    j.int(Some("max_halvings"), config.max_halvings as u64);
    j.float(Some("norm_tol"), config.norm_tol);
    j.float(Some("fourier_tol"), config.fourier_tol);
    j.float(Some("modulus_floor"), config.modulus_floor);
    j.end_obj();
}

fn input_block(
    j: &mut JsonBuf,
    source: &str,
    inner: &[BlaschkePoint],
    outer: bool,
    config: &AnalysisConfig,
) {
    j.begin_obj(Some("input"));
    j.string(Some("source"), source);
    j.begin_arr(Some("inner"));
    for p in inner {
        j.begin_obj(None);
        j.float(Some("re"), p.a().re);
        j.float(Some("im"), p.a().im);
        j.end_obj();
    }
    j.end_arr();
    j.boolean(Some("outer"), outer);
    config_block(j, config);
    j.end_obj();
}

fn scan_block(j: &mut JsonBuf, key: &str, scan: &CriticalScan) {
    j.begin_obj(Some(key));
    j.begin_arr(Some("levels"));
    for &k in &scan.levels {
        j.int(None, k as u64);
    }
    j.end_arr();
    j.begin_arr(Some("profiles"));
    for row in &scan.profiles {
        j.float_array(None, row);
    }
    j.end_arr();
    j.int(
        Some("flagged_count"),
        scan.flagged.iter().filter(|&&f| f).count() as u64,
    );
    j.int(Some("cardinality"), scan.cardinality() as u64);
    j.begin_arr(Some("components"));
    for c in &scan.components {
        j.begin_obj(None);
        j.int(Some("representative"), c.representative as u64);
        j.int(Some("size"), c.members.len() as u64);
        j.begin_arr(Some("intervals"));
        for &(a, b) in &c.intervals {
            j.begin_arr(None);
            j.int(None, a as u64);
            j.int(None, b as u64);
            j.end_arr();
        }
        j.end_arr();
        j.end_obj();
    }
    j.end_arr();
    j.end_obj();
}

fn gamma_block(j: &mut JsonBuf, key: &str, gamma: &GammaScan) {
    j.begin_arr(Some(key));
    for row in &gamma.rows {
        j.begin_obj(None);
        j.float(Some("gamma"), row.gamma);
        j.float(Some("min_ratio"), row.min_ratio);
        j.boolean(Some("attains_zero"), row.attains_zero);
        j.end_obj();
    }
    j.end_arr();
}

fn witness_block(j: &mut JsonBuf, key: &str, w: &Witness, eta: &(Vec<f64>, Vec<f64>)) {
    j.begin_obj(Some(key));
    j.float(Some("alpha"), w.params.alpha());
    j.float(Some("beta"), w.params.beta());
    j.float(Some("theta"), w.params.theta());
    j.int(Some("theta_index"), w.theta_index as u64);
    j.int(Some("halvings"), w.halvings as u64);
    j.float(Some("norm_plus"), w.norm_plus);
    j.float(Some("norm_minus"), w.norm_minus);
    j.float(Some("neg_fourier_residual"), w.neg_fourier_residual);
    j.float(Some("max_abs_g"), w.max_abs_g);
    j.float_array(Some("eta_plus"), &eta.0);
    j.float_array(Some("eta_minus"), &eta.1);
    let g = w.g_trace.values();
    j.begin_arr(Some("g_re"));
    for v in g {
        j.float(None, v.re);
    }
    j.end_arr();
    j.begin_arr(Some("g_im"));
    for v in g {
        j.float(None, v.im);
    }
    j.end_arr();
    j.end_obj();
}

/// Boundary trace of the analyzed function: every inner factor times the
/// zero-phase outer factor of μ.
fn full_trace(
    mu: &RealSamples,
    inner: &[BlaschkePoint],
    config: &AnalysisConfig,
) -> Result<BoundaryTrace> {
    let outer = outer_from_modulus(mu, 0.0, config.modulus_floor)?;
    if inner.is_empty() {
        return Ok(outer);
    }
    let product = blaschke_product(inner, mu.grid())?;
    trace_product(&[&product, &outer])
}

/// Rearranged perturbed moduli η± = μ*·(1 ± h∘ω). The direction h is
/// recovered pointwise from the certificate via h = Re(g̃/f̃), which holds for
/// whichever divisor the search used, so the caller does not need to know it.
fn eta_profiles(
    w: &Witness,
    mu: &RealSamples,
    rearrangement: &RearrangementResult,
    inner: &[BlaschkePoint],
    config: &AnalysisConfig,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let f = full_trace(mu, inner, config)?;
    let fv = f.values().values();
    let gv = w.g_trace.values();
    let h: Vec<f64> = (0..fv.len()).map(|i| (gv[i] / fv[i]).re).collect();
    let h_omega = rearrangement.pull_back(&h);
    let mu_star = rearrangement.mu_star();
    let eta_plus = mu_star
        .iter()
        .zip(&h_omega)
        .map(|(&m, &h)| m * (1.0 + h))
        .collect();
    let eta_minus = mu_star
        .iter()
        .zip(&h_omega)
        .map(|(&m, &h)| m * (1.0 - h))
        .collect();
    Ok((eta_plus, eta_minus))
}

/// Shared front half of `analyze` and `witness`: parse the CSV, normalize the
/// modulus to Lorentz norm 1, and report the scale that was applied.
struct LoadedModulus {
    gauge: Gauge,
    mu: RealSamples,
    input_norm: f64,
    scale: f64,
}

fn load_modulus(csv: &[u8], config: &AnalysisConfig) -> Result<LoadedModulus> {
    config.validate()?;
    let grid = make_grid(config.n_samples)?;
    let gauge = make_power_gauge(config.gauge_p, grid)?;
    let mut mu = read_modulus_csv(csv, grid)?;
    let input_norm = lorentz_norm(&mu, &gauge)?;
    if input_norm <= 0.0 || !input_norm.is_finite() {
        return Err(Error::data(format!(
            "input modulus has Lorentz norm {input_norm}; cannot normalize"
        )));
    }
    let scale = 1.0 / input_norm;
    mu.scale(scale)?;
    Ok(LoadedModulus {
        gauge,
        mu,
        input_norm,
        scale,
    })
}

/// Runs the full decision procedure on a modulus CSV and renders the report
/// document.
pub fn run_analysis(
    source: &str,
    csv: &[u8],
    inner: &[BlaschkePoint],
    outer: bool,
    config: &AnalysisConfig,
) -> Result<CommandOutput> {
    let started = Instant::now();
    let loaded = load_modulus(csv, config)?;
    let lorentz = lorentz_norm(&loaded.mu, &loaded.gauge)?;
    let marcinkiewicz = marcinkiewicz_norm(&loaded.mu, &loaded.gauge)?;
    let rearrangement = decreasing_rearrangement(&loaded.mu)?;

    let spec = FunctionSpec {
        mu: loaded.mu.clone(),
        inner: inner.to_vec(),
        outer,
    };
    let verdict = decide_extreme(&spec, &loaded.gauge, config)?;
    let eta = match &verdict.witness {
        Some(w) => Some(eta_profiles(w, &loaded.mu, &rearrangement, inner, config)?),
        None => None,
    };

    let mut j = JsonBuf::new();
    j.begin_obj(None);
    j.int(Some("schema"), SCHEMA_VERSION);
    input_block(&mut j, source, inner, outer, config);

    j.begin_obj(Some("norms"));
    j.float(Some("input_lorentz_norm"), loaded.input_norm);
    j.float(Some("scale_applied"), loaded.scale);
    j.float(Some("lorentz_norm"), lorentz);
    j.float(Some("marcinkiewicz_norm"), marcinkiewicz);
    j.end_obj();

    j.begin_obj(Some("verdict"));
    j.string(Some("status"), status_str(verdict.status));
    j.string(Some("rule"), verdict.rule.as_str());
    j.end_obj();

    match (&verdict.witness, &eta) {
        (Some(w), Some(eta)) => witness_block(&mut j, "witness", w, eta),
        _ => j.null(Some("witness")),
    }

    j.begin_obj(Some("critical_sets"));
    scan_block(&mut j, "e1", &verdict.report.e1);
    scan_block(&mut j, "e2", &verdict.report.e2);
    j.begin_arr(Some("collinearity"));
    for row in &verdict.report.collinearity {
        j.begin_arr(None);
        for &b in row {
            j.boolean(None, b);
        }
        j.end_arr();
    }
    j.end_arr();
    j.boolean(Some("exists_t0"), verdict.report.exists_t0);
    j.end_obj();

    gamma_block(&mut j, "gamma_scan", &verdict.report.gamma);

    j.begin_obj(Some("stats"));
    j.int(Some("e1_cardinality"), verdict.report.e1.cardinality() as u64);
    j.int(Some("e2_cardinality"), verdict.report.e2.cardinality() as u64);
    j.int(
        Some("gamma_rows_attaining"),
        verdict
            .report
            .gamma
            .rows
            .iter()
            .filter(|r| r.attains_zero)
            .count() as u64,
    );
    j.boolean(Some("witness_found"), verdict.witness.is_some());
    j.end_obj();

    j.begin_arr(Some("diagnostics"));
    for d in &verdict.diagnostics {
        j.string(None, d);
    }
    j.end_arr();

    j.float_array(Some("mu"), loaded.mu.values());
    j.float_array(Some("mu_star"), rearrangement.mu_star());
    j.begin_arr(Some("omega"));
    for &i in rearrangement.omega() {
        j.int(None, i as u64);
    }
    j.end_arr();
    j.end_obj();

    let witness_note = match &verdict.witness {
        Some(w) => format!(
            " (witness: theta_index {}, halvings {})",
            w.theta_index, w.halvings
        ),
        None => String::new(),
    };
    let summary = format!(
        "verdict: {} via {}{} in {:.2?}",
        status_str(verdict.status),
        verdict.rule.as_str(),
        witness_note,
        started.elapsed()
    );
    Ok(CommandOutput {
        json: j.finish(),
        summary,
    })
}

/// Runs the perturbation search directly against one inner product and
/// renders the outcome, including the full θ profile.
pub fn run_witness(
    source: &str,
    csv: &[u8],
    inner: &[BlaschkePoint],
    config: &AnalysisConfig,
) -> Result<CommandOutput> {
    if inner.is_empty() {
        return Err(Error::precondition(
            "the witness search perturbs an inner divisor; pass at least one --inner point",
        ));
    }
    let started = Instant::now();
    let loaded = load_modulus(csv, config)?;
    let rearrangement = decreasing_rearrangement(&loaded.mu)?;
    let inner_trace = blaschke_product(inner, loaded.mu.grid())?;
    let outer_trace = outer_from_modulus(&loaded.mu, 0.0, config.modulus_floor)?;
    let outcome = witness_search(&loaded.mu, &inner_trace, &outer_trace, &loaded.gauge, config)?;
    let eta = match &outcome.witness {
        Some(w) => Some(eta_profiles(w, &loaded.mu, &rearrangement, inner, config)?),
        None => None,
    };

    let mut j = JsonBuf::new();
    j.begin_obj(None);
    j.int(Some("schema"), SCHEMA_VERSION);
    input_block(&mut j, source, inner, true, config);

    match (&outcome.witness, &eta) {
        (Some(w), Some(eta)) => witness_block(&mut j, "witness", w, eta),
        _ => j.null(Some("witness")),
    }

    j.begin_arr(Some("theta_profile"));
    for probe in &outcome.theta_profile {
        j.begin_obj(None);
        j.int(Some("theta_index"), probe.theta_index as u64);
        j.float(Some("theta"), probe.theta);
        let (label, halvings) = match probe.outcome {
            ThetaOutcome::Found { halvings } => ("found", Some(halvings)),
            ThetaOutcome::GammaRowAttainsZero => ("gamma-row-attains-zero", None),
            ThetaOutcome::Exhausted => ("exhausted", None),
        };
        j.string(Some("outcome"), label);
        match halvings {
            Some(h) => j.int(Some("halvings"), h as u64),
            None => j.null(Some("halvings")),
        }
        j.end_obj();
    }
    j.end_arr();

    j.begin_obj(Some("stats"));
    j.int(Some("theta_steps"), outcome.stats.theta_steps as u64);
    j.int(Some("theta_admitted"), outcome.stats.theta_admitted as u64);
    j.int(Some("theta_gated"), outcome.stats.theta_gated as u64);
    j.int(
        Some("candidates_evaluated"),
        outcome.stats.candidates_evaluated as u64,
    );
    j.end_obj();
    j.end_obj();

    let summary = match &outcome.witness {
        Some(w) => format!(
            "witness: found at theta_index {} after {} halvings in {:.2?}",
            w.theta_index,
            w.halvings,
            started.elapsed()
        ),
        None => format!(
            "witness: none ({} admitted, {} gated, {} candidates) in {:.2?}",
            outcome.stats.theta_admitted,
            outcome.stats.theta_gated,
            outcome.stats.candidates_evaluated,
            started.elapsed()
        ),
    };
    Ok(CommandOutput {
        json: j.finish(),
        summary,
    })
}

/// Builds a named fixture and renders its CSV plus a small manifest.
pub fn fixture_files(id: FixtureId, config: &AnalysisConfig) -> Result<(String, String)> {
    config.validate()?;
    let grid = make_grid(config.n_samples)?;
    let gauge = make_power_gauge(config.gauge_p, grid)?;
    let mu = extremum_core::build_fixture(id, &gauge)?;
    let norm = lorentz_norm(&mu, &gauge)?;

    let mut csv = String::new();
    extremum_core::write_modulus_csv(&mut csv, &mu);

    let mut j = JsonBuf::new();
    j.begin_obj(None);
    j.int(Some("schema"), SCHEMA_VERSION);
    j.string(Some("id"), id.as_str());
    j.string(Some("csv"), &format!("{}.csv", id.as_str()));
    j.int(Some("n_samples"), config.n_samples as u64);
    j.float(Some("gauge_p"), config.gauge_p);
    j.float(Some("lorentz_norm"), norm);
    j.float_array(Some("flat_points"), &id.flat_points());
    j.end_obj();
    Ok((csv, j.finish()))
}
