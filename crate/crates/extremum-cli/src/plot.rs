//! Series extraction and a static SVG rendering for analysis reports.
//!
//! The plot subcommand re-reads a report document (it never recomputes), so
//! everything here is a pure function of the JSON input and the output is
//! deterministic byte for byte.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use extremum_core::{format_float, Error, Result};
use serde_json::Value;

const SVG_WIDTH: f64 = 960.0;
const PANEL_X: f64 = 60.0;
const PANEL_W: f64 = 860.0;
const TOP_Y: f64 = 40.0;
const TOP_H: f64 = 330.0;
const BOT_Y: f64 = 430.0;
const BOT_H: f64 = 160.0;
const SVG_HEIGHT: f64 = 640.0;

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::data(format!("report is missing field {key:?}")))
}

fn float_array(v: &Value, key: &str) -> Result<Vec<f64>> {
    let arr = field(v, key)?
        .as_array()
        .ok_or_else(|| Error::data(format!("report field {key:?} is not an array")))?;
    arr.iter()
        .map(|x| {
            x.as_f64()
                .ok_or_else(|| Error::data(format!("report field {key:?} holds a non-number")))
        })
        .collect()
}

/// Profile matrix of one critical-set scan: (levels, per-level rows).
fn profile_matrix(scan: &Value, name: &str) -> Result<(Vec<u64>, Vec<Vec<f64>>)> {
    let levels = field(scan, "levels")?
        .as_array()
        .ok_or_else(|| Error::data(format!("{name}.levels is not an array")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .ok_or_else(|| Error::data(format!("{name}.levels holds a non-integer")))
        })
        .collect::<Result<Vec<u64>>>()?;
    let profiles = field(scan, "profiles")?
        .as_array()
        .ok_or_else(|| Error::data(format!("{name}.profiles is not an array")))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::data(format!("{name}.profiles holds a non-array row")))?
                .iter()
                .map(|x| {
                    x.as_f64().ok_or_else(|| {
                        Error::data(format!("{name}.profiles holds a non-number"))
                    })
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    if levels.len() != profiles.len() {
        return Err(Error::data(format!(
            "{name}: {} levels but {} profile rows",
            levels.len(),
            profiles.len()
        )));
    }
    Ok((levels, profiles))
}

struct GammaRowView {
    min_ratio: f64,
    attains: bool,
}

struct ReportView {
    mu: Vec<f64>,
    mu_star: Vec<f64>,
    e1: (Vec<u64>, Vec<Vec<f64>>),
    e2: (Vec<u64>, Vec<Vec<f64>>),
    e1_representatives: Vec<u64>,
    gamma: Vec<GammaRowView>,
    eta: Option<(Vec<f64>, Vec<f64>)>,
}

fn parse_report(report_json: &[u8]) -> Result<ReportView> {
    let doc: Value = serde_json::from_slice(report_json)
        .map_err(|e| Error::data(format!("malformed report JSON: {e}")))?;
    match field(&doc, "schema")?.as_u64() {
        Some(1) => {}
        other => {
            return Err(Error::data(format!(
                "unsupported report schema {other:?}; this build reads schema 1"
            )))
        }
    }
    let mu = float_array(&doc, "mu")?;
    let mu_star = float_array(&doc, "mu_star")?;
    if mu.is_empty() || mu.len() != mu_star.len() {
        return Err(Error::data(format!(
            "report holds {} mu values but {} mu_star values",
            mu.len(),
            mu_star.len()
        )));
    }
    let critical = field(&doc, "critical_sets")?;
    let e1_scan = field(critical, "e1")?;
    let e1 = profile_matrix(e1_scan, "e1")?;
    let e2 = profile_matrix(field(critical, "e2")?, "e2")?;
    let e1_representatives = field(e1_scan, "components")?
        .as_array()
        .ok_or_else(|| Error::data("e1.components is not an array"))?
        .iter()
        .map(|c| {
            field(c, "representative")?
                .as_u64()
                .ok_or_else(|| Error::data("e1 component representative is not an integer"))
        })
        .collect::<Result<Vec<u64>>>()?;
    let gamma = field(&doc, "gamma_scan")?
        .as_array()
        .ok_or_else(|| Error::data("gamma_scan is not an array"))?
        .iter()
        .map(|row| {
            // min_ratio serializes as null when no ratio was finite.
            let min_ratio = field(row, "min_ratio")?.as_f64().unwrap_or(f64::INFINITY);
            let attains = field(row, "attains_zero")?
                .as_bool()
                .ok_or_else(|| Error::data("gamma_scan attains_zero is not a boolean"))?;
            Ok(GammaRowView { min_ratio, attains })
        })
        .collect::<Result<Vec<GammaRowView>>>()?;
    let eta = match field(&doc, "witness")? {
        Value::Null => None,
        w => Some((float_array(w, "eta_plus")?, float_array(w, "eta_minus")?)),
    };
    if let Some((p, m)) = &eta {
        if p.len() != mu.len() || m.len() != mu.len() {
            return Err(Error::data("witness eta arrays disagree with mu length"));
        }
    }
    Ok(ReportView {
        mu,
        mu_star,
        e1,
        e2,
        e1_representatives,
        gamma,
        eta,
    })
}

fn mu_csv(view: &ReportView) -> String {
    let n = view.mu.len();
    let mut out = String::from("index,t,value\n");
    for (i, &v) in view.mu.iter().enumerate() {
        let t = TAU * i as f64 / n as f64;
        let _ = writeln!(out, "{i},{},{}", format_float(t), format_float(v));
    }
    out
}

fn mu_star_csv(view: &ReportView) -> String {
    let mut out = String::from("index,value\n");
    for (i, &v) in view.mu_star.iter().enumerate() {
        let _ = writeln!(out, "{i},{}", format_float(v));
    }
    out
}

/// One long-format file carrying every profile-like series in the report:
/// the windowed scan profiles m_k(t) of both critical sets and the γ rows.
fn profiles_csv(view: &ReportView) -> String {
    let mut out = String::from("series,key,index,value\n");
    for (series, (levels, rows)) in [("e1-profile", &view.e1), ("e2-profile", &view.e2)] {
        for (k, row) in levels.iter().zip(rows) {
            for (i, &v) in row.iter().enumerate() {
                let _ = writeln!(out, "{series},{k},{i},{}", format_float(v));
            }
        }
    }
    for (r, row) in view.gamma.iter().enumerate() {
        let ratio = if row.min_ratio.is_finite() {
            format_float(row.min_ratio)
        } else {
            "inf".to_string()
        };
        let _ = writeln!(out, "gamma-min-ratio,{r},0,{ratio}");
        let _ = writeln!(out, "gamma-attains,{r},0,{}", u8::from(row.attains));
    }
    out
}

fn eta_csv(eta_plus: &[f64], eta_minus: &[f64]) -> String {
    let mut out = String::from("index,eta_plus,eta_minus\n");
    for (i, (&p, &m)) in eta_plus.iter().zip(eta_minus).enumerate() {
        let _ = writeln!(out, "{i},{},{}", format_float(p), format_float(m));
    }
    out
}

fn coord(x: f64) -> String {
    format!("{x:.2}")
}

fn polyline(values: &[f64], y_of: impl Fn(f64) -> f64, style: &str) -> String {
    let n = values.len();
    let mut points = String::new();
    for (i, &v) in values.iter().enumerate() {
        let x = PANEL_X + PANEL_W * i as f64 / (n - 1).max(1) as f64;
        if i > 0 {
            points.push(' ');
        }
        points.push_str(&coord(x));
        points.push(',');
        points.push_str(&coord(y_of(v)));
    }
    format!("<polyline fill=\"none\" {style} points=\"{points}\"/>\n")
}

fn plot_svg(view: &ReportView) -> String {
    let n = view.mu.len();
    let mut y_max = 0.0f64;
    for &v in view.mu.iter().chain(&view.mu_star) {
        y_max = y_max.max(v);
    }
    if let Some((p, m)) = &view.eta {
        for &v in p.iter().chain(m) {
            y_max = y_max.max(v);
        }
    }
    if y_max <= 0.0 {
        y_max = 1.0;
    }
    y_max *= 1.05;
    let y_of = |v: f64| TOP_Y + TOP_H - TOP_H * (v / y_max).clamp(0.0, 1.0);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">"
    );
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Top panel: modulus, rearrangement, and (when present) the perturbed
    // rearranged moduli.
    let _ = writeln!(
        svg,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>",
        coord(PANEL_X),
        coord(TOP_Y),
        coord(PANEL_W),
        coord(TOP_H)
    );
    svg.push_str(&polyline(&view.mu, y_of, "stroke=\"#4878a8\" stroke-width=\"1\""));
    svg.push_str(&polyline(
        &view.mu_star,
        y_of,
        "stroke=\"#b04030\" stroke-width=\"1.5\"",
    ));
    if let Some((p, m)) = &view.eta {
        svg.push_str(&polyline(
            p,
            y_of,
            "stroke=\"#3a9a5c\" stroke-width=\"1\" stroke-dasharray=\"4 3\"",
        ));
        svg.push_str(&polyline(
            m,
            y_of,
            "stroke=\"#c08a20\" stroke-width=\"1\" stroke-dasharray=\"4 3\"",
        ));
    }
    for &rep in &view.e1_representatives {
        let x = PANEL_X + PANEL_W * rep as f64 / (n - 1).max(1) as f64;
        let _ = writeln!(
            svg,
            "<line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"#7050a0\" stroke-width=\"1\" stroke-dasharray=\"2 2\"/>",
            x = coord(x),
            y1 = coord(TOP_Y),
            y2 = coord(TOP_Y + TOP_H)
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" fill=\"#333\">mu (blue), mu* (red){}  |  E1 representatives dashed</text>",
        coord(PANEL_X),
        coord(TOP_Y - 12.0),
        if view.eta.is_some() {
            ", eta+ (green), eta- (amber)"
        } else {
            ""
        }
    );

    // Bottom panel: γ-scan minima on a clamped log scale; rows whose windowed
    // ratio attains zero are drawn red, bounded rows teal.
    let _ = writeln!(
        svg,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>",
        coord(PANEL_X),
        coord(BOT_Y),
        coord(PANEL_W),
        coord(BOT_H)
    );
    let rows = view.gamma.len().max(1);
    let bar_w = PANEL_W / rows as f64;
    for (r, row) in view.gamma.iter().enumerate() {
        let level = (row.min_ratio.max(1e-12).log10().clamp(-8.0, 1.0) + 8.0) / 9.0;
        let h = BOT_H * level;
        let x = PANEL_X + bar_w * r as f64;
        let color = if row.attains { "#c05050" } else { "#2a9d8f" };
        let _ = writeln!(
            svg,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{color}\"/>",
            coord(x),
            coord(BOT_Y + BOT_H - h),
            coord((bar_w - 0.5).max(0.5)),
            coord(h)
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\" fill=\"#333\">gamma scan min ratio (log scale; red rows attain zero)</text>",
        coord(PANEL_X),
        coord(BOT_Y - 12.0)
    );
    svg.push_str("</svg>\n");
    svg
}

/// Renders every output file of the plot subcommand from a serialized
/// analysis report: three series CSVs (plus eta.csv when the report carries a
/// witness) and a static SVG.
pub fn render_plot(report_json: &[u8]) -> Result<Vec<(String, String)>> {
    let view = parse_report(report_json)?;
    let mut files = vec![
        ("mu.csv".to_string(), mu_csv(&view)),
        ("mu_star.csv".to_string(), mu_star_csv(&view)),
        ("profiles.csv".to_string(), profiles_csv(&view)),
    ];
    if let Some((p, m)) = &view.eta {
        files.push(("eta.csv".to_string(), eta_csv(p, m)));
    }
    files.push(("plot.svg".to_string(), plot_svg(&view)));
    Ok(files)
}
