//! Command-line front end for the extreme-point decision procedure.
//!
//! The binary (`extremum`) exposes four subcommands — `fixtures`, `analyze`,
//! `witness`, `plot` — over the library pipeline. This crate keeps all the
//! document rendering in library form so the logic is testable without
//! spawning processes:
//!
//! - [`report`] runs the pipeline and serializes schema-versioned JSON
//!   documents with byte-stable formatting,
//! - [`plot`] re-reads a report and extracts plottable series plus a static
//!   SVG.
//!
//! Exit-code contract: clap usage errors exit 1, bad input data exits 2, and
//! violated mathematical preconditions exit 3. Stdout carries machine output
//! only; human diagnostics (including timings) go to stderr.

pub mod plot;
pub mod report;

pub use plot::render_plot;
pub use report::{fixture_files, run_analysis, run_witness, CommandOutput, JsonBuf};

use extremum_core::Error;
use num_complex::Complex64;

/// Maps pipeline errors to the process exit code (data 2, precondition 3).
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Data(_) => 2,
        Error::Precondition(_) => 3,
    }
}

/// Parses one complex literal in the forms `0.5`, `0.3+0.4i`, `-0.2i`, `i`,
/// `-i`, or `1e-3i`. Returns a plain message suitable for a usage error.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".to_string());
    }
    let Some(body) = t.strip_suffix(['i', 'I']) else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("invalid complex literal {s:?} (examples: 0.5, 0.3+0.4i, -0.2i)"));
    };
    // Split the body at the sign that separates real and imaginary parts: the
    // last '+'/'-' that is neither leading nor an exponent sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str
            .parse::<f64>()
            .map_err(|_| format!("invalid real part in {s:?}"))?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v
            .parse::<f64>()
            .map_err(|_| format!("invalid imaginary part in {s:?}"))?,
    };
    Ok(Complex64::new(re, im))
}
