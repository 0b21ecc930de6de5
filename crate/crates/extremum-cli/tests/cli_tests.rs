//! Process-level tests of the `extremum` binary: exit-code contract, stream
//! discipline (machine output on stdout, diagnostics on stderr), byte-level
//! determinism, stdin ingestion, and the plot file layout.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::sync::OnceLock;
use std::{env, fs, process};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_extremum"));
    cmd.env_remove("EXTREMUM_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary spawns")
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(input)
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary exits")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process not killed by signal")
}

/// Shared artifacts built once per test process: fixture CSVs and two
/// analysis reports (one with a witness, one without).
struct Artifacts {
    dir: PathBuf,
    exponential_csv: PathBuf,
    constant_csv: PathBuf,
    witness_report: PathBuf,
    extreme_report: PathBuf,
}

static ARTIFACTS: OnceLock<Artifacts> = OnceLock::new();

fn artifacts() -> &'static Artifacts {
    ARTIFACTS.get_or_init(|| {
        let dir = env::temp_dir().join(format!("extremum-cli-tests-{}", process::id()));
        fs::create_dir_all(&dir).expect("create scratch dir");
        let dir_s = dir.to_str().unwrap().to_string();

        for id in ["exponential", "constant", "quad-flat-2-generic"] {
            let out = run(&["fixtures", "--id", id, "--out-dir", &dir_s]);
            assert_eq!(code(&out), 0, "fixtures {id} failed: {out:?}");
        }
        let exponential_csv = dir.join("exponential.csv");
        let constant_csv = dir.join("constant.csv");
        let witness_report = dir.join("exponential-report.json");
        let extreme_report = dir.join("quad-flat-2-generic-report.json");

        let out = run(&[
            "analyze",
            exponential_csv.to_str().unwrap(),
            "--inner",
            "0",
            "--out",
            witness_report.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "analyze exponential failed: {out:?}");
        assert!(
            out.stdout.is_empty(),
            "stdout must stay silent when --out is given"
        );

        let out = run(&[
            "analyze",
            dir.join("quad-flat-2-generic.csv").to_str().unwrap(),
            "--inner",
            "0",
            "--out",
            extreme_report.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "analyze quad-flat-2-generic failed: {out:?}");

        Artifacts {
            dir,
            exponential_csv,
            constant_csv,
            witness_report,
            extreme_report,
        }
    })
}

fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&fs::read(path).expect("report readable")).expect("report parses")
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&run(&["frobnicate"])), 1, "unknown subcommand");
    assert_eq!(
        code(&run(&["fixtures", "--id", "no-such-fixture"])),
        1,
        "unknown fixture id is a usage error"
    );
    let a = artifacts();
    let csv = a.exponential_csv.to_str().unwrap();
    assert_eq!(
        code(&run(&["analyze", csv, "--inner", "0.3+bogus"])),
        1,
        "malformed complex literal"
    );
    let out = bin()
        .args(["fixtures", "--id", "constant", "--out-dir", a.dir.to_str().unwrap()])
        .env("EXTREMUM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1, "invalid EXTREMUM_THREADS");
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn data_errors_exit_2() {
    let a = artifacts();
    assert_eq!(
        code(&run(&["analyze", "/nonexistent/mu.csv"])),
        2,
        "unreadable input file"
    );
    let out = run_with_stdin(&["analyze", "-"], b"t,value\n0,abc\n");
    assert_eq!(code(&out), 2, "non-numeric CSV row");
    let out = run_with_stdin(&["analyze", "-"], b"");
    assert_eq!(code(&out), 2, "empty CSV input");
    let out = run_with_stdin(&["analyze", "-"], b"t,value\n0,-1\n");
    assert_eq!(code(&out), 2, "negative modulus");

    let empty = a.dir.join("empty-report.json");
    fs::write(&empty, "").unwrap();
    assert_eq!(
        code(&run(&["plot", empty.to_str().unwrap()])),
        2,
        "empty report file"
    );
    // A witness document is not an analysis report: required series missing.
    let stub = a.dir.join("stub-report.json");
    fs::write(&stub, "{\"schema\":1}").unwrap();
    assert_eq!(
        code(&run(&["plot", stub.to_str().unwrap()])),
        2,
        "report without series"
    );
}

#[test]
fn precondition_errors_exit_3() {
    let a = artifacts();
    let csv = a.exponential_csv.to_str().unwrap();
    assert_eq!(
        code(&run(&["analyze", csv, "--gauge-p", "1"])),
        3,
        "gauge p=1 is not strictly concave"
    );
    assert_eq!(
        code(&run(&["analyze", csv, "--inner", "1.5"])),
        3,
        "Blaschke point outside the disc"
    );
    assert_eq!(
        code(&run(&["analyze", csv, "--n-samples", "1000"])),
        3,
        "grid size must be a power of two"
    );
    assert_eq!(
        code(&run(&["witness", csv])),
        3,
        "witness search needs an inner divisor"
    );
}

#[test]
fn fixture_manifest_and_roundtrip_classification() {
    let a = artifacts();
    let manifest = read_json(&a.dir.join("exponential-manifest.json"));
    assert_eq!(manifest["schema"], 1);
    assert_eq!(manifest["id"], "exponential");
    assert_eq!(manifest["csv"], "exponential.csv");
    assert_eq!(manifest["n_samples"], 4096);
    assert!((manifest["lorentz_norm"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(manifest["flat_points"].as_array().unwrap().len(), 0);

    // Round trip: the analyzer ingests its own fixture without drift and
    // reproduces the reference classification.
    let report = read_json(&a.witness_report);
    assert_eq!(report["schema"], 1);
    assert!((report["norms"]["input_lorentz_norm"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(report["verdict"]["status"], "not-extreme");
    assert_eq!(report["verdict"]["rule"], "corollary-6.9-ii");
    assert_eq!(report["witness"]["theta_index"], 0);
    assert_eq!(report["witness"]["halvings"], 7);
    assert_eq!(report["stats"]["witness_found"], true);
    assert_eq!(report["input"]["inner"][0]["re"].as_f64().unwrap(), 0.0);

    let extreme = read_json(&a.extreme_report);
    assert_eq!(extreme["verdict"]["status"], "extreme");
    assert_eq!(extreme["verdict"]["rule"], "corollary-6.9-iii-generic");
    assert!(extreme["witness"].is_null());
}

#[test]
fn analyze_stdout_is_byte_deterministic() {
    let a = artifacts();
    let csv = a.exponential_csv.to_str().unwrap();
    let first = run(&["analyze", csv, "--inner", "0"]);
    let second = run(&["analyze", csv, "--inner", "0"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "identical runs must match byte for byte");
    assert!(!first.stdout.is_empty());

    let single = bin()
        .args(["analyze", csv, "--inner", "0"])
        .env("EXTREMUM_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(
        first.stdout, single.stdout,
        "thread count must not affect the report"
    );
}

#[test]
fn stdin_input_matches_file_input() {
    let a = artifacts();
    let csv_bytes = fs::read(&a.exponential_csv).unwrap();
    let from_stdin = run_with_stdin(&["analyze", "-", "--inner", "0"], &csv_bytes);
    assert_eq!(code(&from_stdin), 0);
    let from_file = run(&["analyze", a.exponential_csv.to_str().unwrap(), "--inner", "0"]);

    let mut a_doc: Value = serde_json::from_slice(&from_stdin.stdout).unwrap();
    let mut b_doc: Value = serde_json::from_slice(&from_file.stdout).unwrap();
    assert_eq!(a_doc["input"]["source"], "-");
    a_doc["input"]["source"] = Value::Null;
    b_doc["input"]["source"] = Value::Null;
    assert_eq!(a_doc, b_doc, "stdin and file ingestion must agree modulo the source echo");
}

#[test]
fn witness_none_on_constant_fixture() {
    let a = artifacts();
    let out = run(&["witness", a.constant_csv.to_str().unwrap(), "--inner", "0.5"]);
    assert_eq!(code(&out), 0, "a completed search that finds nothing is not an error");
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["witness"].is_null());
    let profile = doc["theta_profile"].as_array().unwrap();
    assert_eq!(profile.len(), 256, "full theta profile reported");
    assert!(profile
        .iter()
        .all(|p| p["outcome"] == "gamma-row-attains-zero"));
    assert_eq!(doc["stats"]["theta_gated"], 256);
    assert_eq!(doc["stats"]["candidates_evaluated"], 0);
}

#[test]
fn plot_emits_series_and_svg() {
    let a = artifacts();

    // The out-dir need not exist beforehand; plot creates it.
    let with_witness = a.dir.join("plot-with-witness").join("nested");
    let out = run(&[
        "plot",
        a.witness_report.to_str().unwrap(),
        "--out-dir",
        with_witness.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    for name in ["mu.csv", "mu_star.csv", "profiles.csv", "eta.csv", "plot.svg"] {
        assert!(with_witness.join(name).is_file(), "missing {name}");
    }

    let without_witness = a.dir.join("plot-extreme");
    fs::create_dir_all(&without_witness).unwrap();
    let out = run(&[
        "plot",
        a.extreme_report.to_str().unwrap(),
        "--out-dir",
        without_witness.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    for name in ["mu.csv", "mu_star.csv", "profiles.csv", "plot.svg"] {
        assert!(without_witness.join(name).is_file(), "missing {name}");
    }
    assert!(
        !without_witness.join("eta.csv").exists(),
        "no eta series without a witness"
    );

    // The renderer is a pure function of the report.
    let again = a.dir.join("plot-again");
    fs::create_dir_all(&again).unwrap();
    let out = run(&[
        "plot",
        a.witness_report.to_str().unwrap(),
        "--out-dir",
        again.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        fs::read(with_witness.join("plot.svg")).unwrap(),
        fs::read(again.join("plot.svg")).unwrap(),
        "plot output must be deterministic"
    );

    let svg = fs::read_to_string(with_witness.join("plot.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("polyline"));
    let eta = fs::read_to_string(with_witness.join("eta.csv")).unwrap();
    assert!(eta.starts_with("index,eta_plus,eta_minus\n"));
    assert_eq!(eta.lines().count(), 4097, "header plus one row per sample");
}
