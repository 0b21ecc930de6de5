use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr as _;
use std::{env, fs, io, process};

use clap::{Args, Parser, Subcommand};
use extremum_cli::{
    exit_code, fixture_files, parse_complex, render_plot, run_analysis, run_witness,
};
use extremum_core::{AnalysisConfig, BlaschkePoint, Error, FixtureId, Result};
use num_complex::Complex64;

/// Decides and certifies extreme points of the unit ball of a Hardy–Lorentz
/// space from uniformly sampled boundary modulus data.
#[derive(Parser)]
#[command(name = "extremum", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Analysis parameters; every flag mirrors a configuration field and keeps
/// its documented default.
#[derive(Args, Clone)]
struct ConfigArgs {
    /// Grid resolution N (power of two, at least 16).
    #[arg(long, default_value_t = AnalysisConfig::default().n_samples)]
    n_samples: usize,
    /// Power-gauge exponent p > 1; the gauge is phi(t) = (t/2pi)^(1/p).
    #[arg(long, default_value_t = AnalysisConfig::default().gauge_p)]
    gauge_p: f64,
    /// Smallness threshold for the windowed liminf ratios.
    #[arg(long, default_value_t = AnalysisConfig::default().eps_crit)]
    eps_crit: f64,
    /// Decay factor required across the last three window levels.
    #[arg(long, default_value_t = AnalysisConfig::default().rho)]
    rho: f64,
    /// Angular tolerance (radians) for mod-pi collinearity of flat points.
    #[arg(long, default_value_t = AnalysisConfig::default().tol_ang)]
    tol_ang: f64,
    /// Number of theta candidates on the uniform [0,2pi) grid.
    #[arg(long, default_value_t = AnalysisConfig::default().theta_steps)]
    theta_steps: usize,
    /// Number of gamma rows on the uniform [0,pi) grid.
    #[arg(long, default_value_t = AnalysisConfig::default().gamma_steps)]
    gamma_steps: usize,
    /// Initial perturbation amplitude beta0 for the witness search.
    #[arg(long, default_value_t = AnalysisConfig::default().beta0)]
    beta0: f64,
    /// Maximum number of times beta is halved per theta candidate.
    #[arg(long, default_value_t = AnalysisConfig::default().max_halvings)]
    max_halvings: u32,
    /// Acceptance tolerance for the witness norms |norm(f +/- g) - 1|.
    #[arg(long, default_value_t = AnalysisConfig::default().norm_tol)]
    norm_tol: f64,
    /// Acceptance tolerance for the negative-index Fourier residual of g.
    #[arg(long, default_value_t = AnalysisConfig::default().fourier_tol)]
    fourier_tol: f64,
    /// Minimum admissible modulus value for the outer construction.
    #[arg(long, default_value_t = AnalysisConfig::default().modulus_floor)]
    modulus_floor: f64,
}

impl ConfigArgs {
    fn to_config(&self) -> AnalysisConfig {
        AnalysisConfig {
            n_samples: self.n_samples,
            gauge_p: self.gauge_p,
            eps_crit: self.eps_crit,
            rho: self.rho,
            tol_ang: self.tol_ang,
            theta_steps: self.theta_steps,
            gamma_steps: self.gamma_steps,
            beta0: self.beta0,
            max_halvings: self.max_halvings,
            norm_tol: self.norm_tol,
            fourier_tol: self.fourier_tol,
            modulus_floor: self.modulus_floor,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a named fixture modulus as CSV plus a JSON manifest.
    Fixtures {
        /// Fixture id: constant, exponential, quad-flat-1,
        /// quad-flat-2-collinear, quad-flat-2-generic, quad-flat-4, or
        /// cubic-flat-1.
        #[arg(long, value_parser = FixtureId::from_str)]
        id: FixtureId,
        /// Directory receiving <id>.csv and <id>-manifest.json.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run the full decision procedure on a modulus CSV and emit a report.
    Analyze {
        /// Path to the modulus CSV; '-' reads stdin.
        mu_csv: String,
        /// Blaschke points of the inner factor, comma separated
        /// (e.g. --inner 0,0.3+0.4i). Omit for a purely outer function.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true,
              value_parser = parse_complex)]
        inner: Vec<Complex64>,
        /// Declare that f carries no outer factor (modulus data of an inner
        /// function).
        #[arg(long)]
        no_outer: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Search for a perturbation certificate against one inner divisor.
    Witness {
        /// Path to the modulus CSV; '-' reads stdin.
        mu_csv: String,
        /// Blaschke points of the divisor to perturb (at least one).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true,
              value_parser = parse_complex)]
        inner: Vec<Complex64>,
        /// Write the outcome here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Re-render plottable series and a static SVG from an analysis report.
    Plot {
        /// Path to a report JSON produced by analyze; '-' reads stdin.
        report_json: String,
        /// Directory receiving the series CSVs and plot.svg.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn read_input(path: &str) -> Result<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Error::data(format!("failed to read stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| Error::data(format!("failed to read {path}: {e}")))
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::data(format!("failed to write {}: {e}", path.display())))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)
        .map_err(|e| Error::data(format!("failed to create {}: {e}", dir.display())))
}

fn emit(out: Option<&Path>, json: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, json),
        None => io::stdout()
            .write_all(json.as_bytes())
            .map_err(|e| Error::data(format!("failed to write stdout: {e}"))),
    }
}

fn blaschke_points(raw: &[Complex64]) -> Result<Vec<BlaschkePoint>> {
    raw.iter().map(|&a| BlaschkePoint::new(a)).collect()
}

fn init_threads() -> std::result::Result<(), String> {
    let raw = match env::var("EXTREMUM_THREADS") {
        Err(env::VarError::NotPresent) => return Ok(()),
        Err(e) => return Err(format!("EXTREMUM_THREADS is not valid UTF-8: {e}")),
        Ok(raw) => raw,
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("EXTREMUM_THREADS must be a positive integer, got {raw:?}"))?;
    if threads == 0 {
        return Err("EXTREMUM_THREADS must be at least 1".to_string());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("failed to configure the thread pool: {e}"))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fixtures {
            id,
            out_dir,
            config,
        } => {
            let config = config.to_config();
            let (csv, manifest) = fixture_files(id, &config)?;
            ensure_dir(&out_dir)?;
            let csv_path = out_dir.join(format!("{}.csv", id.as_str()));
            let manifest_path = out_dir.join(format!("{}-manifest.json", id.as_str()));
            write_file(&csv_path, &csv)?;
            write_file(&manifest_path, &manifest)?;
            eprintln!(
                "wrote {} and {}",
                csv_path.display(),
                manifest_path.display()
            );
            Ok(())
        }
        Command::Analyze {
            mu_csv,
            inner,
            no_outer,
            out,
            config,
        } => {
            let config = config.to_config();
            let points = blaschke_points(&inner)?;
            let csv = read_input(&mu_csv)?;
            let output = run_analysis(&mu_csv, &csv, &points, !no_outer, &config)?;
            emit(out.as_deref(), &output.json)?;
            eprintln!("{}", output.summary);
            Ok(())
        }
        Command::Witness {
            mu_csv,
            inner,
            out,
            config,
        } => {
            let config = config.to_config();
            let points = blaschke_points(&inner)?;
            let csv = read_input(&mu_csv)?;
            let output = run_witness(&mu_csv, &csv, &points, &config)?;
            emit(out.as_deref(), &output.json)?;
            eprintln!("{}", output.summary);
            Ok(())
        }
        Command::Plot {
            report_json,
            out_dir,
        } => {
            let bytes = read_input(&report_json)?;
            let files = render_plot(&bytes)?;
            ensure_dir(&out_dir)?;
            for (name, contents) in &files {
                write_file(&out_dir.join(name), contents)?;
            }
            eprintln!("wrote {} files to {}", files.len(), out_dir.display());
            Ok(())
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    if let Err(message) = init_threads() {
        eprintln!("error: {message}");
        process::exit(1);
    }
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        process::exit(exit_code(&e));
    }
}
