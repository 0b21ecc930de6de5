use extremum_core::*;
use num_complex::Complex64;

fn main() {
    let config = AnalysisConfig::default();
    let grid = make_grid(config.n_samples).unwrap();
    let gauge = make_power_gauge(config.gauge_p, grid).unwrap();

    // End-to-end: fixture -> CSV on disk -> read back -> decide -> verdict.
    let dir = std::env::temp_dir().join("extremum-drive");
    std::fs::create_dir_all(&dir).unwrap();
    for (id, inner) in [
        (FixtureId::Exponential, vec![BlaschkePoint::origin()]),
        (FixtureId::QuadFlat2Generic, vec![BlaschkePoint::origin()]),
        (
            FixtureId::QuadFlat2Collinear,
            vec![
                BlaschkePoint::origin(),
                BlaschkePoint::new(Complex64::new(0.5, 0.0)).unwrap(),
            ],
        ),
    ] {
        let mu = build_fixture(id, &gauge).unwrap();
        let path = dir.join(format!("{id}.csv"));
        let mut text = String::new();
        write_modulus_csv(&mut text, &mu);
        std::fs::write(&path, &text).unwrap();
        let disk = std::fs::read(&path).unwrap();
        let mu_back = read_modulus_csv(disk.as_slice(), grid).unwrap();
        let spec = FunctionSpec {
            mu: mu_back,
            inner: inner.clone(),
            outer: true,
        };
        let start = std::time::Instant::now();
        let verdict = decide_extreme(&spec, &gauge, &config).unwrap();
        println!(
            "{id}: {:?} via {} (witness: {}) in {:.2?}",
            verdict.status,
            verdict.rule.as_str(),
            verdict
                .witness
                .as_ref()
                .map(|w| format!("theta_index {}, halvings {}", w.theta_index, w.halvings))
                .unwrap_or_else(|| "none".into()),
            start.elapsed()
        );
    }
}
