use std::f64::consts::{PI, TAU};

use extremum_core::*;
use num_complex::Complex64;

fn default_setup() -> (AnalysisConfig, Gauge) {
    let config = AnalysisConfig::default();
    let grid = make_grid(config.n_samples).unwrap();
    let gauge = make_power_gauge(config.gauge_p, grid).unwrap();
    (config, gauge)
}

fn nearest_index(t: f64, n: usize) -> usize {
    ((t / TAU * n as f64).round() as usize) % n
}

fn rearranged_fixture(id: FixtureId, gauge: &Gauge) -> RearrangementResult {
    let mu = build_fixture(id, gauge).unwrap();
    decreasing_rearrangement(&mu).unwrap()
}

#[test]
fn angular_factor_examples() {
    let xi = [0.4, 0.4 + PI, 1.9, 2.6];
    assert_eq!(xi1(2, 2, &xi), 0.0);
    assert!((xi1(0, 1, &xi) - 1.0).abs() < 1e-15, "gap π maps to 1");
    assert!((xi1(2, 3, &xi) - (0.35f64).sin().abs()).abs() < 1e-15);

    let mid = (xi[2] + xi[3]) / 2.0;
    assert!(xi2(2, 3, mid, &xi) < 1e-15, "midpoint γ annihilates ξ²");
    for gamma in [0.0, 0.3, 2.0] {
        assert!((xi2(0, 3, gamma, &xi) - xi2(0, 3, gamma + PI, &xi)).abs() < 1e-12);
    }
    assert!((xi2(1, 1, xi[1] - PI / 2.0, &xi) - 1.0).abs() < 1e-15);
}

#[test]
fn first_factor_matches_trace_chords() {
    let grid = make_grid(512).unwrap();
    let mut state = 11u64;
    let mut rng = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..10 {
        let a = Complex64::from_polar(rng() * 0.9, rng() * TAU);
        let tr = blaschke_boundary(&BlaschkePoint::new(a).unwrap(), grid);
        // Identity rearrangement: ξ_ω is the branch itself.
        for _ in 0..50 {
            let u = (rng() * 512.0) as usize % 512;
            let v = (rng() * 512.0) as usize % 512;
            let direct = xi1(u, v, tr.arg_branch());
            assert!((direct - sine_half_gap(u, v, &tr)).abs() < 1e-15);
        }
    }
}

#[test]
fn first_order_census_on_fixtures() {
    let (config, gauge) = default_setup();
    let n = config.n_samples;

    let r = rearranged_fixture(FixtureId::Exponential, &gauge);
    let e1 = critical_set_e1(r.mu_star(), r.omega(), &config).unwrap();
    assert_eq!(e1.cardinality(), 0, "strict decay has no flat points");
    assert!(e1.flagged.iter().all(|f| !f));

    let r = rearranged_fixture(FixtureId::QuadFlat1, &gauge);
    let e1 = critical_set_e1(r.mu_star(), r.omega(), &config).unwrap();
    assert_eq!(e1.cardinality(), 1);
    let t0 = nearest_index(fixtures::FLAT_T0, n);
    assert!(e1.components[0].members.contains(&t0));
    assert_eq!(e1.components[0].intervals.len(), 1, "one contiguous run");

    let r = rearranged_fixture(FixtureId::QuadFlat2Collinear, &gauge);
    let e1 = critical_set_e1(r.mu_star(), r.omega(), &config).unwrap();
    assert_eq!(e1.cardinality(), 2);
    let reps = e1.representatives();
    let expected = [t0, nearest_index(fixtures::FLAT_T0 + PI, n)];
    for (rep, want) in reps.iter().zip(expected) {
        assert!(
            rep.abs_diff(want) <= 2,
            "representative {rep} should sit at the flat point {want}"
        );
    }

    let r = rearranged_fixture(FixtureId::QuadFlat4, &gauge);
    let e1 = critical_set_e1(r.mu_star(), r.omega(), &config).unwrap();
    assert_eq!(e1.cardinality(), 4);
    for (rep, root) in e1.representatives().iter().zip(fixtures::QUAD_FLAT_4_ROOTS) {
        let want = nearest_index(root, n);
        assert!(rep.abs_diff(want) <= 2, "representative {rep} vs root index {want}");
    }

    let r = rearranged_fixture(FixtureId::Constant, &gauge);
    let e1 = critical_set_e1(r.mu_star(), r.omega(), &config).unwrap();
    assert!(e1.flagged.iter().all(|&f| f), "constant modulus is flat everywhere");
    assert_eq!(e1.cardinality(), 1, "wrap-around merge yields one component");
    assert_eq!(e1.components[0].members.len(), n);
}

#[test]
fn second_order_census_on_fixtures() {
    let (config, gauge) = default_setup();
    let n = config.n_samples;

    for id in [FixtureId::Exponential, FixtureId::QuadFlat1, FixtureId::QuadFlat4] {
        let r = rearranged_fixture(id, &gauge);
        let e2 = critical_set_e2(r.mu_star(), r.omega(), &config).unwrap();
        assert_eq!(
            e2.cardinality(),
            0,
            "{id}: quadratic flatness is below the second-order threshold"
        );
    }

    let r = rearranged_fixture(FixtureId::CubicFlat1, &gauge);
    let e2 = critical_set_e2(r.mu_star(), r.omega(), &config).unwrap();
    assert_eq!(e2.cardinality(), 1, "cubic flatness survives the extra factor");
    let want = nearest_index(fixtures::CUBIC_FLAT_T0, n);
    assert!(e2.representatives()[0].abs_diff(want) <= 2);
}

#[test]
fn second_order_set_sits_inside_first_order_set() {
    let (config, gauge) = default_setup();
    for id in FixtureId::ALL {
        let r = rearranged_fixture(id, &gauge);
        let e1 = critical_set_e1(r.mu_star(), r.omega(), &config).unwrap();
        let e2 = critical_set_e2(r.mu_star(), r.omega(), &config).unwrap();
        for comp in &e2.components {
            assert!(
                e1.components
                    .iter()
                    .any(|c| c.members.contains(&comp.representative)),
                "{id}: E2 component at {} outside every E1 component",
                comp.representative
            );
        }
    }
}

#[test]
fn linear_decay_has_empty_census() {
    let config = AnalysisConfig::default();
    let n = config.n_samples;
    let mu_star: Vec<f64> = (0..n).map(|i| 10.0 - TAU * i as f64 / n as f64).collect();
    let omega: Vec<usize> = (0..n).collect();
    let e1 = critical_set_e1(&mu_star, &omega, &config).unwrap();
    let e2 = critical_set_e2(&mu_star, &omega, &config).unwrap();
    assert_eq!(e1.cardinality(), 0);
    assert_eq!(e2.cardinality(), 0);
}

#[test]
fn census_rejects_invalid_inputs() {
    let config = AnalysisConfig::default();
    let omega16: Vec<usize> = (0..16).collect();
    let small: Vec<f64> = (0..16).map(|i| 16.0 - i as f64).collect();
    assert!(
        critical_set_e1(&small, &omega16, &config).is_err(),
        "fewer than 32 samples leaves no dyadic window range"
    );

    let omega: Vec<usize> = (0..64).collect();
    let increasing: Vec<f64> = (0..64).map(|i| 1.0 + i as f64).collect();
    assert!(critical_set_e1(&increasing, &omega, &config).is_err());
    let with_zero: Vec<f64> = (0..64).map(|i| 63.0 - i as f64).collect();
    assert!(critical_set_e1(&with_zero, &omega, &config).is_err());
}

#[test]
fn collinearity_matrix_examples() {
    let xi = [0.3, 0.3 + PI, 1.3, 0.3 - PI];
    let (matrix, exists) = collinearity_classes(&[0, 1, 2], &xi, 1e-2);
    assert_eq!(matrix[0], vec![true, true, false]);
    assert_eq!(matrix[1], vec![true, true, false]);
    assert_eq!(matrix[2], vec![false, false, true]);
    assert!(!exists);

    let (_, exists) = collinearity_classes(&[0, 1, 3], &xi, 1e-2);
    assert!(exists, "0.3, 0.3+π, 0.3−π share one mod-π class");

    let (_, exists) = collinearity_classes(&[2], &xi, 1e-2);
    assert!(exists, "a single point is trivially collinear");
    let (_, exists) = collinearity_classes(&[], &xi, 1e-2);
    assert!(exists, "the empty census is vacuously collinear");
}

#[test]
fn collinearity_is_branch_offset_invariant() {
    let xi = [0.3, 0.3 + PI, 1.3, 2.8];
    let points = [0usize, 1, 2, 3];
    let (base_matrix, base_exists) = collinearity_classes(&points, &xi, 1e-2);
    for offset in [0.37, -1.9, 12.0] {
        let shifted: Vec<f64> = xi.iter().map(|x| x + offset).collect();
        let (matrix, exists) = collinearity_classes(&points, &shifted, 1e-2);
        assert_eq!(matrix, base_matrix);
        assert_eq!(exists, base_exists);
    }
}

#[test]
fn gamma_table_on_fixtures() {
    let (config, gauge) = default_setup();
    let grid = gauge.grid();
    let rot = blaschke_boundary(&BlaschkePoint::origin(), grid);

    let r = rearranged_fixture(FixtureId::Constant, &gauge);
    let xi = r.pull_back(rot.arg_branch());
    let scan = gamma_scan(r.mu_star(), &xi, &config).unwrap();
    assert_eq!(scan.rows.len(), config.gamma_steps);
    assert!(scan.all_rows_attain_zero(), "flat modulus attains zero at every γ");

    let r = rearranged_fixture(FixtureId::Exponential, &gauge);
    let xi = r.pull_back(rot.arg_branch());
    let scan = gamma_scan(r.mu_star(), &xi, &config).unwrap();
    assert!(!scan.all_rows_attain_zero());
    assert!(!scan.rows[0].attains_zero, "the admitted θ = 0 maps to row 0");
    assert!(scan.rows.iter().all(|row| row.min_ratio >= 0.0));

    // Two collinear flats: the row at γ ≡ ξ(t₁) mod π kills both flats
    // (quadratic numerator against quadratic denominator stays bounded).
    let r = rearranged_fixture(FixtureId::QuadFlat2Collinear, &gauge);
    let xi = r.pull_back(rot.arg_branch());
    let scan = gamma_scan(r.mu_star(), &xi, &config).unwrap();
    let gamma_step = PI / config.gamma_steps as f64;
    let killing_row = (fixtures::FLAT_T0.rem_euclid(PI) / gamma_step).round() as usize;
    assert!(!scan.rows[killing_row].attains_zero);
    assert!(!scan.all_rows_attain_zero());

    // Generic placement: every γ leaves at least one flat alive.
    let r = rearranged_fixture(FixtureId::QuadFlat2Generic, &gauge);
    let xi = r.pull_back(rot.arg_branch());
    let scan = gamma_scan(r.mu_star(), &xi, &config).unwrap();
    assert!(scan.all_rows_attain_zero());
}

#[test]
fn gamma_bound_and_witness_existence_coincide() {
    let (config, gauge) = default_setup();
    let grid = gauge.grid();
    let rot = blaschke_boundary(&BlaschkePoint::origin(), grid);
    for id in FixtureId::ALL {
        let mu = build_fixture(id, &gauge).unwrap();
        let r = decreasing_rearrangement(&mu).unwrap();
        let xi = r.pull_back(rot.arg_branch());
        let scan = gamma_scan(r.mu_star(), &xi, &config).unwrap();
        let bounded_somewhere = !scan.all_rows_attain_zero();

        let outer = outer_from_modulus(&mu, 0.0, config.modulus_floor).unwrap();
        let outcome = witness_search(&mu, &rot, &outer, &gauge, &config).unwrap();
        assert_eq!(
            bounded_somewhere,
            outcome.witness.is_some(),
            "{id}: bounded γ rows and witness existence must agree"
        );
    }
}

fn decide(id: FixtureId, inner: Vec<BlaschkePoint>, gauge: &Gauge, config: &AnalysisConfig) -> Verdict {
    let mu = build_fixture(id, gauge).unwrap();
    let f_spec = FunctionSpec {
        mu,
        inner,
        outer: true,
    };
    decide_extreme(&f_spec, gauge, config).unwrap()
}

fn reverify(id: FixtureId, inner: &[BlaschkePoint], verdict: &Verdict, gauge: &Gauge, config: &AnalysisConfig) {
    // Soundness: every NotExtreme verdict carries a witness that re-verifies
    // against f̃ rebuilt from scratch, independent of the census.
    let w = verdict.witness.as_ref().expect("NotExtreme requires a witness");
    let grid = gauge.grid();
    let mu = build_fixture(id, gauge).unwrap();
    let outer = outer_from_modulus(&mu, 0.0, config.modulus_floor).unwrap();
    let mut traces: Vec<BoundaryTrace> =
        inner.iter().map(|a| blaschke_boundary(a, grid)).collect();
    traces.push(outer);
    let refs: Vec<&BoundaryTrace> = traces.iter().collect();
    let f = trace_product(&refs).unwrap();
    let check = verify_witness(
        f.values(),
        &w.g_trace,
        gauge,
        config.norm_tol,
        config.fourier_tol,
    )
    .unwrap();
    assert!(check.accepted, "{id}: certificate failed independent re-verification");
}

#[test]
fn decide_constant_modulus_is_extreme() {
    let (config, gauge) = default_setup();
    let a = BlaschkePoint::new(Complex64::new(0.5, 0.0)).unwrap();
    let verdict = decide(FixtureId::Constant, vec![a], &gauge, &config);
    assert_eq!(verdict.status, Status::Extreme);
    assert_eq!(verdict.rule, Rule::InnerConstantModulus);
    assert_eq!(verdict.rule.as_str(), "inner-constant-modulus");
    assert!(verdict.witness.is_none());
    assert!(verdict.report.exists_t0);
}

#[test]
fn decide_outer_function_is_extreme() {
    let (config, gauge) = default_setup();
    let verdict = decide(FixtureId::Exponential, Vec::new(), &gauge, &config);
    assert_eq!(verdict.status, Status::Extreme);
    assert_eq!(verdict.rule, Rule::OuterThmC);
    assert_eq!(verdict.rule.as_str(), "outer-thmC");
    assert!(verdict.witness.is_none());
    assert!(verdict.report.gamma.rows.is_empty(), "no inner factor, no γ table");
    assert!(verdict.report.exists_t0);
}

#[test]
fn decide_single_factor_fixture_table() {
    let (config, gauge) = default_setup();
    let origin = vec![BlaschkePoint::origin()];

    let verdict = decide(FixtureId::Exponential, origin.clone(), &gauge, &config);
    assert_eq!(verdict.status, Status::NotExtreme);
    assert_eq!(verdict.rule, Rule::Corollary69ii);
    assert_eq!(verdict.rule.as_str(), "corollary-6.9-ii");
    let w = verdict.witness.as_ref().unwrap();
    assert_eq!((w.theta_index, w.halvings), (0, 7));
    reverify(FixtureId::Exponential, &origin, &verdict, &gauge, &config);

    let verdict = decide(FixtureId::QuadFlat1, origin.clone(), &gauge, &config);
    assert_eq!(verdict.status, Status::NotExtreme);
    assert_eq!(verdict.rule, Rule::Corollary69ii, "card E1 = 1 stays in the (ii) case");
    let w = verdict.witness.as_ref().unwrap();
    assert_eq!((w.theta_index, w.halvings), (33, 11));
    reverify(FixtureId::QuadFlat1, &origin, &verdict, &gauge, &config);

    let verdict = decide(FixtureId::QuadFlat2Collinear, origin.clone(), &gauge, &config);
    assert_eq!(verdict.status, Status::NotExtreme);
    assert_eq!(verdict.rule, Rule::Corollary69iiiCollinear);
    assert_eq!(verdict.rule.as_str(), "corollary-6.9-iii-collinear");
    assert!(verdict.report.exists_t0);
    assert_eq!(verdict.report.e1.cardinality(), 2);
    let w = verdict.witness.as_ref().unwrap();
    assert_eq!((w.theta_index, w.halvings), (37, 11));
    reverify(FixtureId::QuadFlat2Collinear, &origin, &verdict, &gauge, &config);

    let verdict = decide(FixtureId::QuadFlat2Generic, origin.clone(), &gauge, &config);
    assert_eq!(verdict.status, Status::Extreme);
    assert_eq!(verdict.rule, Rule::Corollary69iiiGeneric);
    assert_eq!(verdict.rule.as_str(), "corollary-6.9-iii-generic");
    assert!(!verdict.report.exists_t0);
    assert_eq!(verdict.report.e1.cardinality(), 2);
    assert!(verdict.witness.is_none());

    let verdict = decide(FixtureId::QuadFlat4, origin.clone(), &gauge, &config);
    assert_eq!(verdict.status, Status::Extreme);
    assert_eq!(verdict.rule, Rule::Corollary69i);
    assert_eq!(verdict.rule.as_str(), "corollary-6.9-i");
    assert_eq!(verdict.report.e1.cardinality(), 4);
    assert!(verdict.witness.is_none());

    let verdict = decide(FixtureId::CubicFlat1, origin, &gauge, &config);
    assert_eq!(verdict.status, Status::Extreme);
    assert_eq!(verdict.rule, Rule::Corollary69i, "nonempty E2 forces extremality");
    assert_eq!(verdict.report.e2.cardinality(), 1);
    assert!(verdict.witness.is_none());
}

#[test]
fn decide_single_factor_other_blaschke_points() {
    let (config, gauge) = default_setup();
    for a in [Complex64::new(0.5, 0.0), Complex64::new(0.3, 0.4)] {
        let inner = vec![BlaschkePoint::new(a).unwrap()];
        let verdict = decide(FixtureId::Exponential, inner.clone(), &gauge, &config);
        assert_eq!(verdict.status, Status::NotExtreme, "a = {a}");
        assert_eq!(verdict.rule, Rule::Corollary69ii);
        let w = verdict.witness.as_ref().unwrap();
        assert_eq!((w.theta_index, w.halvings), (0, 8), "a = {a}");
        reverify(FixtureId::Exponential, &inner, &verdict, &gauge, &config);
    }
}

#[test]
fn decide_multi_factor_paths() {
    let (config, gauge) = default_setup();
    let pair = vec![
        BlaschkePoint::origin(),
        BlaschkePoint::new(Complex64::new(0.5, 0.0)).unwrap(),
    ];

    // Small census: certified through the first single factor.
    let verdict = decide(FixtureId::Exponential, pair.clone(), &gauge, &config);
    assert_eq!(verdict.status, Status::NotExtreme);
    assert_eq!(verdict.rule, Rule::Corollary65);
    assert_eq!(verdict.rule.as_str(), "corollary-6.5");
    let w = verdict.witness.as_ref().unwrap();
    assert_eq!((w.theta_index, w.halvings), (0, 7));

    // Two collinear flats: the divisor I_0 puts both into one mod-π class.
    let verdict = decide(FixtureId::QuadFlat2Collinear, pair.clone(), &gauge, &config);
    assert_eq!(verdict.status, Status::NotExtreme);
    assert_eq!(verdict.rule, Rule::Theorem66);
    assert_eq!(verdict.rule.as_str(), "theorem-6.6");
    let w = verdict.witness.as_ref().unwrap();
    assert_eq!((w.theta_index, w.halvings), (37, 11));

    // Generic flats: no divisor is collinear on E1 — the open gap.
    let verdict = decide(FixtureId::QuadFlat2Generic, pair.clone(), &gauge, &config);
    assert_eq!(verdict.status, Status::Unknown);
    assert_eq!(verdict.rule, Rule::UnknownGap);
    assert_eq!(verdict.rule.as_str(), "unknown-gap");
    assert!(verdict.witness.is_none());
    assert!(!verdict.diagnostics.is_empty());

    let verdict = decide(FixtureId::QuadFlat4, pair, &gauge, &config);
    assert_eq!(verdict.status, Status::Unknown);
    assert_eq!(verdict.rule, Rule::UnknownGap);
    assert!(verdict.witness.is_none());
}

#[test]
fn decide_rejects_bad_inputs() {
    let (config, gauge) = default_setup();
    let grid = gauge.grid();

    let mut mu = build_fixture(FixtureId::Exponential, &gauge).unwrap();
    mu.scale(2.0).unwrap();
    let spec = FunctionSpec {
        mu,
        inner: vec![BlaschkePoint::origin()],
        outer: true,
    };
    assert!(decide_extreme(&spec, &gauge, &config).is_err(), "norm must be 1");

    // Affine gauge: increasing but not strictly concave.
    let n = grid.n();
    let phi: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    let affine = Gauge::from_phi_values(grid, phi).unwrap();
    assert!(!affine.is_strict());
    let mu = build_fixture(FixtureId::Exponential, &affine).unwrap();
    let spec = FunctionSpec {
        mu,
        inner: vec![BlaschkePoint::origin()],
        outer: true,
    };
    assert!(decide_extreme(&spec, &affine, &config).is_err());

    let mu = build_fixture(FixtureId::Exponential, &gauge).unwrap();
    let spec = FunctionSpec {
        mu,
        inner: vec![BlaschkePoint::origin(); 13],
        outer: true,
    };
    assert!(
        decide_extreme(&spec, &gauge, &config).is_err(),
        "divisor enumeration caps at 12 factors"
    );

    let half_grid = make_grid(2048).unwrap();
    let half_gauge = make_power_gauge(config.gauge_p, half_grid).unwrap();
    let mu = build_fixture(FixtureId::Exponential, &gauge).unwrap();
    let spec = FunctionSpec {
        mu,
        inner: Vec::new(),
        outer: true,
    };
    assert!(decide_extreme(&spec, &half_gauge, &config).is_err(), "grid mismatch");
}
