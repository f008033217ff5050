//! Cross-cutting scenario contracts: table shapes, the real-dataset code
//! paths, and config plumbing.

use std::io::Write;

use fspa_harness::{run_scenario, Cell, ScenarioConfig, ScenarioKind};

#[test]
fn warm_start_table_shape() {
    let config = ScenarioConfig::default_for(ScenarioKind::WarmStart);
    let (overlaps, rounds) = match &config {
        ScenarioConfig::WarmStart(p) => (p.overlap_grid.len(), p.rounds),
        _ => unreachable!(),
    };
    let result = run_scenario(&config).unwrap();
    let per_trace = (1u64 << rounds) as usize; // counts 0..=2^T-1
    assert_eq!(result.rows().len(), overlaps * per_trace);
    assert_eq!(result.columns(), &["overlap", "oracle_count", "fidelity"]);
}

#[test]
fn instability_accepts_a_dataset_csv() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // Two tight clusters around (0,0,1) and (1,1,0): a near-degenerate
    // covariance with correlated features.
    let rows = [
        (0.02, -0.01, 1.03),
        (-0.03, 0.02, 0.98),
        (0.01, 0.04, 1.01),
        (1.02, 0.97, 0.01),
        (0.96, 1.03, -0.02),
        (1.01, 1.02, 0.03),
    ];
    writeln!(file, "f1,f2,f3").unwrap();
    for (a, b, c) in rows {
        writeln!(file, "{a},{b},{c}").unwrap();
    }
    file.flush().unwrap();

    let mut config = ScenarioConfig::default_for(ScenarioKind::Instability);
    if let ScenarioConfig::Instability(p) = &mut config {
        p.dataset_csv = Some(file.path().display().to_string());
        p.n_seeds = 5;
        p.strengths = vec![0.0, 1e-3];
    }
    let result = run_scenario(&config).unwrap();
    assert_eq!(result.rows().len(), 10);
    // Zero strength leaves the spectrum untouched.
    for row in result.rows_where("strength", &Cell::Float(0.0)) {
        assert!(row[2].as_f64().unwrap() <= 1e-12);
        assert!(row[4].as_f64().unwrap() <= 1e-12);
    }
}

#[test]
fn downstream_accepts_a_labeled_csv() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "x,y,z,label").unwrap();
    // Two separated blobs, four points each.
    for (x, y, z, l) in [
        (5.02, 0.01, 0.11, 0),
        (4.97, -0.03, -0.05, 0),
        (5.05, 0.04, 0.02, 0),
        (4.99, -0.02, 0.07, 0),
        (-0.03, 4.01, -0.08, 1),
        (0.04, 3.96, 0.03, 1),
        (-0.02, 4.05, 0.06, 1),
        (0.01, 3.99, -0.04, 1),
    ] {
        writeln!(file, "{x},{y},{z},{l}").unwrap();
    }
    file.flush().unwrap();

    let mut config = ScenarioConfig::default_for(ScenarioKind::Downstream);
    if let ScenarioConfig::Downstream(p) = &mut config {
        p.dataset_csv = Some(file.path().display().to_string());
        p.subspace_rank = 2;
        p.rounds = 12;
    }
    let result = run_scenario(&config).unwrap();
    assert_eq!(result.rows().len(), 3);
    for row in result.rows() {
        assert_eq!(row[1].as_f64(), Some(1.0), "separable blobs classify perfectly");
        assert!(row[2].as_f64().unwrap() <= 1e-6);
    }
}

#[test]
fn single_point_gap_grid_emits_the_reference_counts() {
    let mut config = ScenarioConfig::default_for(ScenarioKind::GapScaling);
    if let ScenarioConfig::GapScaling(p) = &mut config {
        p.gap_grid = vec![0.5];
        p.dim = 2;
    }
    let result = run_scenario(&config).unwrap();
    assert_eq!(result.rows().len(), 2);
    let power = result.rows_where("algorithm", &Cell::Str("power".into()));
    let count_idx = result.column_index("oracle_count").unwrap();
    let bound_idx = result.column_index("theorem_bound").unwrap();
    assert_eq!(power[0][count_idx], Cell::Int(7));
    assert_eq!(power[0][bound_idx], Cell::Int(7));
    // No regression summary on a single point.
    assert!(result.summary_value("power_r_squared").is_none());
}

#[test]
fn full_space_rank_is_immune_to_perturbations() {
    let mut config = ScenarioConfig::default_for(ScenarioKind::Instability);
    if let ScenarioConfig::Instability(p) = &mut config {
        p.subspace_rank = p.eigenvalues.len();
        p.n_seeds = 5;
        p.strengths = vec![1e-2];
    }
    let result = run_scenario(&config).unwrap();
    for row in result.rows() {
        assert!(row[4].as_f64().unwrap() <= 1e-12);
    }
}

#[test]
fn missing_labels_are_a_config_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "x,y\n1,2\n3,4\n5,6").unwrap();
    file.flush().unwrap();
    let mut config = ScenarioConfig::default_for(ScenarioKind::Downstream);
    if let ScenarioConfig::Downstream(p) = &mut config {
        p.dataset_csv = Some(file.path().display().to_string());
    }
    assert!(run_scenario(&config).is_err());
}

#[test]
fn metadata_echoes_every_override() {
    let mut config = ScenarioConfig::default_for(ScenarioKind::GapMap);
    config.set_seed(123);
    let result = run_scenario(&config).unwrap();
    let meta = result.metadata_string();
    assert!(meta.contains("config.seed = 123"));
    assert!(meta.contains("config.budget = 255"));
    assert!(meta.contains("summary.qpe_transition_ratio"));
}
