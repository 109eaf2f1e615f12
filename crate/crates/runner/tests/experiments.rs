use qrf_runner::{run, run_config, ExperimentId, Params, RunnerError, ScenarioConfig};

fn params(pairs: &[&str]) -> Params {
    let mut p = Params::default();
    for kv in pairs {
        p.set_pair(kv).unwrap();
    }
    p
}

#[test]
fn every_report_has_claims_and_passes_for_other_seeds() {
    for seed in [1, 99] {
        for id in [ExperimentId::E1, ExperimentId::E4, ExperimentId::E6, ExperimentId::E7] {
            let r = run(id, &params(&["samples=30"]), seed).unwrap();
            assert!(!r.claims.is_empty());
            assert!(r.passed(), "{id} seed {seed}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn phases_follow_the_parameters() {
    let r = run(ExperimentId::E1, &params(&["a=3/2", "v=-2/5", "m=7", "m2=1/2", "hbar=1/3"]), 0).unwrap();
    let phase = r.claims.iter().find(|c| c.name == "cycle phase = a v m/ħ").unwrap();
    assert_eq!(phase.measured, "-63/5");
    let rel = r.claims.iter().find(|c| c.name.starts_with("relative phase")).unwrap();
    assert_eq!(rel.measured, "117/10");
}

#[test]
fn cyclic_product_on_a_smaller_grid() {
    let r = run(ExperimentId::E2, &params(&["grid_n=1024", "grid_extent=32", "a=1", "v=1/4", "m=3"]), 0).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn off_grid_shift_is_a_configuration_error() {
    let err = run(ExperimentId::E2, &params(&["a=1/3"]), 0).unwrap_err();
    assert!(matches!(err, RunnerError::Config(_)), "{err}");
}

#[test]
fn three_body_equal_masses() {
    let r = run(ExperimentId::E6, &params(&["masses=1,1,1"]), 3).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    let c = r.claims.iter().find(|c| c.name.starts_with("[X₂'")).unwrap();
    assert_eq!(c.measured, "1/2");
}

#[test]
fn concurrent_runs_keep_order() {
    let cfg = ScenarioConfig::from_json(r#"{"experiments": ["E7", "E1", "E4"], "params": {"samples": "5"}}"#);
    assert!(cfg.is_err(), "samples is an integer, not a rational string");
    let cfg = ScenarioConfig::from_json(r#"{"experiments": ["E7", "E1", "E4"], "params": {"samples": 5}}"#).unwrap();
    let reports = run_config(&cfg).unwrap();
    let ids: Vec<_> = reports.iter().map(|r| r.experiment).collect();
    assert_eq!(ids, [ExperimentId::E1, ExperimentId::E4, ExperimentId::E7]);
}
