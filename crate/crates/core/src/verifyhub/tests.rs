use super::*;

fn small() -> RunConfig {
    RunConfig::parse("N = 2\ng_max = 1\nn_max = 2\nweight_cap = 6\nsweep_k_max = 4\npluecker_window = 5\ncache_dir =\n").unwrap()
}

#[test]
fn config_parsing() {
    let c = RunConfig::parse("# comment\nN = 2,3\nengines = tr, tau\nformat = csv\nthreads = 2").unwrap();
    assert_eq!(c.ns, vec![2, 3]);
    assert_eq!(c.engines.len(), 2);
    assert_eq!(c.format, OutputFormat::Csv);
    assert!(matches!(RunConfig::parse("bogus = 1"), Err(HubError::Config(_))));
    assert!(matches!(RunConfig::parse("format = xml"), Err(HubError::UnknownFormat(_))));
    assert!(matches!(RunConfig::parse("dart_cap = 0"), Err(HubError::Config(_))));
    let echo = c.echo();
    assert_eq!(echo["weight_cap"], "2:10,3:9");
    assert!(!echo.contains_key("threads"));
}

#[test]
fn grid_shapes() {
    let grid = profile_grid(1, 2, 4);
    assert!(grid.iter().all(|(g, d)| 2 * g + d.len() as u32 > 2 && d.iter().sum::<u32>() <= 4));
    assert!(grid.contains(&(1, vec![1, 3])));
    assert!(!grid.contains(&(1, vec![3, 1])));
    assert_eq!(grid.iter().filter(|(g, _)| *g == 0).count(), 0);
}

#[test]
fn no_engines() {
    let mut c = small();
    c.set("engines", "").unwrap();
    assert_eq!(run_crosscheck(&c), Err(HubError::NoEngines));
    assert_eq!(HubError::NoEngines.to_string(), "no engines selected");
}

#[test]
fn small_run_passes_and_emits() {
    let c = small();
    let rep = run_crosscheck(&c).unwrap();
    let fails: Vec<_> = rep.failures().collect();
    assert!(fails.is_empty(), "{fails:?}");
    assert!(rep.records.iter().any(|r| r.check == "rhm" && r.values.len() == 3));
    let csv = emit(&rep, "csv").unwrap();
    let lines = String::from_utf8(csv).unwrap().lines().count();
    assert_eq!(lines, rep.records.len() + 1);
    let json = emit(&rep, "json").unwrap();
    let back: Report = serde_json::from_slice(&json).unwrap();
    assert_eq!(back, rep);
    assert!(matches!(emit(&rep, "yaml"), Err(HubError::UnknownFormat(_))));
}

#[test]
fn wrong_convention_is_caught() {
    let mut c = small();
    c.set("engines", "oracle").unwrap();
    c.set("convention", "face_vertex_swap").unwrap();
    let rep = run_crosscheck(&c).unwrap();
    let cal = rep.records.iter().find(|r| r.check == "oracle_calibration").unwrap();
    assert!(!cal.passed());
    assert!(cal.detail.contains("φ_B"), "{}", cal.detail);
}
