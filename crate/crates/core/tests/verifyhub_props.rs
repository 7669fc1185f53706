use hypermap_core::verifyhub::{emit, run_crosscheck, RunConfig};

fn config(threads: usize) -> RunConfig {
    let mut c = RunConfig::parse("N = 2,3\ng_max = 1\nn_max = 2\nweight_cap = 6\nsweep_k_max = 3\npluecker_window = 5").unwrap();
    c.set("threads", &threads.to_string()).unwrap();
    c.cache_dir = None;
    c
}

#[test]
fn reports_do_not_depend_on_thread_budget() {
    let a = run_crosscheck(&config(1)).unwrap();
    let b = run_crosscheck(&config(3)).unwrap();
    assert!(a.all_passed());
    for fmt in ["json", "csv"] {
        assert_eq!(emit(&a, fmt).unwrap(), emit(&b, fmt).unwrap(), "{fmt}");
    }
    let again = run_crosscheck(&config(1)).unwrap();
    assert_eq!(emit(&a, "json").unwrap(), emit(&again, "json").unwrap());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config(2);
    c.ns = vec![3];
    c.cache_dir = Some(dir.path().to_path_buf());
    let cold = run_crosscheck(&c).unwrap();
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = run_crosscheck(&c).unwrap();
    assert_eq!(emit(&cold, "json").unwrap(), emit(&warm, "json").unwrap());
    // A damaged entry is recomputed rather than trusted.
    for f in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(f.unwrap().path(), "{not json").unwrap();
    }
    let healed = run_crosscheck(&c).unwrap();
    assert_eq!(emit(&cold, "json").unwrap(), emit(&healed, "json").unwrap());
}
