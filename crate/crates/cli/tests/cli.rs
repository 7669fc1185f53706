use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hypermaps"))
        .args(args)
        .env_remove("RHM_CACHE_DIR")
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn rhm_engines_agree() {
    let (code, out) = run(&["rhm", "--N", "2", "--genus", "1", "--degrees", "4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for e in ["oracle", "tr", "tau"] {
        assert_eq!(v["rhm"][e], "1");
    }
}

#[test]
fn unstable_profiles_route_to_closed_forms() {
    let (code, out) = run(&["rhm", "--N", "3", "--degrees", "1,2", "--engine", "tr,oracle"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rhm"]["tr"], v["rhm"]["oracle"]);
}

#[test]
fn invalid_input_exits_two() {
    assert_eq!(run(&["rhm", "--N", "1", "--degrees", "2"]).0, 2);
    assert_eq!(run(&["rhm", "--N", "2"]).0, 2);
    assert_eq!(run(&["crosscheck", "--engine", ""]).0, 2);
    assert_eq!(run(&["crosscheck", "--out", "xml"]).0, 2);
}

#[test]
fn verification_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "N = 2\ng_max = 0\nn_max = 3\nweight_cap = 4\nsweep_k_max = 2\npluecker_window = 4\nconvention = face_vertex_swap\nengines = oracle\n").unwrap();
    let (code, _) = run(&["crosscheck", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 1);
    std::fs::write(&cfg, "N = 2\ng_max = 0\nn_max = 3\nweight_cap = 4\nsweep_k_max = 2\npluecker_window = 4\n").unwrap();
    let (code, out) = run(&["crosscheck", "--config", cfg.to_str().unwrap(), "--out", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("check,inputs,values,verdict,detail"));
}

#[test]
fn tau_and_pluecker_outputs() {
    let (code, out) = run(&["tau", "--N", "2", "--weight-cap", "4", "--emit", "coefficients"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["A"]["0"], "1");
    let (code, out) = run(&["pluecker", "--N", "2", "--weight-cap", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    for cmd in [vec!["curve", "--N", "3"], vec!["smatrix", "--N", "2"], vec!["frobenius", "--N", "3"]] {
        assert_eq!(run(&cmd).0, 0, "{cmd:?}");
    }
}
