use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

fn hibi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hibi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_p1_json() {
    let o = hibi(&["analyze", fixture("p1.json").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cm_type"], 11);
    assert_eq!(v["r_max"], 8);
}

#[test]
fn analyze_chain_is_gorenstein() {
    let o = hibi(&["analyze", fixture("chain3.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("gorenstein") && l.ends_with("true")));
}

#[test]
fn cycle_is_input_error() {
    let o = hibi(&["analyze", fixture("invalid/bad_cycle.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycle"));
}

#[test]
fn malformed_json_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"elements\": [\"x0\",\n").unwrap();
    let o = hibi(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn check_fixture_dir() {
    let o = hibi(&["check", fixture("").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn check_corrupted_fixture_fails() {
    let o = hibi(&["check", fixture("corrupted").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("FAIL  p1_bad_histogram.json"));
    let replay = out.lines().find_map(|l| l.trim().strip_prefix("poset: ")).unwrap();
    hibi::parse_poset(replay).unwrap();
}

#[test]
fn check_random_sweep() {
    let o = hibi(&["check", "--random", "200", "--n", "8", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("200 posets checked, 0 failed"));
}

#[test]
fn size_guard_names_flag() {
    let o = hibi(&["analyze", fixture("p2.json").to_str().unwrap(), "--max-elements", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-elements"));
}

#[test]
fn box_budget_from_env_falls_back_to_criteria() {
    let o = Command::new(env!("CARGO_BIN_EXE_hibi"))
        .args(["analyze", fixture("n7.json").to_str().unwrap(), "--json"])
        .env("HIBI_MAX_BOX", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mode"], "criteria-only");
    assert_eq!(v["cm_type"], 2);
}

#[test]
fn json_is_byte_stable() {
    let file = fixture("p2.json");
    let args = ["analyze", file.to_str().unwrap(), "--json"];
    let first = hibi(&args).stdout;
    for threads in ["1", "3", "8"] {
        let o = Command::new(env!("CARGO_BIN_EXE_hibi")).args(args).env("RAYON_NUM_THREADS", threads).output().unwrap();
        assert_eq!(o.stdout, first);
    }
}

#[test]
fn export_lattice_counts() {
    for (name, count) in [("chain3.json", 3), ("vee.json", 4)] {
        let o = hibi(&["export-lattice", fixture(name).to_str().unwrap()]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["ideals"].as_array().unwrap().len(), count);
        assert_eq!(v["monomials"].as_array().unwrap().len(), count);
    }
    let ep = hibi::fixtures::n7().extend();
    let o = hibi(&["export-lattice", fixture("n7.json").to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let base: Vec<usize> = ep.base().collect();
    let brute = (1u32..1 << base.len())
        .filter(|m| {
            base.iter().enumerate().all(|(i, &x)| {
                m >> i & 1 == 0 || base.iter().enumerate().all(|(j, &y)| !ep.leq(y, x) || m >> j & 1 == 1)
            })
        })
        .count();
    assert_eq!(v["ideals"].as_array().unwrap().len(), brute);
}

#[test]
fn random_is_deterministic() {
    let args = ["random", "--n", "8", "--density", "0.3", "--seed", "7", "--count", "4"];
    assert_eq!(hibi(&args).stdout, hibi(&args).stdout);
}
