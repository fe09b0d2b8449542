use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galoisk")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scenario(name: &str) -> String {
    format!("{}/scenarios/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn chartable_degrees() {
    let out = run(&["chartable", "--group", "heisenberg:3"]);
    assert!(out.status.success());
    let v = json(&out);
    let mut degs: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    degs.sort_unstable();
    assert_eq!(degs, [1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3]);
}

#[test]
fn enumerate_local_families() {
    let v = json(&run(&["enumerate-local", "--family", "p3", "--p", "5"]));
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    let out = run(&["enumerate-local", "--family", "l2p", "--l", "3", "--p", "7"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn every_shipped_scenario_holds() {
    let dir = format!("{}/scenarios", env!("CARGO_MANIFEST_DIR"));
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let out = run(&["verify", "--scenario", path.to_str().unwrap()]);
        assert!(out.status.success(), "{}: {}", path.display(), String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["holds"], true, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 9);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "--scenario", &scenario("zeta9_cubic.json")],
        vec!["diagram", "--group", "heisenberg:3", "--samples", "20", "--seed", "7"],
        vec!["cchar", "--field", "9:3+7:3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["betti", "--group", "heisenberg:3"];
    let one = Command::new(env!("CARGO_BIN_EXE_galoisk")).env("GALOISK_THREADS", "1").args(args).output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_galoisk")).env("GALOISK_THREADS", "4").args(args).output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn nontrivial_c_and_failed_checks() {
    let out = run(&["cchar", "--field", "9:3+7:3"]);
    assert_eq!(json(&out)["trivial"], false);
    assert_eq!(run(&["cchar", "--field", "9:3"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["chartable", "--group", "bogus:0"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate-local", "--family", "l2p", "--l", "3", "--p", "11"]).status.code(), Some(2));
    assert_eq!(run(&["gauss", "--field", "7:3", "--local-degree", "2"]).status.code(), Some(2));
    let out = run(&["gauss", "--modulus", "7", "--index", "1", "--local-degree", "2"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn numeric_flag_adds_floats() {
    let plain = json(&run(&["jacobi", "--modulus", "7", "--a", "1", "--b", "1"]));
    let num = json(&run(&["--numeric", "jacobi", "--modulus", "7", "--a", "1", "--b", "1"]));
    assert!(plain.to_string().find("numeric").is_none());
    assert!(num.to_string().contains("numeric"));
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(16))]

    /// Arbitrary inputs either succeed with JSON on stdout or fail cleanly with exit 2.
    #[test]
    fn jacobi_never_crashes(m in 1u64..40, a in 0usize..30, b in 0usize..30) {
        let out = run(&["jacobi", "--modulus", &m.to_string(), "--a", &a.to_string(), "--b", &b.to_string()]);
        match out.status.code() {
            Some(0) => { json(&out); }
            Some(2) => proptest::prop_assert!(out.stdout.is_empty()),
            c => proptest::prop_assert!(false, "exit {:?}: {}", c, String::from_utf8_lossy(&out.stderr)),
        }
    }
}
