use std::process::{Command, Output};

use serde_json::Value;

fn encell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_encell")).args(args).env_remove("ENCELL_CACHE_DIR").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = encell(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.ends_with(b"\n"));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn betti(v: &Value) -> Vec<u64> {
    let mut b: Vec<u64> = v["homology"]["betti"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

#[test]
fn cells() {
    assert_eq!(json(&["cells", "--n", "2", "--k", "2", "--s", "0"])["counts"], serde_json::json!([2, 2]));
    assert_eq!(json(&["cells", "--n", "1", "--k", "3", "--s", "0"])["counts"], serde_json::json!([6]));
    let one = json(&["cells", "--n", "1", "--k", "1", "--s", "0"]);
    assert_eq!(one["total"], 1);
    assert_eq!(one["cells"][0]["diagram"]["f"], serde_json::json!([1]));
    assert_eq!(json(&["cells", "--n", "inf", "--trunc", "3", "--k", "2"])["counts"], serde_json::json!([2, 2, 2, 2]));
}

#[test]
fn homology_of_each_model() {
    assert_eq!(betti(&json(&["homology", "--model", "xi", "--n", "2", "--k", "3", "--s", "0"])), vec![1, 3, 2]);
    assert_eq!(betti(&json(&["homology", "--model", "berger", "--n", "2", "--k", "2"])), vec![1, 1]);
    let rp2 = json(&["homology", "--model", "fixture", "--name", "rp2"]);
    assert_eq!(betti(&rp2), vec![1]);
    assert_eq!(rp2["homology"]["torsion"][1], serde_json::json!([2]));
}

#[test]
fn nerve_reports_chains_and_homology() {
    let v = json(&["nerve", "--n", "2", "--k", "3"]);
    assert_eq!(betti(&v), vec![1, 3, 2]);
    let chains = v["chains"].as_array().unwrap();
    assert_eq!(v["vertices"], chains[0]);
    assert_eq!(v["generators"], v["chains"]);
}

#[test]
fn export_round_trips_through_json_input() {
    let dir = std::env::temp_dir().join(format!("encell-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("nerve.json");
    let path = file.to_str().unwrap();
    let out = encell(&["export", "--model", "berger", "--n", "2", "--k", "3", "--out", path]);
    assert!(out.status.success());
    let exported: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let nerve = json(&["nerve", "--n", "2", "--k", "3"]);
    assert_eq!(exported["generators"], nerve["chains"]);
    for b in exported["boundaries"].as_array().unwrap() {
        let keys: Vec<(u64, u64)> = b["triplets"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| (t[0].as_u64().unwrap(), t[1].as_u64().unwrap()))
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "triplets not sorted by (row, col)");
    }
    let again = json(&["homology", "--model", "json", "--input", path]);
    assert_eq!(again["homology"], nerve["homology"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn checks_pass_and_set_the_exit_code() {
    let v = json(&["check", "--suite", "prism", "--seed", "7", "--cases", "1000"]);
    assert_eq!(v["passed"], true);
    let v = json(&["check", "--suite", "acyclicity", "--n", "2", "--k", "3"]);
    assert_eq!(v["passed"], true);
    let unknown = encell(&["check", "--suite", "nonsense"]);
    assert!(!unknown.status.success());
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("prism"));
}

#[test]
fn invalid_parameters_are_rejected() {
    for args in [
        &["cells", "--n", "0"][..],
        &["cells", "--n", "inf"],
        &["cells", "--k", "0"],
        &["nerve", "--n", "inf"],
        &["homology", "--model", "fixture"],
        &["homology", "--model", "fixture", "--name", "torus"],
    ] {
        let out = encell(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn cochain_demo_identities_hold() {
    for ring in ["z", "z2", "z3"] {
        let v = json(&[
            "cochain-demo",
            "--name",
            "boundary-delta3",
            "--ring",
            ring,
            "--p",
            "1",
            "--q",
            "1",
            "--seed",
            "11",
        ]);
        for (_, ok) in v["checks"].as_object().unwrap() {
            assert_eq!(ok, true);
        }
    }
}

#[test]
fn cache_does_not_change_output() {
    let dir = std::env::temp_dir().join(format!("encell-cache-{}", std::process::id()));
    let args = ["homology", "--model", "xi", "--n", "3", "--k", "2"];
    let plain = encell(&args).stdout;
    for _ in 0..2 {
        let cached =
            Command::new(env!("CARGO_BIN_EXE_encell")).args(args).env("ENCELL_CACHE_DIR", &dir).output().unwrap();
        assert_eq!(cached.stdout, plain);
    }
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
