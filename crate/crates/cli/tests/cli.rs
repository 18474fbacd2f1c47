use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_admissibility"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn field_inspect_gaussian() {
    let out = run(&["field", "inspect", "--poly", "1,0,1", "--primes", "2,3,5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["galois"], true);
    let pairs: Vec<Value> = v["decompositions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["pairs"].clone())
        .collect();
    assert_eq!(
        pairs,
        [
            serde_json::json!([[2, 1]]),
            serde_json::json!([[1, 2]]),
            serde_json::json!([[1, 1], [1, 1]])
        ]
    );
}

#[test]
fn field_inspect_rationals_and_pure_cubic() {
    let v = json(&run(&["field", "inspect", "--poly", "1,-1"]));
    assert_eq!(v["degree"], 1);
    let v = json(&run(&["field", "inspect", "--poly", "1,0,0,-2", "--galois"]));
    assert_eq!(v["galois"], false);
    assert_eq!(v["degree"], 3);
    assert!(v.get("local_unity").is_none());
}

#[test]
fn field_inspect_local_unity() {
    let out = run(&["field", "inspect", "--poly", "-7,0,1", "--primes", "3", "--galois"]);
    assert!(out.status.success());
    assert!(json(&out)["local_unity"].is_array());
}

#[test]
fn field_errors() {
    assert_eq!(run(&["field", "inspect", "--poly", "1,y"]).status.code(), Some(2));
    assert_eq!(run(&["field", "inspect", "--poly", "-1,0,1"]).status.code(), Some(2));
    assert_eq!(
        run(&["field", "inspect", "--poly", "1,0,1", "--primes", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn decide_examples() {
    let v = json(&run(&[
        "decide",
        "--poly",
        "1,0,1",
        "--metacyclic",
        "4,2,0,3",
        "--mode",
        "tame",
        "--json",
    ]));
    assert_eq!(
        (v["status"].as_str(), v["theorem"].as_str()),
        (Some("NotTamelyAdmissible"), Some("NEFTIN_T13"))
    );
    assert_eq!(v["schema"], 1);
    let v = json(&run(&[
        "decide",
        "--poly",
        "1,-1",
        "--metacyclic",
        "4,2,0,3",
        "--mode",
        "tame",
        "--json",
    ]));
    assert_eq!(v["status"], "TamelyAdmissible");
    let out = run(&[
        "decide",
        "--poly",
        "1,0,-5",
        "--product",
        "perm:(1 2 3);perm:(4 5 6);perm:(7 8 9)",
        "--mode",
        "admissible",
        "--json",
        "--replay",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["status"], "NotAdmissible");
    assert_eq!(v["replay"], true);
}

#[test]
fn decide_group_inputs_agree() {
    let perm = json(&run(&[
        "decide",
        "--poly",
        "1,0,1",
        "--perm",
        "(1 2 3 4)",
        "--perm",
        "(1 3)",
        "--json",
    ]));
    let joined = json(&run(&[
        "decide",
        "--poly",
        "1,0,1",
        "--perm",
        "(1 2 3 4),(1 3)",
        "--json",
    ]));
    let meta = json(&run(&[
        "decide",
        "--poly",
        "1,0,1",
        "--metacyclic",
        "4,2,0,3",
        "--json",
    ]));
    assert_eq!(perm["status"], meta["status"]);
    assert_eq!(perm, joined);
}

#[test]
fn decide_exit_codes() {
    let bad = run(&["decide", "--poly", "1,0,1", "--metacyclic", "4,2,1,3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position"));
    assert_eq!(
        run(&["decide", "--poly", "1,0,1", "--product", "cyc:3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["decide", "--poly", "1,0,1"]).status.code(), Some(2));
    let a5 = ["decide", "--poly", "1,-1", "--perm", "(1 2 3 4 5),(1 2 3)"];
    assert_eq!(run(&a5).status.code(), Some(0));
    let strict: Vec<&str> = a5.iter().copied().chain(["--strict"]).collect();
    assert_eq!(run(&strict).status.code(), Some(4));
    let budget = run(&[
        "decide",
        "--poly",
        "1,-1",
        "--metacyclic",
        "9,1,0,1",
        "--budget-order",
        "8",
        "--json",
        "--strict",
    ]);
    assert_eq!(budget.status.code(), Some(4));
    assert_eq!(json(&budget)["witnesses"]["blocking"]["kind"], "budget");
}

#[test]
fn replayed_certificates_are_stable() {
    let args = [
        "decide",
        "--poly",
        "1,0,-26,0,1",
        "--perm",
        "(1 2 3),(4 5 6),(7 8 9),(10 11 12)",
        "--replay",
        "--json",
    ];
    let first = run(&args);
    assert!(first.status.success());
    assert_eq!(json(&first)["theorem"], "WILD_LOCAL_UNITY");
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn corpus_runs() {
    let out = run(&["corpus", "--filter", "q16", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    let ids: Vec<&str> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(!ids.is_empty());
    assert!(ids.iter().all(|id| id.starts_with("q16") || id.starts_with("sd16")));
    let table = run(&["corpus", "--filter", "trivial"]);
    assert!(String::from_utf8_lossy(&table.stdout).contains("2 passed, 0 failed"));
}

#[test]
fn corpus_json_is_deterministic() {
    let first = run(&["corpus", "--json"]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stdout));
    let second = run(&["corpus", "--json"]);
    assert_eq!(first.stdout, second.stdout);
    let sequential = run(&["corpus", "--json", "--sequential"]);
    assert_eq!(first.stdout, sequential.stdout);
}
