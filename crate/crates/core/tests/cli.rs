use std::process::{Command, Output};

use fock_crystal::decomposition::DecomposedWeight;
use fock_crystal::graph::CrystalGraph;
use fock_crystal::{Multicharge, PeelTrace, WeightInf};

fn fock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fock")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> serde_json::Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn peel_trace_round_trips() {
    let out = fock(&["peel", "--lambda", "2.2.2.1.1|2", "--charge", "4,5", "--e", "4", "--format", "json"]);
    let value = json(&out);
    assert_eq!(value["totally_periodic"], true);
    assert_eq!(value["final_lambda"], "-|-");
    let trace: PeelTrace = serde_json::from_value(value).unwrap();
    assert_eq!(trace.periods.len(), 2);
    assert_eq!(trace.final_charge, Multicharge(vec![-1, 2]));
    let start = trace.replay().unwrap();
    assert_eq!(start.lambda().to_string(), "2.2.2.1.1|2");
}

#[test]
fn peel_text() {
    let out = fock(&["peel", "--lambda", "-|2.2|2.2.1.1.1.1", "--charge", "3,4,6", "--e", "4"]);
    let text = stdout(&out);
    assert!(text.contains("final: -|-|- with charge (-2,-1,0)"), "{text}");
    assert!(text.ends_with("totally periodic: true\n"));
}

#[test]
fn highest_weight_examples() {
    let out = fock(&["hw", "--lambda", "-|2.2|2.2.1.1.1.1", "--charge", "3,4,6", "--e", "4"]);
    assert_eq!(stdout(&out), "true\n");
    let out = fock(&["hw", "--lambda", "3|2.2.2|2.1", "--charge", "0,-1,1", "--e", "4"]);
    assert_eq!(stdout(&out), "false\n");
    let value =
        json(&fock(&["hw", "--lambda", "-|1.1.1|1|1.1", "--charge", "0,2,3,5", "--e", "inf", "--format", "json"]));
    assert_eq!(value["highest_weight"], true);
    assert_eq!(value["totally_periodic"], true);
}

#[test]
fn crystal_dot_has_seven_vertices() {
    let out = fock(&["crystal", "--charge", "0", "--e", "2", "--max-rank", "3", "--format", "dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph crystal {"));
    let vertices = text.lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("->")).count();
    assert_eq!(vertices, 7);
}

#[test]
fn crystal_json_round_trips_and_is_deterministic() {
    let args = ["crystal", "--charge", "0,1", "--e", "3", "--max-rank", "4", "--format", "json"];
    let first = fock(&args);
    let second = fock(&args);
    assert_eq!(first.stdout, second.stdout);
    let graph: CrystalGraph = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(graph.vertices.len(), 1 + 2 + 5 + 10 + 20);
    let reserialized: serde_json::Value = serde_json::to_value(&graph).unwrap();
    assert_eq!(reserialized, json(&first));
}

#[test]
fn component_of_empty() {
    let value = json(&fock(&[
        "crystal",
        "--charge",
        "0,1",
        "--e",
        "2",
        "--max-rank",
        "4",
        "--component-of",
        "-|-",
        "--format",
        "json",
    ]));
    let vertices = value["vertices"].as_array().unwrap();
    assert_eq!(vertices.iter().filter(|v| v["hw"] == true).count(), 1);
    assert!(vertices.iter().all(|v| v["id"].as_u64().unwrap() < vertices.len() as u64));
}

#[test]
fn branch_lists_decompositions() {
    let value = json(&fock(&["branch", "--charge", "0,1", "--e", "2", "--max-rank", "4", "--format", "json"]));
    let rows = value.as_array().unwrap();
    assert!(rows.len() > 1);
    for row in rows {
        let nu: WeightInf = serde_json::from_value(row["wt_inf"].clone()).unwrap();
        let decs = row["decomposition"].as_array().unwrap();
        assert_eq!(decs.len(), 1, "{row}");
        let d = DecomposedWeight::deserialize_with_e(decs[0].clone(), 2).unwrap();
        assert_eq!(d.reconstruct(), nu);
    }
}

#[test]
fn kostka_and_multiplicity() {
    assert_eq!(stdout(&fock(&["kostka", "--shape", "2.1", "--weight", "1,1,1"])), "2\n");
    let value = json(&fock(&["kostka", "--shape", "3.3.3.2.1.1.1", "--weight", "1,3,4,6", "--format", "json"]));
    assert_eq!(value["kostka"], 4);

    let nu = r#"{"fundamental": {"-2": 1, "0": -1, "1": 1, "2": 1}}"#;
    let m = fock(&["multiplicity", "--charge", "0,1", "--e", "2", "--nu", nu]);
    let big = fock(&["multiplicity", "--charge", "0,1", "--e", "2", "--nu", nu, "--which", "M"]);
    assert_eq!(stdout(&m), "2\n");
    assert_eq!(stdout(&big), "3\n");
}

#[test]
fn tableau_of_symbol() {
    let value = json(&fock(&["tableau", "--of-symbol", "-|1.1.1|1|1.1", "--charge", "0,2,3,5", "--format", "json"]));
    assert_eq!(value["infinite"]["shape"], serde_json::json!([3, 3, 3, 2, 1, 1, 1]));
    assert_eq!(value["infinite"]["weight"], serde_json::json!([1, 3, 4, 6]));
    assert_eq!(value["infinite"]["v"], serde_json::json!([-1, 2, 3, 6]));
    assert!(value.get("level_zero").is_none());

    let value = json(&fock(&[
        "tableau",
        "--of-symbol",
        "3.1|3.1|2.2.1.1",
        "--charge",
        "2,3,6",
        "--e",
        "2",
        "--format",
        "json",
    ]));
    assert_eq!(value["level_zero"]["t"], serde_json::json!([0, 0, 1]));
    assert_eq!(value["level_zero"]["totally_periodic"], true);
    assert_eq!(value["level_zero"]["periods"].as_array().unwrap().len(), 5);
}

#[test]
fn symbol_and_period() {
    let text = stdout(&fock(&["symbol", "--lambda", "3|2.2.2|2.1", "--charge", "1,0,2"]));
    assert_eq!(text.lines().next().unwrap(), "c=2: ... -4 -3 -2 -1  0  2  4");
    let value = json(&fock(&[
        "period",
        "--lambda",
        "3.3.1|4.3.1|4.4.2",
        "--charge",
        "-1,-1,1",
        "--e",
        "5",
        "--format",
        "json",
    ]));
    assert_eq!(value["period"]["form"], serde_json::json!([5, 4, 3, 2, 1]));
    let value =
        json(&fock(&["period", "--lambda", "3|2.2.2|2.1", "--charge", "0,-1,1", "--e", "4", "--format", "json"]));
    assert!(value["period"].is_null());
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "--suite", "hw-equivalence", "--l", "2", "--e", "2", "--max-rank", "6", "--charges", "0,0;0,1"][..],
        &["verify", "--suite", "weight-projection", "--max-rank", "5"][..],
        &["verify", "--suite", "counting", "--l", "2", "--e", "2", "--max-rank", "4"][..],
    ] {
        let out = fock(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}\n{}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"));
    }
    let value = json(&fock(&["verify", "--suite", "tableaux", "--max-rank", "3", "--format", "json", "--jobs", "2"]));
    assert_eq!(value["suite"], "tableaux");
    assert!(value["checks"].as_array().unwrap().iter().all(|c| c["failures"] == 0));
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(fock(&[]).status.code(), Some(2));
    assert_eq!(fock(&["peel", "--lambda", "1", "--charge", "0"]).status.code(), Some(2));
    assert_eq!(fock(&["hw", "--lambda", "2.3", "--charge", "0", "--e", "2"]).status.code(), Some(2));
    assert_eq!(fock(&["hw", "--lambda", "1", "--charge", "0", "--e", "1"]).status.code(), Some(2));
    assert_eq!(fock(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(fock(&["verify", "--charges", "0,1"]).status.code(), Some(2));
    // Domain errors.
    let out = fock(&["peel", "--lambda", "1|1", "--charge", "0", "--e", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("level mismatch"));
    assert_eq!(fock(&["period", "--lambda", "1", "--charge", "0", "--e", "inf"]).status.code(), Some(1));
    assert_eq!(fock(&["tableau", "--of-symbol", "1|-", "--charge", "0,0"]).status.code(), Some(1));
    assert_eq!(fock(&["branch", "--charge", "1,0", "--e", "2", "--max-rank", "2"]).status.code(), Some(1));
    let out = fock(&["crystal", "--charge", "0,0,0", "--e", "2", "--max-rank", "9", "--vertex-cap", "100"]);
    assert_eq!(out.status.code(), Some(1));
    // Help is not an error.
    assert_eq!(fock(&["--help"]).status.code(), Some(0));
}
