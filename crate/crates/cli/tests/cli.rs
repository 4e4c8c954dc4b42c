use std::process::{Command, Output};

use serde_json::Value;

fn zerowt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerowt")).args(args).output().expect("binary runs")
}

fn zerowt_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerowt")).args(args).env("ZW_THREADS", threads).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn trivial_representation_of_g2() {
    let v = json(&zerowt(&["trace", "--group", "G2", "--class", "cox", "--mu", "1,1"]));
    assert_eq!(v["trace"], 1);
    assert_eq!(v["group"], "G2");
    assert_eq!(v["class"], "cox");
    assert_eq!(v["mu"], serde_json::json!([1, 1]));
    assert!(["ellreg", "elliptic", "general"].contains(&v["method"].as_str().unwrap()));
}

#[test]
fn f4_longest_element() {
    let v = json(&zerowt(&["trace", "--group", "F4", "--class", "w0", "--mu", "2,2,1,1"]));
    assert_eq!(v["trace"], 4);
}

#[test]
fn highest_weight_is_rho_shifted() {
    let a = json(&zerowt(&["trace", "--group", "SU3", "--class", "1", "--mu", "3,6"]));
    let b = json(&zerowt(&["trace", "--group", "SU3", "--class", "1", "--highest-weight", "2,5"]));
    assert_eq!(a, b);
    assert_eq!(a["trace"], 3);
}

#[test]
fn oracle_agrees_with_engine() {
    for class in ["1", "r_a", "r_b", "cox^2", "cox"] {
        let args = ["--group", "Sp4", "--class", class, "--mu", "5,6"];
        let e = json(&zerowt(&[&["trace"][..], &args].concat()));
        let o = json(&zerowt(&[&["oracle"][..], &args].concat()));
        assert_eq!(e["trace"], o["trace"], "{class}");
        assert_eq!(o["method"], "oracle");
    }
}

#[test]
fn user_torsion_point_is_accepted() {
    // −1 in W(Sp4) at the canonical point 2ρ̌(ζ_4).
    let canonical = json(&zerowt(&["trace", "--group", "Sp4", "--class", "w0", "--mu", "3,4"]));
    let given = json(&zerowt(&["trace", "--group", "Sp4", "--class", "w0", "--mu", "3,4", "--torsion", "4:3,4"]));
    assert_eq!(canonical["trace"], given["trace"]);
}

#[test]
fn json_round_trips() {
    for args in [
        &["trace", "--group", "E6", "--class", "cox^4", "--mu", "2,1,1,1,2,1"][..],
        &["character", "--group", "G2", "--mu", "2,3"][..],
        &["decompose", "--group", "D4", "--mu", "1,2,1,1"][..],
        &["datum", "--group", "B3"][..],
        &["search-irreducible", "--group", "D4"][..],
    ] {
        let out = zerowt(args);
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        let v = json(&out);
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), text, "{args:?}");
    }
}

#[test]
fn decomposition_names_irreducibles() {
    let v = json(&zerowt(&["decompose", "--group", "D4", "--mu", "1,2,1,1"]));
    assert_eq!(v["decomposition"], serde_json::json!([{"name": "refl", "multiplicity": 1}]));
    assert_eq!(v["dim"], 4);
}

#[test]
fn search_finds_the_known_d4_weights() {
    let v = json(&zerowt(&["search-irreducible", "--group", "D4"]));
    let irr: Vec<&Value> =
        v["candidates"].as_array().unwrap().iter().filter(|c| c["verdict"]["verdict"] == "irreducible").collect();
    assert_eq!(irr.len(), 5);
}

#[test]
fn verify_sp4_grid() {
    let out = zerowt(&["verify", "--group", "Sp4", "--range", "1..12"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["mismatches"], serde_json::json!([]));
    assert!(v["oracle_checks"].as_u64().unwrap() > 0);
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let args = ["verify", "--group", "SU4", "--range", "1..8"];
    let one = zerowt_threads(&args, "1");
    let many = zerowt_threads(&args, "4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn verify_e6_reports_printed_row_errors() {
    let args = ["verify", "--group", "E6", "--range", "1..3", "--cap", "1000"];
    let printed = zerowt(&args);
    assert_eq!(printed.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&printed.stdout).unwrap();
    assert!(!v["mismatches"].as_array().unwrap().is_empty());
    let corrected = zerowt(&[&args[..], &["--corrected"]].concat());
    assert_eq!(corrected.status.code(), Some(0));
}

#[test]
fn table_csv_schema_and_sources_agree() {
    let engine = zerowt(&["table", "--group", "SU3", "--range", "1..10"]);
    let golden = zerowt(&["table", "--group", "SU3", "--range", "1..10", "--source", "golden"]);
    assert!(engine.status.success());
    let text = String::from_utf8(engine.stdout.clone()).unwrap();
    assert_eq!(text.lines().next(), Some("group,class,mu,trace"));
    assert!(text.lines().count() > 1);
    assert_eq!(engine.stdout, golden.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["trace", "--group", "SU3", "--class", "bogus", "--mu", "1,1"][..],
        &["trace", "--group", "SU3", "--mu", "1,1"][..],
        &["trace", "--group", "SU3", "--class", "cox", "--mu", "0,1"][..],
        &["trace", "--group", "SU3", "--class", "cox", "--mu", "1,1,1"][..],
        &["trace", "--group", "E8", "--class", "cox", "--mu", "1,1,1,1,1,1,1,1"][..],
        &["character", "--group", "C3", "--mu", "2,1,1"][..],
        &["verify", "--group", "B3"][..],
        &["table", "--group", "SU3", "--range", "5..2"][..],
    ] {
        let out = zerowt(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn missing_torsion_points_are_named() {
    let out = zerowt(&["character", "--group", "C3", "--mu", "2,1,1"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('#'), "{err}");
}
