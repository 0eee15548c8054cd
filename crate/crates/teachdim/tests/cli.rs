//! End-to-end checks of the binary surface: JSON on stdout, diagnostics on
//! stderr, exit codes 0/1/2/3.

use std::process::{Command, Output};

fn teachdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teachdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn dims_subcommand_reports_the_dimensions() {
    let out = teachdim(&["dims", "--class", "warmuth"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["vcd"], 2);
    assert_eq!(value["td"], 3);
    assert_eq!(value["rtd"], 3);
    assert_eq!(value["nctd"], 2);
    assert!(value["witnesses"]["teaching_sets"]["h1"].is_array());
}

#[test]
fn bound_subcommand() {
    let out = teachdim(&["bound", "--d", "16"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["k_min"], 3);
}

#[test]
fn build_lvs_subcommand() {
    let out = teachdim(&["build-lvs", "--class", "warmuth", "--h0", "h1"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["td_sigma"], 2);
    assert_eq!(value["plans"].as_array().unwrap().len(), 10);
}

#[test]
fn build_lvs_trace_dumps_recursion() {
    let out = teachdim(&["build-lvs", "--class", "warmuth", "--h0", "h1", "--trace"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    let recursion = value["recursion"].as_array().unwrap();
    assert!(!recursion.is_empty());
    // The top level partitions along all five instances.
    let top = recursion
        .iter()
        .find(|r| r["depth"] == 0)
        .expect("top level present");
    assert_eq!(top["compact"].as_array().unwrap().len(), 5);
    assert_eq!(top["blocks"].as_array().unwrap().len(), 5);
}

#[test]
fn dsigma_and_simulate_round_trip() {
    let out = teachdim(&[
        "dsigma",
        "--class",
        "gap6",
        "--sigma",
        "gap6-lvs",
        "--h0",
        "h1",
        "--target",
        "h6",
    ]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["cost"], 2);
    let steps = serde_json::to_string(&value["plan"]["steps"]).unwrap();

    let out = teachdim(&[
        "simulate",
        "--class",
        "gap6",
        "--sigma",
        "gap6-lvs",
        "--h0",
        "h1",
        "--steps",
        &steps,
        "--tie",
        "adversarial",
        "--target",
        "h6",
    ]);
    assert!(out.status.success());
    let trace = stdout_json(&out);
    assert_eq!(trace["trace"].as_array().unwrap().last().unwrap(), "h6");
}

#[test]
fn tdsigma_subcommand() {
    let out = teachdim(&[
        "tdsigma",
        "--class",
        "warmuth",
        "--sigma",
        "warmuth-lvs",
        "--h0",
        "h1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["td_sigma"], 1);
}

#[test]
fn check_collusion_subcommand() {
    // The gap6 curated lvs table keeps the learner on its current hypothesis
    // whenever it stays consistent, so it passes.
    let out = teachdim(&[
        "check-collusion",
        "--class",
        "gap6",
        "--sigma",
        "gap6-lvs",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["collusion_free"], true);

    // The hand-built warmuth lvs table teaches every target in one example
    // but is not collusion-free: after (x1,1) pins {h1}, the h1-consistent
    // example (x2,1) leaves {h1,h6} tied at rank 0.
    let out = teachdim(&[
        "check-collusion",
        "--class",
        "warmuth",
        "--sigma",
        "warmuth-lvs",
    ]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["collusion_free"], false);
    let cx = &value["counterexample"];
    assert_eq!(cx["preferred"], "h1");
    assert_eq!(
        cx["resulting_preferred"],
        serde_json::json!(["h1", "h6"])
    );
}

#[test]
fn partition_subcommand() {
    let out = teachdim(&["partition", "--class", "warmuth", "--h0", "h1"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["blocks"].as_array().unwrap().len(), 6);
}

#[test]
fn corpus_list_and_dump() {
    let out = teachdim(&["corpus", "list"]);
    assert!(out.status.success());
    let list = stdout_json(&out);
    let names: Vec<&str> = list
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"warmuth"));
    assert!(names.contains(&"gap6-lvs"));
    assert!(names.contains(&"warmuth-s-gvs"));

    let out = teachdim(&["corpus", "dump", "--name", "gap6"]);
    assert!(out.status.success());
    let class = stdout_json(&out);
    assert_eq!(class["hypotheses"].as_array().unwrap().len(), 6);
}

#[test]
fn build_local_powerset_subcommand() {
    let out = teachdim(&["build-local-powerset", "--k", "3"]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["plans"].as_array().unwrap().len(), 8);
}

#[test]
fn validation_errors_exit_one() {
    let out = teachdim(&["dims", "--class", "no-such-class"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = teachdim(&["tdsigma", "--class", "warmuth", "--sigma", "warmuth-lvs", "--h0", "h99"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn capacity_errors_exit_two() {
    let out = teachdim(&["dims", "--class", "powerset-5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repro_subcommand_is_clean_and_deterministic() {
    let first = teachdim(&["repro"]);
    assert!(first.status.success(), "repro reported mismatches");
    let second = teachdim(&["repro"]);
    assert_eq!(first.stdout, second.stdout, "repro must be byte-identical");
    let report = stdout_json(&first);
    assert_eq!(report["mismatches"], 0);
}

#[test]
fn json_flag_writes_to_file() {
    let dir = std::env::temp_dir().join("teachdim-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bound.json");
    let out = teachdim(&["bound", "--d", "4", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["k_min"], 1);
}

#[test]
fn file_classes_load_from_csv_and_json() {
    let dir = std::env::temp_dir().join("teachdim-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("class.csv");
    std::fs::write(&csv_path, "a,b\nfirst,0,1\nsecond,1,1\n").unwrap();
    let out = teachdim(&["dims", "--class", csv_path.to_str().unwrap()]);
    assert!(out.status.success());
    let value = stdout_json(&out);
    assert_eq!(value["td"], 1);
}
