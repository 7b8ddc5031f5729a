use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffscale"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&ok(&all)).unwrap()
}

fn fails_with(args: &[&str], code: i32) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stderr).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

#[test]
fn catalog_is_deterministic_and_complete() {
    let a = ok(&["catalog", "--resolution", "256", "--format", "csv"]);
    let b = ok(&["catalog", "--resolution", "256", "--format", "csv"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 22);
    let row = a.lines().find(|l| l.starts_with("if-xl-c704,")).unwrap();
    let share: f64 = row.split(',').nth(9).unwrap().parse().unwrap();
    assert!((share - 0.12).abs() < 0.05, "{share}");
}

#[test]
fn catalog_rejects_off_grid_resolution() {
    let err = fails_with(&["catalog", "--resolution", "255"], 3);
    assert!(err.contains("granularity"), "{err}");
}

#[test]
fn analyze_reference_architecture() {
    let r = json(&[
        "analyze",
        "--builtin",
        "sdxl-c320-td0_2_10",
        "--resolution",
        "256",
    ]);
    assert!((num(&r["params"]) / 2.39e9 - 1.0).abs() < 0.03);
    assert!((num(&r["total_macs"]) / 198e9 - 1.0).abs() < 0.05);
}

#[test]
fn analyze_reports_ratios_against_family_baseline() {
    let r = json(&["analyze", "--builtin", "sdxl-td4_4"]);
    assert_eq!(r["ratios"]["baseline"], "sdxl-c320-td0_2_10");
    let p = num(&r["ratios"]["params_ratio"]);
    let m = num(&r["ratios"]["macs_ratio"]);
    assert!((0.52..=0.58).contains(&p), "{p}");
    assert!((0.69..=0.75).contains(&m), "{m}");
}

#[test]
fn malformed_spec_lists_violations() {
    let path = data("bad_spec.toml");
    let err = fails_with(&["analyze", "--spec", path.to_str().unwrap()], 3);
    assert!(err.contains("transformer_depth"), "{err}");
    assert!(
        err.lines()
            .filter(|l| l.trim_start().starts_with("- "))
            .count()
            >= 2,
        "{err}"
    );
}

#[test]
fn missing_input_is_an_io_error() {
    fails_with(&["analyze", "--spec", "/definitely/not/here.toml"], 4);
}

#[test]
fn spec_record_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&["analyze", "--builtin", "if-xl-c512"]);
    let spec_path = dir.path().join("if.json");
    std::fs::write(&spec_path, serde_json::to_string(&r["spec"]).unwrap()).unwrap();
    let again = json(&["analyze", "--spec", spec_path.to_str().unwrap()]);
    assert_eq!(again["params"], r["params"]);
    assert_eq!(again["total_macs"], r["total_macs"]);
    assert_eq!(again["spec"], r["spec"]);
}

#[test]
fn enumerated_specs_match_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let specs = dir.path().join("specs");
    let r = json(&[
        "enumerate",
        "--channels",
        "320",
        "--td",
        "0,4,4",
        "--td",
        "0,4,12",
        "--write-specs",
        specs.to_str().unwrap(),
    ]);
    assert_eq!(r["variants"].as_array().unwrap().len(), 2);
    let file = specs.join("c320-td0_4_4.toml");
    let from_file = json(&["analyze", "--spec", file.to_str().unwrap()]);
    let builtin = json(&["analyze", "--builtin", "sdxl-td4_4"]);
    assert_eq!(from_file["total_macs"], builtin["total_macs"]);
}

#[test]
fn end_to_end_scaling_recovers_data_law() {
    let path = data("data_law.csv");
    let r = json(&["fit", path.to_str().unwrap(), "--predict-at", "1,10000"]);
    assert!((num(&r["fit"]["a"]) - 0.64).abs() < 1e-9);
    assert!((num(&r["fit"]["b"]) - 0.03).abs() < 1e-9);
    assert_eq!(r["frontier"].as_array().unwrap().len(), 5);
    let pred = &r["predictions"][0];
    assert!((num(&pred[1]) - 0.64).abs() < 1e-9);
}

#[test]
fn dominated_point_leaves_the_frontier() {
    let path = data("three_points.csv");
    let r = json(&["pareto", path.to_str().unwrap()]);
    let labels: Vec<&str> = r["frontier"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["small", "big"]);
}

#[test]
fn zero_score_is_a_domain_error_naming_the_record() {
    let path = data("zero_score.csv");
    let err = fails_with(&["fit", path.to_str().unwrap()], 5);
    assert!(err.contains("broken"), "{err}");
}

#[test]
fn published_law_prediction() {
    let r = json(&[
        "predict", "--law", "compute", "--x", "1e13", "--target", "0.8549",
    ]);
    assert!((num(&r["predictions"][0]["score"]) - 0.85526).abs() < 1e-4);
    assert!((num(&r["inversions"][0]["x"]) / 1e13 - 1.0).abs() < 0.03);
}

#[test]
fn training_budget() {
    let r = json(&[
        "budget",
        "--macs",
        "86000000000",
        "--batch-size",
        "2048",
        "--steps",
        "600000",
    ]);
    assert!((num(&r["total_flops"]) / 6.34e20 - 1.0).abs() < 0.005);
    fails_with(
        &["budget", "--macs", "0", "--batch-size", "1", "--steps", "1"],
        5,
    );
}

#[test]
fn convergence_speedups() {
    let path = data("curves.csv");
    let r = json(&[
        "curves",
        path.to_str().unwrap(),
        "--threshold",
        "0.82",
        "--baseline",
        "sdxl",
        "--macs",
        "sdxl=198e9",
        "--macs",
        "sd2-c512=219e9",
    ]);
    let rows = r["curves"].as_array().unwrap();
    let get = |label: &str| rows.iter().find(|c| c["label"] == label).unwrap();
    // slowdowns relative to sdxl are the reciprocals of its speedups
    assert_eq!(num(&get("sd2")["speedup"]), 1.0 / 6.0);
    assert_eq!(num(&get("sd2-c512")["speedup"]), 1.0 / 3.0);
    let ratio =
        num(&get("sdxl")["flops_to_threshold"]) / num(&get("sd2-c512")["flops_to_threshold"]);
    assert!((ratio - 0.3014).abs() < 1e-3, "{ratio}");
    assert!(get("sd2")["flops_to_threshold"].is_null());
}

#[test]
fn corpus_statistics() {
    let corpus = data("corpus.jsonl");
    let lexicon = data("lexicon.txt");
    let args = [
        "corpus-stats",
        corpus.to_str().unwrap(),
        "--lexicon",
        lexicon.to_str().unwrap(),
    ];
    let plain = json(&args);
    assert_eq!(plain["n_images"], 3);
    assert_eq!(plain["image_noun_pairs"], 3);
    assert_eq!(num(&plain["mean_aesthetic"]), 6.0);
    assert_eq!(plain["missing_aesthetic"], 1);

    let dir = tempfile::tempdir().unwrap();
    let mut with = args.to_vec();
    with.extend([
        "--with-synthetic",
        "--shards",
        "2",
        "--histograms",
        dir.path().to_str().unwrap(),
    ]);
    let rich = json(&with);
    assert_eq!(rich["image_noun_pairs"], 7);
    assert_eq!(rich["unique_nouns"], 7);
    let words = std::fs::read_to_string(dir.path().join("synthetic_words.csv")).unwrap();
    assert_eq!(words, "bin,count\n5,1\n7,1\n8,1\n");
}

#[test]
fn mixing_simulation_needs_a_seed_and_reproduces() {
    let corpus = data("corpus.jsonl");
    let c = corpus.to_str().unwrap();
    fails_with(&["mix-sim", c], 2);
    let run_once = || {
        ok(&[
            "mix-sim", c, "--seed", "7", "--epochs", "500", "--format", "csv",
        ])
    };
    assert_eq!(run_once(), run_once());
    let other = ok(&[
        "mix-sim", c, "--seed", "8", "--epochs", "500", "--format", "csv",
    ]);
    assert_ne!(run_once(), other);
    let top1 = json(&[
        "mix-sim", c, "--seed", "7", "--policy", "top1", "--epochs", "500",
    ]);
    let counts = top1["counts"].as_array().unwrap();
    assert!(counts[2..].iter().all(|c| c["count"] == 0));
    fails_with(
        &["mix-sim", c, "--seed", "7", "--alt-probability", "1.5"],
        5,
    );
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.csv");
    ok(&[
        "catalog",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, ok(&["catalog", "--format", "csv"]));
}
