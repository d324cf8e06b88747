use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn modrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn analyze_json(args: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut all = vec!["analyze"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let o = modrep(&all);
    let text = fs::read_to_string(&out).unwrap_or_default();
    let json = serde_json::from_str(&text).unwrap_or(Value::Null);
    (o.status.code().unwrap(), json, text)
}

#[test]
fn a4_over_gf4_seed_7() {
    let (code, r, _) = analyze_json(&[
        "--builtin",
        "A4",
        "--char",
        "2",
        "--degree",
        "2",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], "modrep-report/1");
    assert_eq!(
        r["cartan"],
        serde_json::json!([[2, 1, 1], [1, 2, 1], [1, 1, 2]])
    );
    assert_eq!(r["blocks"]["parts"].as_array().unwrap().len(), 1);
    assert_eq!(r["input"]["seed"], 7);
    assert!(r.get("timings").is_none());
    for c in r["certificates"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{c}");
    }
}

#[test]
fn c5_regular_module_is_uniserial() {
    let (code, r, _) = analyze_json(&["--builtin", "C5", "--char", "5"]);
    assert_eq!(code, 0);
    let layers = r["pims"][0]["loewy_layers"].as_array().unwrap();
    assert_eq!(layers.len(), 5);
    for layer in layers {
        assert_eq!(layer, &serde_json::json!([{"simple": "S1", "mult": 1}]));
    }
}

#[test]
fn trivial_group() {
    let (code, r, _) = analyze_json(&["--builtin", "C1", "--char", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["simples"].as_array().unwrap().len(), 1);
    assert_eq!(r["cartan"], serde_json::json!([[1]]));
    assert_eq!(r["blocks"]["parts"].as_array().unwrap().len(), 1);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = [
        "--builtin",
        "A5",
        "--char",
        "2",
        "--degree",
        "2",
        "--seed",
        "3",
    ];
    let (_, _, first) = analyze_json(&args);
    let (_, _, second) = analyze_json(&args);
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn timings_only_on_request() {
    let (_, r, _) = analyze_json(&["--builtin", "S3", "--char", "3", "--timings"]);
    assert!(r["timings"].as_object().unwrap().contains_key("simples"));
}

#[test]
fn group_file_and_label_map() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("s3.json");
    fs::write(&g, r#"{"degree": 3, "generators": ["(1,2,3)", "(1,2)"]}"#).unwrap();
    let (code, r, _) = analyze_json(&[
        "--group-file",
        g.to_str().unwrap(),
        "--char",
        "3",
        "--label-map",
        "S1=triv,S2=sign",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["group_order"], 6);
    assert_eq!(r["simples"][0]["label"], "triv");
    assert_eq!(r["simples"][1]["label"], "sign");
    assert_eq!(r["pims"][1]["head"], "sign");
}

#[test]
fn text_format_renders_layers() {
    let o = modrep(&[
        "analyze",
        "--builtin",
        "A4",
        "--char",
        "2",
        "--degree",
        "2",
        "--format",
        "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("S1 | S2+S3 | S1"), "{text}");
}

fn assert_input_error(args: &[&str], kind: &str) {
    let o = modrep(args);
    assert_eq!(o.status.code(), Some(1), "{args:?}");
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("error: {kind}:")), "{err}");
}

#[test]
fn input_errors_exit_1_with_one_line() {
    assert_input_error(&["analyze", "--builtin", "A4", "--char", "4"], "NotPrime");
    assert_input_error(
        &["analyze", "--builtin", "Q8", "--char", "2"],
        "UnknownGroup",
    );
    assert_input_error(&["analyze", "--char", "2"], "Usage");
    assert_input_error(
        &[
            "analyze",
            "--builtin",
            "C2",
            "--char",
            "2",
            "--modulus",
            "1,0,1",
        ],
        "DegreeMismatch",
    );
    assert_input_error(
        &[
            "analyze",
            "--builtin",
            "C2",
            "--char",
            "2",
            "--degree",
            "2",
            "--modulus",
            "1,0,1",
        ],
        "ReducibleModulus",
    );
    assert_input_error(&["check", "--suite", "nope"], "Usage");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    assert_input_error(
        &[
            "analyze",
            "--group-file",
            bad.to_str().unwrap(),
            "--char",
            "2",
        ],
        "Parse",
    );
    fs::write(&bad, r#"{"degree": 3, "generators": ["(1,4)"]}"#).unwrap();
    let o = modrep(&[
        "analyze",
        "--group-file",
        bad.to_str().unwrap(),
        "--char",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn non_splitting_field_is_an_input_error() {
    assert_input_error(
        &["analyze", "--builtin", "A4", "--char", "2"],
        "SplittingFieldRequired",
    );
}

#[test]
fn injected_fault_writes_report_and_exits_2() {
    let (code, r, _) = analyze_json(&[
        "--builtin",
        "A4",
        "--char",
        "2",
        "--degree",
        "2",
        "--inject-fault",
        "cartan",
    ]);
    assert_eq!(code, 2);
    let failed: Vec<&str> = r["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"cartan_methods_agree"));
    assert!(failed.contains(&"cartan_symmetric"));
}

#[test]
fn check_paper_passes() {
    let o = modrep(&["check", "--suite", "paper"]);
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.lines().all(|l| !l.contains("FAIL")));
    assert!(out.contains("A5 Cartan"));
}

#[test]
fn check_paper_with_fault_names_the_table() {
    let o = modrep(&["check", "--suite", "paper", "--inject-fault", "cartan"]);
    assert_eq!(o.status.code(), Some(2));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("FAIL A4 Cartan"), "{out}");
    assert!(out.contains("FAIL A5 Cartan"), "{out}");
}

#[test]
fn check_properties_same_pass_set_for_three_seeds() {
    let run = |seed: &str| {
        let o = modrep(&["check", "--suite", "properties", "--seed", seed]);
        assert_eq!(o.status.code(), Some(0));
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .map(|l| l.split(':').next().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    let a = run("0");
    assert_eq!(run("11"), a);
    assert_eq!(run("12345"), a);
}
