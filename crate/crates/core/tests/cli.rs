use std::path::PathBuf;

use dgframes::cli::{run, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dgframes").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn validate_exit_codes() {
    let (code, out, _) = invoke(&["validate", "--input", &fixture("strict_2simplex.json")]);
    assert_eq!(code, EXIT_PASS);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report.as_array().unwrap().len(), 4);

    let (code, out, _) = invoke(&["validate", "--input", &fixture("corrupted_2simplex.json")]);
    assert_eq!(code, EXIT_FAIL);
    let report: Value = serde_json::from_str(&out).unwrap();
    let failed: Vec<&str> = report
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["status"] == "fail")
        .map(|i| i["location"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["0,1,2"]);
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ \"n\": 1, ").unwrap();
    let (code, _, err) = invoke(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 1"), "{err}");

    let (code, _, _) = invoke(&["validate", "--input", "/nonexistent/simplex.json"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["validate", "--no-such-flag"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["frame", "--input", &fixture("times_two.json"), "--alpha", "0,2"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["frame", "--input", &fixture("times_two.json"), "--alpha", "1,0"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn frame_of_an_edge_is_the_cylinder() {
    let (code, out, _) = invoke(&["frame", "--input", &fixture("times_two.json"), "--alpha", "0,1"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["complex"]["labels"]["0"], serde_json::json!(["0:e0", "1:e0"]));
    assert_eq!(v["complex"]["labels"]["1"], serde_json::json!(["0,1:e0"]));
    assert_eq!(v["complex"]["differentials"]["1"], serde_json::json!([[-1], [2]]));
    assert_eq!(v["homology"], serde_json::json!({ "0": "Z" }));
}

#[test]
fn frame_of_a_degenerate_point() {
    let (code, out, _) = invoke(&["frame", "--input", &fixture("point.json"), "--alpha", "0,0,0"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["complex"]["degrees"], serde_json::json!({ "0": 3, "1": 3, "2": 1 }));
    assert_eq!(v["homology"], serde_json::json!({ "0": "Z" }));

    let (code, out, _) = invoke(&["frame", "--input", &fixture("strict_2simplex.json"), "--alpha", "1"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["complex"]["degrees"], serde_json::json!({ "0": 1, "1": 1 }));
    assert_eq!(v["complex"]["differentials"]["1"], serde_json::json!([[2]]));
}

#[test]
fn check_suite() {
    for input in ["strict_2simplex.json", "point.json", "times_two.json"] {
        let (code, out, _) = invoke(&["check", "--input", &fixture(input), "--max-len", "3"]);
        assert_eq!(code, EXIT_PASS, "{input}: {out}");
    }
    let (code, out, _) = invoke(&["check", "--seed", "3", "--dim", "2"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    let (code, out, _) = invoke(&["check", "--input", &fixture("corrupted_2simplex.json"), "--format", "text"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("FAIL maurer_cartan [0,1,2]"));
}

#[test]
fn recover_multiplication_by_two() {
    let (code, out, _) = invoke(&["recover", "--input", &fixture("times_two.json")]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["recovered"]["matrices"], serde_json::json!({ "0": [[2]] }));
    assert_eq!(v["homotopic"], true);
    let (code, _, _) = invoke(&["recover", "--input", &fixture("strict_2simplex.json")]);
    assert_eq!(code, EXIT_INPUT);
    let (code, out, _) = invoke(&["recover", "--seed", "5", "--dim", "1"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["homotopic"], true);
}

#[test]
fn homology_tables() {
    let (code, out, _) = invoke(&["homology", "--input", &fixture("two_term.json"), "--format", "text"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out, "T\n  H_0 = Z/2\n");
    let (code, out, _) = invoke(&["homology", "--input", &fixture("times_two.json"), "--alpha", "0,1"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["homology"], serde_json::json!({ "0": "Z" }));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let a = invoke(&["check", "--seed", "11", "--dim", "3", "--max-len", "2"]);
    let b = invoke(&["check", "--seed", "11", "--dim", "3", "--max-len", "2"]);
    assert_eq!(a, b);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let (code, _, _) = invoke(&["generate", "--seed", "2", "--dim", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let (code, out, _) = invoke(&["validate", "--input", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.ends_with("4 checks, 0 failed\n"));
}
