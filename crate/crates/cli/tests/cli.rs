use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const SEVEN: &str = "a^3*b^2, c^3*d, a*c^2, a^2*c, b^2*d, a*b*c, b*c*d";

fn monores(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monores")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

#[test]
fn betti_json_of_seven_generator_ideal() {
    let o = monores(&["betti", "--format", "json", SEVEN]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["pd"], 3);
    assert_eq!(v["field"], "Q");
    assert_eq!(v["totals"], serde_json::json!([1, 7, 9, 3]));
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 20);
    assert!(entries.iter().all(|e| e["count"] == 1));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["field", "pd", "totals", "entries"]);
}

#[test]
fn pd_of_seven_variable_dominant_ideal() {
    let ideal = "a^3*c^2*d^2*e^2*f^2*g^2, a^2*b^3*d^2*e^2*f^2*g^2, a^2*b^2*c^3*e^2*f^2*g^2, \
                 a^2*b^2*c^2*d^3*f^2*g^2, a^2*b^2*c^2*d*e^3*g^2, b^2*c^2*d^2*e^2*g^3";
    let o = monores(&["pd", ideal]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn random_verification_succeeds() {
    let o = monores(&["verify", "--count", "100", "--vars", "4", "--max-gens", "6"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o), "100 ideals, 0 mismatches\n");
}

#[test]
fn verify_one_ideal_over_prime_field() {
    let o = monores(&["verify", "--field", "Fp:2", "--format", "json", SEVEN]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["agree"], true);
    for m in ["decompose", "oracle", "cancel"] {
        assert_eq!(v["tables"][m]["field"], "Fp:2");
    }
}

#[test]
fn syntax_error_is_a_usage_error() {
    let o = monores(&["betti", "a^^2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column 3"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(monores(&["betti", "--field", "Fp:4", "a"]).status.code(), Some(2));
    assert_eq!(monores(&["betti", "--method", "magic", "a"]).status.code(), Some(2));
    assert_eq!(monores(&["pd", "--format", "dot", "a"]).status.code(), Some(2));
    assert_eq!(monores(&["random", "--artinian", "--almost-generic"]).status.code(), Some(2));
    assert_eq!(monores(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn generator_cap_is_a_resource_error() {
    let o = monores(&["betti", "--max-gens", "3", SEVEN]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn non_minimal_input_warns_on_stderr() {
    let o = monores(&["betti", "--format", "json", "c^2, c, d, c, c*d"]);
    assert!(o.status.success());
    assert!(stderr(&o).starts_with("warning:"));
    let v = json(&o);
    assert_eq!(v["totals"], serde_json::json!([1, 2, 1]));
}

#[test]
fn file_and_stdin_input() {
    let dir = std::env::temp_dir().join(format!("monores-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ideal.txt");
    std::fs::write(&path, format!("# the seven-generator ideal\n{SEVEN}\n")).unwrap();
    let from_file = monores(&["betti", path.to_str().unwrap()]);
    assert!(from_file.status.success());

    let mut child = Command::new(env!("CARGO_BIN_EXE_monores"))
        .args(["betti", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(SEVEN.as_bytes()).unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert_eq!(stdout(&from_file), stdout(&from_stdin));
    assert_eq!(stdout(&from_file), stdout(&monores(&["betti", SEVEN])));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn json_ideal_input() {
    let text = r#"{"variables": ["x", "y"], "generators": [[2, 0], [1, 1], [0, 2]]}"#;
    let o = monores(&["pd", text]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn decomposition_outputs() {
    let first = monores(&["decompose", "--format", "json", SEVEN]);
    assert!(first.status.success());
    assert_eq!(json(&first).as_array().unwrap().len(), 4);

    let tree = monores(&["decompose", "--tree", "--format", "json", SEVEN]);
    let v = json(&tree);
    assert_eq!(v["kind"], "internal");
    assert_eq!(v["j"], 0);
    assert!(v["children"].is_array());

    let dot = monores(&["decompose", "--tree", "--format", "dot", SEVEN]);
    assert!(stdout(&dot).starts_with("digraph decomposition {"));
}

#[test]
fn classify_report() {
    let o = monores(&["classify", "--format", "json", SEVEN]);
    let v = json(&o);
    assert_eq!(v["class"], "semidominant");
    assert_eq!(v["p"], 5);
    assert_eq!(v["q"], 7);
    let pivot = monores(&["classify", "--format", "json", "x1^3, x1*x2, x1*x3, x1*x4, x1*x5, x2*x4, x3*x5"]);
    assert_eq!(json(&pivot)["pdn_pivot"], 0);
}

#[test]
fn scarf_faces_of_a_path() {
    let o = monores(&["scarf", "--format", "json", "a*b, b*c"]);
    assert_eq!(json(&o).as_array().unwrap().len(), 4);
}

#[test]
fn fuzz_reports_are_deterministic() {
    let args = ["conjectures", "--count", "12", "--seed", "5", "--format", "json"];
    let a = monores(&args);
    let b = monores(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let reports = json(&a);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for (r, name) in reports.iter().zip(["C1", "C2", "C3"]) {
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["conjecture", "tested", "counterexamples"]);
        assert_eq!(r["conjecture"], name);
    }
}

#[test]
fn random_ideals_are_reproducible() {
    let a = monores(&["random", "--count", "5", "--seed", "9", "--semidominant", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, monores(&["random", "--count", "5", "--seed", "9", "--semidominant", "2"]).stdout);
    assert_eq!(stdout(&a).lines().count(), 5);
}
