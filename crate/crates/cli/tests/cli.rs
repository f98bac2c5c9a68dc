use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn gmorita(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmorita"))
        .args(args)
        .output()
        .expect("gmorita runs")
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = gmorita(&all);
    let v = serde_json::from_slice(&out.stdout).expect("JSON report");
    (v, out.status.code().unwrap())
}

fn names(report: &Value) -> Vec<String> {
    report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn validate_e1_algebra_passes() {
    let (r, code) = json_of(&["validate", &fixture("e1.json"), "algebra:A"]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["status"], "pass");
    assert_eq!(names(&r), ["Associativity", "Grading", "Unit", "UnitDegree"]);
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"algebras\": [").unwrap();
    let out = gmorita(&["validate", path.to_str().unwrap(), "A"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gmorita(&["validate", "/nonexistent/workspace.json", "A"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_keys_and_kind_mismatches_exit_three() {
    assert_eq!(gmorita(&["validate", &fixture("e1.json"), "B"]).status.code(), Some(3));
    assert_eq!(gmorita(&["validate", &fixture("e1.json"), "module:A"]).status.code(), Some(3));
    assert_eq!(gmorita(&["morita", &fixture("e1.json"), "A", "check"]).status.code(), Some(3));
    assert_eq!(gmorita(&["analyze", &fixture("e3.json"), "P3", "centralizer"]).status.code(), Some(3));
}

#[test]
fn broken_associativity_is_reported() {
    let (r, code) = json_of(&["validate", &fixture("broken-assoc.json"), "context:ctx"]);
    assert_eq!(code, 1);
    let assoc = r["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == "Associativity")
        .unwrap();
    assert_eq!(assoc["status"], "fail");
    assert_eq!(assoc["anchor"], "(m̃m̃′)ñ = m̃(m̃′ñ)");
    assert!(assoc["witness"].is_object());
    let text = String::from_utf8(gmorita(&["validate", &fixture("broken-assoc.json"), "ctx"]).stdout).unwrap();
    assert!(text.contains("(m̃m̃′)ñ = m̃(m̃′ñ)"));
}

#[test]
fn centralizer_of_e2() {
    let (r, code) = json_of(&["analyze", &fixture("e2.json"), "A", "centralizer"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["dims"], serde_json::json!([2, 0]));
    assert_eq!(r["result"]["crossed_product"], true);
}

#[test]
fn stabilizers() {
    let (r, _) = json_of(&["analyze", &fixture("e3.json"), "P3", "stabilizer"]);
    assert_eq!(r["result"]["members"], serde_json::json!(["1"]));
    let (r, _) = json_of(&["analyze", &fixture("e1.json"), "A", "stabilizer"]);
    assert_eq!(r["result"]["members"], serde_json::json!(["1", "s"]));
    assert_eq!(r["result"]["whole_group"], true);
}

#[test]
fn morita_levels_on_fixtures() {
    let (r, code) = json_of(&["morita", &fixture("e1-ctx.json"), "ctx", "morita1"]);
    assert_eq!(code, 0, "{r}");
    assert!(names(&r).contains(&"A.Unit".to_string()));
    let (r, code) = json_of(&["morita", &fixture("e2-ctx.json"), "ctx", "morita2"]);
    assert_eq!(code, 0, "{r}");
    assert!(names(&r).contains(&"Alpha.Zeta".to_string()));
    let (r, code) = json_of(&["morita", &fixture("zero-f.json"), "ctx", "surjective"]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["surjective"], false);
    let (r, code) = json_of(&["morita", &fixture("zero-f.json"), "ctx", "morita1"]);
    assert_eq!(code, 1);
    assert!(names(&r).iter().all(|n| n.starts_with("Surjective")));
}

#[test]
fn samples_flag_selects_modules() {
    let (r, code) = json_of(&["morita", &fixture("e1-ctx.json"), "ctx", "morita1", "--samples", "A"]);
    assert_eq!(code, 0);
    assert_eq!(names(&r), ["A.Counit", "A.Suspension.1", "A.Suspension.s", "A.Unit", "A→A.FullyFaithful", "A→A.HomGraded", "A→A.HomOverC"]);
    let out = gmorita(&["morita", &fixture("e1-ctx.json"), "ctx", "morita1", "--samples", "P.m"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn entries_are_sorted_and_reports_deterministic() {
    let args = ["--json", "morita", &fixture("e2-ctx.json"), "ctx", "morita2"];
    let first = gmorita(&args).stdout;
    assert_eq!(first, gmorita(&args).stdout);
    let r: Value = serde_json::from_slice(&first).unwrap();
    let n = names(&r);
    let mut sorted = n.clone();
    sorted.sort();
    assert_eq!(n, sorted);
}

#[test]
fn derived_context_round_trips_through_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ctx.json");
    let (r, code) = json_of(&["analyze", &fixture("e3.json"), "A", "context", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["canonical"], true);
    assert_eq!(r["result"]["surjective"], true);
    let out = out.to_str().unwrap();
    assert_eq!(gmorita(&["validate", out, "A.ctx"]).status.code(), Some(0));
    assert_eq!(gmorita(&["validate", out, "A.m"]).status.code(), Some(0));
    assert_eq!(gmorita(&["morita", out, "A.ctx", "morita2", "--samples", "A,P3"]).status.code(), Some(0));
}

#[test]
fn p3_context_is_graded_but_not_surjective() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p3.json");
    let (r, code) = json_of(&["analyze", &fixture("e3.json"), "P3", "context", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["canonical"], false);
    assert_eq!(r["result"]["surjective"], false);
    assert_eq!(r["result"]["progenerator"], false);
    assert_eq!(gmorita(&["morita", out.to_str().unwrap(), "P3.ctx", "surjective"]).status.code(), Some(1));
}

#[test]
fn field_flag_reinterprets_workspace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f2.json");
    let text = std::fs::read_to_string(fixture("e1.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("field");
    v["algebras"]["A"].as_object_mut().unwrap().remove("field");
    for row in v["algebras"]["A"]["structconst"].as_array_mut().unwrap() {
        for cell in row.as_array_mut().unwrap() {
            for x in cell.as_array_mut().unwrap() {
                *x = Value::from(if x == "1/1" { 1 } else { 0 });
            }
        }
    }
    v["algebras"]["A"]["unit"] = serde_json::json!([1, 0]);
    std::fs::write(&path, v.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let (r, code) = json_of(&["--field", "Fp:2", "analyze", p, "A", "hom"]);
    assert_eq!(code, 0);
    let entry = &r["result"]["basis"][0]["matrix"][0][0];
    assert!(entry.as_str().unwrap().ends_with("mod 2"), "{entry}");
    assert_eq!(gmorita(&["--field", "Fp:4", "validate", p, "A"]).status.code(), Some(2));
}
