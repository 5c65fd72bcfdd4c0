use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use uneval_core::{parse_json, parse_json_str, JsonValue};

const SALE_CAR: &str = r##"{"anyOf":[{"$ref":"#sale"},{"$ref":"#car"}],"unevaluatedProperties":false,
  "$defs":{"sale":{"$anchor":"sale","properties":{"price":{"type":"integer"}}},
           "car":{"$anchor":"car","properties":{"plate":{"type":"string"}}}}}"##;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uneval")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> JsonValue {
    parse_json(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_reports_annotations_and_exit_status() {
    let dir = TempDir::new().unwrap();
    let schema = write(dir.path(), "s.json", SALE_CAR);
    let good = write(dir.path(), "good.json", r#"{"price":100,"plate":"x111"}"#);
    let bad = write(dir.path(), "bad.json", r#"{"price":100,"color":"red"}"#);

    let out = run(&["validate", "--schema", s(&schema), "--instance", s(&good)]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report.as_object().unwrap()["valid"], JsonValue::Bool(true));
    assert_eq!(report.as_object().unwrap()["evaluatedProperties"], parse_json_str(r#"["plate","price"]"#).unwrap());

    let out = run(&["validate", "--schema", s(&schema), "--instance", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report.as_object().unwrap()["evaluatedProperties"], JsonValue::Array(vec![]));
}

#[test]
fn eliminate_writes_schema_and_stats() {
    let dir = TempDir::new().unwrap();
    let schema = write(dir.path(), "s.json", SALE_CAR);

    let out = run(&["eliminate", "--schema", s(&schema)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("unevaluated"));
    parse_json_str(&text).unwrap();

    let out = run(&["eliminate", "--schema", s(&schema), "--stats"]);
    assert_eq!(out.status.code(), Some(0));
    let both = stdout_json(&out);
    let stats = both.as_object().unwrap()["stats"].as_object().unwrap().clone();
    for key in ["input_bytes", "output_bytes", "size_ratio", "elapsed_ms", "enf_branches"] {
        assert!(stats.contains_key(key), "missing {key}");
    }
    assert_eq!(stats["enf_branches"], parse_json_str(r##"{"#":3}"##).unwrap());

    let target = dir.path().join("out.json");
    let out = run(&["eliminate", "--schema", s(&schema), "-o", s(&target), "--stats"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out).as_object().unwrap().contains_key("size_ratio"));
    let written = parse_json(&fs::read(&target).unwrap()).unwrap();
    assert!(written.as_object().unwrap().contains_key("anyOf"));
}

#[test]
fn enf_prints_branches() {
    let dir = TempDir::new().unwrap();
    let schema = write(
        dir.path(),
        "s.json",
        r##"{"items":{"$ref":"#/$defs/r"},"$defs":{"r":{"anyOf":[{"properties":{"a":{}}},{"properties":{"b":{}}}]}}}"##,
    );
    let out = run(&["enf", "--schema", s(&schema), "--pointer", "/$defs/r"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out).as_object().unwrap()["branches"], JsonValue::from_i64(3));

    let out = run(&["enf", "--schema", s(&schema), "--pointer", "/properties/x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_lists_every_named_schema() {
    let dir = TempDir::new().unwrap();
    let schema = write(dir.path(), "s.json", SALE_CAR);
    let out = run(&["analyze", "--schema", s(&schema)]);
    assert_eq!(out.status.code(), Some(0));
    let entries = stdout_json(&out);
    let entries = entries.as_array().unwrap();
    assert_eq!(entries.len(), 3);
    // unevaluatedProperties evaluates every property.
    let root = entries[0].as_object().unwrap();
    assert_eq!(root["exEP"], parse_json_str(r#"[".*"]"#).unwrap());
    let sale = entries.iter().find(|e| e.as_object().unwrap()["target"] == JsonValue::string("#/$defs/sale")).unwrap();
    assert_eq!(sale.as_object().unwrap()["exEP"], parse_json_str(r#"["^price$"]"#).unwrap());

    let branching = write(dir.path(), "b.json", r#"{"anyOf":[{"properties":{"a":{}}},{"properties":{"b":{}}}]}"#);
    let out = run(&["analyze", "--schema", s(&branching)]);
    let entries = stdout_json(&out);
    let root = entries.as_array().unwrap()[0].as_object().unwrap().clone();
    assert_eq!(root["exEP"], JsonValue::string("undefined"));
    assert_eq!(root["minEP"], JsonValue::Array(vec![]));
}

#[test]
fn difftest_over_directory_and_enumeration() {
    let dir = TempDir::new().unwrap();
    let schema = write(dir.path(), "s.json", SALE_CAR);
    let instances = dir.path().join("inst");
    fs::create_dir(&instances).unwrap();
    write(&instances, "a.json", r#"{"price":100,"plate":"x111"}"#);
    write(&instances, "b.json", r#"{"color":1}"#);
    write(&instances, "broken.json", "{");

    let out = run(&["difftest", "--schema", s(&schema), "--instances", s(&instances)]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let report = report.as_object().unwrap();
    assert_eq!(report["instances_total"], JsonValue::from_i64(2));
    assert_eq!(report["disagree"], JsonValue::from_i64(0));
    assert_eq!(report["errors"].as_array().unwrap().len(), 1);

    let out = run(&["difftest", "--schema", s(&schema)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out).as_object().unwrap()["disagree"], JsonValue::from_i64(0));

    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let out = run(&["difftest", "--schema", s(&schema), "--instances", s(&empty)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn gen_family_prints_members() {
    let out = run(&["gen-family", "--kind", "sn", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc.as_object().unwrap()["anyOf"].as_array().unwrap().len(), 3);

    let out = run(&["gen-family", "--kind", "san", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out).as_object().unwrap()["$defs"].as_object().unwrap().len(), 2);
}

#[test]
fn usage_and_schema_errors_exit_with_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["gen-family", "--kind", "sn", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(run(&["eliminate", "--schema", s(&missing)]).status.code(), Some(2));

    let dynamic = write(dir.path(), "dyn.json", r##"{"$dynamicRef":"#x"}"##);
    let out = run(&["eliminate", "--schema", s(&dynamic)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let cyclic = write(dir.path(), "cyc.json", r##"{"$ref":"#/$defs/a","$defs":{"a":{"$ref":"#/$defs/a"}}}"##);
    assert_eq!(run(&["validate", "--schema", s(&cyclic), "--instance", s(&missing)]).status.code(), Some(2));
    let inst = write(dir.path(), "i.json", "1");
    assert_eq!(run(&["validate", "--schema", s(&cyclic), "--instance", s(&inst)]).status.code(), Some(2));

    let not_json = write(dir.path(), "bad.json", "{");
    assert_eq!(run(&["analyze", "--schema", s(&not_json)]).status.code(), Some(2));
}
