#![allow(dead_code)]

pub mod gen;

use std::path::{Path, PathBuf};

use uneval_core::harness::{load_corpus, Fixture};
use uneval_core::{parse_json, parse_schema, JsonValue, Validator};

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn corpus() -> Vec<Fixture> {
    load_corpus(&manifest_dir().join("tests/fixtures")).expect("fixture corpus loads")
}

const EXCLUDED_KEYWORDS: &[&str] = &["$dynamicRef", "$dynamicAnchor", "dependentSchemas", "$id"];

fn mentions_excluded(v: &JsonValue) -> bool {
    match v {
        JsonValue::Object(map) => {
            map.iter().any(|(k, v)| EXCLUDED_KEYWORDS.contains(&k.as_str()) || mentions_excluded(v))
        }
        JsonValue::Array(items) => items.iter().any(mentions_excluded),
        _ => false,
    }
}

#[derive(Debug, Default)]
pub struct SuiteResult {
    pub passed: usize,
    pub excluded: usize,
    pub failures: Vec<String>,
}

/// Runs the official test-suite files for the given keywords.
pub fn run_suite(files: &[&str]) -> SuiteResult {
    let mut result = SuiteResult::default();
    for file in files {
        let path = manifest_dir().join("tests/suite").join(format!("{file}.json"));
        let groups = read_json(&path);
        for group in groups.as_array().expect("array of groups") {
            let obj = group.as_object().expect("group object");
            let description = obj["description"].as_str().unwrap_or_default();
            let tests = obj["tests"].as_array().expect("tests");
            if mentions_excluded(&obj["schema"]) {
                result.excluded += tests.len();
                continue;
            }
            let doc = match parse_schema(&obj["schema"]) {
                Ok(doc) => doc,
                Err(e) => {
                    result.failures.push(format!("{file}: {description}: schema rejected: {e}"));
                    continue;
                }
            };
            let validator = match Validator::new(&doc) {
                Ok(v) => v,
                Err(e) => {
                    result.failures.push(format!("{file}: {description}: {e}"));
                    continue;
                }
            };
            for test in tests {
                let t = test.as_object().expect("test object");
                let expected = t["valid"] == JsonValue::Bool(true);
                if validator.is_valid(&t["data"]) == expected {
                    result.passed += 1;
                } else {
                    result.failures.push(format!(
                        "{file}: {description}: {} (expected {expected})",
                        t["description"].as_str().unwrap_or_default()
                    ));
                }
            }
        }
    }
    result
}

pub fn read_json(path: &Path) -> JsonValue {
    let bytes = std::fs::read(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_json(&bytes).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub const SUITE_FILES: &[&str] =
    &["unevaluatedProperties", "unevaluatedItems", "additionalProperties", "items", "prefixItems", "contains"];
