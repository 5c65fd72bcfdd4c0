//! Bounded random schemas and instances over a tiny vocabulary.

use rand::seq::SliceRandom;
use rand::Rng;
use uneval_core::{parse_json_str, JsonValue};

const NAMES: &[&str] = &["a", "b", "c", "ab"];
const PATTERNS: &[&str] = &["^a", "b", "a$", "^a$", ".*"];
const STRINGS: &[&str] = &["", "a", "b", "ab"];
const TYPES: &[&str] = &["null", "boolean", "integer", "number", "string", "array", "object"];

fn pick<'a, R: Rng>(rng: &mut R, xs: &[&'a str]) -> &'a str {
    xs.choose(rng).copied().expect("non-empty")
}

fn q(s: &str) -> String {
    format!("{s:?}")
}

fn names<R: Rng>(rng: &mut R) -> String {
    let chosen: Vec<&str> = NAMES.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    format!("[{}]", chosen.iter().map(|n| q(n)).collect::<Vec<_>>().join(","))
}

fn scalar<R: Rng>(rng: &mut R) -> String {
    match rng.gen_range(0..4) {
        0 => "null".into(),
        1 => rng.gen_range(0..3).to_string(),
        2 => q(pick(rng, STRINGS)),
        _ => "true".into(),
    }
}

fn list<R: Rng>(rng: &mut R, depth: usize, max: usize, adk: bool) -> String {
    let n = rng.gen_range(1..=max);
    format!("[{}]", (0..n).map(|_| text(rng, depth, adk)).collect::<Vec<_>>().join(","))
}

fn map<R: Rng>(rng: &mut R, depth: usize, keys: &[&str], adk: bool) -> String {
    let mut ks: Vec<&str> = keys.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if ks.is_empty() {
        ks.push(pick(rng, keys));
    }
    format!("{{{}}}", ks.iter().map(|k| format!("{}:{}", q(k), text(rng, depth, adk))).collect::<Vec<_>>().join(","))
}

/// The keyword text and the name that must not repeat in one object.
fn keyword<R: Rng>(rng: &mut R, depth: usize, adk: bool) -> (&'static str, String) {
    let leaf = depth == 0;
    let d = depth.saturating_sub(1);
    let choice = match (leaf, adk) {
        (true, _) => rng.gen_range(0..15),
        (false, true) => rng.gen_range(0..31),
        (false, false) => rng.gen_range(0..29),
    };
    match choice {
        0 => ("type", format!(r#""type":{}"#, q(pick(rng, TYPES)))),
        1 => ("const", format!(r#""const":{}"#, scalar(rng))),
        2 => ("enum", format!(r#""enum":[{},{}]"#, scalar(rng), scalar(rng))),
        3 => ("minimum", format!(r#""minimum":{}"#, rng.gen_range(0..3))),
        4 => ("maximum", format!(r#""maximum":{}"#, rng.gen_range(0..3))),
        5 => ("multipleOf", format!(r#""multipleOf":{}"#, rng.gen_range(1..3))),
        6 => ("minLength", format!(r#""minLength":{}"#, rng.gen_range(0..3))),
        7 => ("maxLength", format!(r#""maxLength":{}"#, rng.gen_range(0..3))),
        8 => ("pattern", format!(r#""pattern":{}"#, q(pick(rng, PATTERNS)))),
        9 => ("required", format!(r#""required":{}"#, names(rng))),
        10 => ("minProperties", format!(r#""minProperties":{}"#, rng.gen_range(0..3))),
        11 => ("maxProperties", format!(r#""maxProperties":{}"#, rng.gen_range(0..3))),
        12 => ("minItems", format!(r#""minItems":{}"#, rng.gen_range(0..3))),
        13 => ("maxItems", format!(r#""maxItems":{}"#, rng.gen_range(0..3))),
        14 => ("uniqueItems", r#""uniqueItems":true"#.into()),
        15 => ("properties", format!(r#""properties":{}"#, map(rng, d, NAMES, adk))),
        16 => ("patternProperties", format!(r#""patternProperties":{}"#, map(rng, d, PATTERNS, adk))),
        17 => ("additionalProperties", format!(r#""additionalProperties":{}"#, text(rng, d, adk))),
        18 => ("propertyNames", format!(r#""propertyNames":{}"#, text(rng, d, adk))),
        19 => ("prefixItems", format!(r#""prefixItems":{}"#, list(rng, d, 2, adk))),
        20 => ("items", format!(r#""items":{}"#, text(rng, d, adk))),
        21 => ("contains", format!(r#""contains":{}"#, text(rng, d, adk))),
        22 => (
            "contains",
            format!(
                r#""contains":{},"minContains":{},"maxContains":{}"#,
                text(rng, d, adk),
                rng.gen_range(0..2),
                rng.gen_range(1..3)
            ),
        ),
        23 => ("allOf", format!(r#""allOf":{}"#, list(rng, d, 3, adk))),
        24 => ("anyOf", format!(r#""anyOf":{}"#, list(rng, d, 3, adk))),
        25 => ("oneOf", format!(r#""oneOf":{}"#, list(rng, d, 3, adk))),
        26 => ("not", format!(r#""not":{}"#, text(rng, d, adk))),
        27 => {
            ("if", format!(r#""if":{},"then":{},"else":{}"#, text(rng, d, adk), text(rng, d, adk), text(rng, d, adk)))
        }
        28 => ("if", format!(r#""if":{},"then":{}"#, text(rng, d, adk), text(rng, d, adk))),
        29 => ("unevaluatedProperties", format!(r#""unevaluatedProperties":{}"#, text(rng, d, adk))),
        _ => ("unevaluatedItems", format!(r#""unevaluatedItems":{}"#, text(rng, d, adk))),
    }
}

/// Schema text of nesting depth at most `depth`.
pub fn schema_text<R: Rng>(rng: &mut R, depth: usize) -> String {
    text(rng, depth, true)
}

/// As `schema_text`, without unevaluatedProperties/unevaluatedItems.
pub fn classical_text<R: Rng>(rng: &mut R, depth: usize) -> String {
    text(rng, depth, false)
}

fn text<R: Rng>(rng: &mut R, depth: usize, adk: bool) -> String {
    match rng.gen_range(0..10) {
        0 => "true".into(),
        1 => "false".into(),
        _ => {
            let n = rng.gen_range(1..=3);
            let mut kws: Vec<String> = Vec::new();
            let mut seen = Vec::new();
            for _ in 0..n {
                let (key, kw) = keyword(rng, depth, adk);
                if !seen.contains(&key) {
                    seen.push(key);
                    kws.push(kw);
                }
            }
            format!("{{{}}}", kws.join(","))
        }
    }
}

pub fn schema_json<R: Rng>(rng: &mut R, depth: usize) -> JsonValue {
    let text = schema_text(rng, depth);
    parse_json_str(&text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn instance<R: Rng>(rng: &mut R, depth: usize) -> JsonValue {
    let choice = if depth == 0 { rng.gen_range(0..5) } else { rng.gen_range(0..8) };
    let text = match choice {
        0 => "null".into(),
        1 => "false".into(),
        2 => rng.gen_range(0..3).to_string(),
        3 => "1.5".into(),
        4 => q(pick(rng, STRINGS)),
        5 | 6 => {
            let n = rng.gen_range(0..=3);
            let items: Vec<String> = (0..n).map(|_| instance(rng, depth - 1).to_string()).collect();
            format!("[{}]", items.join(","))
        }
        _ => {
            let mut keys: Vec<&str> = NAMES.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
            keys.truncate(3);
            let fields: Vec<String> = keys.iter().map(|k| format!("{}:{}", q(k), instance(rng, depth - 1))).collect();
            format!("{{{}}}", fields.join(","))
        }
    };
    parse_json_str(&text).unwrap_or_else(|e| panic!("{text}: {e}"))
}
