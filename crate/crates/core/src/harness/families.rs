//! Schema families whose classical encodings grow exponentially.

use crate::json::JsonValue;
use crate::schema::{parse_schema, SchemaDocument};

fn arr(items: impl IntoIterator<Item = JsonValue>) -> JsonValue {
    JsonValue::Array(items.into_iter().collect())
}

/// `anyOf` of `n` branches `{required:[ai], patternProperties:{ai:true}}`
/// with `unevaluatedProperties: false`.
pub fn family_sn_json(n: usize) -> JsonValue {
    let branches = (1..=n).map(|i| {
        let a = format!("a{i}");
        JsonValue::object([
            ("required", arr([JsonValue::string(&a)])),
            ("patternProperties", JsonValue::object([(a, JsonValue::Bool(true))])),
        ])
    });
    JsonValue::object([("anyOf", arr(branches)), ("unevaluatedProperties", JsonValue::Bool(false))])
}

/// The array counterpart: branch `i` asks the first item to satisfy `Ti`
/// and evaluates every item satisfying `Ti`.
pub fn family_san_json(n: usize) -> JsonValue {
    let t_ref = |i: usize| JsonValue::object([("$ref", JsonValue::string(format!("#T{i}")))]);
    let branches = (1..=n).map(|i| {
        JsonValue::object([
            ("prefixItems", arr([t_ref(i)])),
            ("minItems", JsonValue::from_i64(1)),
            ("contains", t_ref(i)),
        ])
    });
    let defs = (1..=n).map(|i| {
        (
            format!("T{i}"),
            JsonValue::object([
                ("$anchor", JsonValue::string(format!("T{i}"))),
                ("required", arr([JsonValue::string(format!("a{i}"))])),
            ]),
        )
    });
    JsonValue::object([
        ("anyOf", arr(branches)),
        ("unevaluatedItems", JsonValue::Bool(false)),
        ("$defs", JsonValue::object(defs)),
    ])
}

pub fn gen_family_sn(n: usize) -> SchemaDocument {
    assert!(n >= 1, "family index starts at 1");
    parse_schema(&family_sn_json(n)).expect("family schema is well formed")
}

pub fn gen_family_san(n: usize) -> SchemaDocument {
    assert!(n >= 1, "family index starts at 1");
    parse_schema(&family_san_json(n)).expect("family schema is well formed")
}
