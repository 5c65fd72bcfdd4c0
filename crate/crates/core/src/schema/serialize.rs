use std::collections::BTreeMap;

use super::{Keyword, Schema, SchemaDocument};
use crate::json::{serialize_json, JsonValue};

pub fn serialize_schema(doc: &SchemaDocument) -> JsonValue {
    let root = serialize_subschema(&doc.root);
    if doc.defs.is_empty() {
        return root;
    }
    let defs = JsonValue::Object(doc.defs.iter().map(|(k, v)| (k.clone(), serialize_subschema(v))).collect());
    let mut members = match root {
        JsonValue::Object(members) => members,
        other => BTreeMap::from([("allOf".to_owned(), JsonValue::Array(vec![other]))]),
    };
    members.insert("$defs".to_owned(), defs);
    JsonValue::Object(members)
}

pub fn serialize_subschema(schema: &Schema) -> JsonValue {
    match schema {
        Schema::Bool(b) => JsonValue::Bool(*b),
        Schema::Object(keywords) => {
            let mut members = BTreeMap::new();
            for kw in keywords {
                emit(kw, &mut members);
            }
            JsonValue::Object(members)
        }
    }
}

/// Compact serialization with sorted keys; equal text means equal schema.
pub fn canonical_text(schema: &Schema) -> String {
    serialize_json(&serialize_subschema(schema))
}

fn count(n: u64) -> JsonValue {
    JsonValue::Number(n.into())
}

fn list(items: &[Schema]) -> JsonValue {
    JsonValue::Array(items.iter().map(serialize_subschema).collect())
}

fn boxed(s: &Schema) -> JsonValue {
    serialize_subschema(s)
}

fn emit(kw: &Keyword, out: &mut BTreeMap<String, JsonValue>) {
    let mut put = |k: &str, v: JsonValue| {
        out.insert(k.to_owned(), v);
    };
    match kw {
        Keyword::Type(ts) => {
            let names = ts.types.iter().map(|t| JsonValue::string(t.name()));
            if ts.array_form || ts.types.len() != 1 {
                put("type", JsonValue::Array(names.collect()));
            } else {
                put("type", names.into_iter().next().expect("one type"));
            }
        }
        Keyword::Const(v) => put("const", v.clone()),
        Keyword::Enum(vs) => put("enum", JsonValue::Array(vs.clone())),
        Keyword::Minimum(d) => put("minimum", JsonValue::Number(d.clone())),
        Keyword::Maximum(d) => put("maximum", JsonValue::Number(d.clone())),
        Keyword::MultipleOf(d) => put("multipleOf", JsonValue::Number(d.clone())),
        Keyword::MinLength(n) => put("minLength", count(*n)),
        Keyword::MaxLength(n) => put("maxLength", count(*n)),
        Keyword::Pattern(p) => put("pattern", JsonValue::string(p.source())),
        Keyword::Required(names) => put("required", JsonValue::Array(names.iter().map(JsonValue::string).collect())),
        Keyword::MinProperties(n) => put("minProperties", count(*n)),
        Keyword::MaxProperties(n) => put("maxProperties", count(*n)),
        Keyword::PropertyNames(s) => put("propertyNames", boxed(s)),
        Keyword::Properties(map) => {
            put("properties", JsonValue::Object(map.iter().map(|(k, v)| (k.clone(), serialize_subschema(v))).collect()))
        }
        Keyword::PatternProperties(entries) => put(
            "patternProperties",
            JsonValue::Object(entries.iter().map(|(p, v)| (p.source().to_owned(), serialize_subschema(v))).collect()),
        ),
        Keyword::MinItems(n) => put("minItems", count(*n)),
        Keyword::MaxItems(n) => put("maxItems", count(*n)),
        Keyword::UniqueItems(b) => put("uniqueItems", JsonValue::Bool(*b)),
        Keyword::PrefixItems(items) => put("prefixItems", list(items)),
        Keyword::Contains { schema, min, max } => {
            put("contains", boxed(schema));
            if *min != 1 {
                put("minContains", count(*min));
            }
            if let Some(max) = max {
                put("maxContains", count(*max));
            }
        }
        Keyword::AllOf(items) => put("allOf", list(items)),
        Keyword::AnyOf(items) => put("anyOf", list(items)),
        Keyword::OneOf(items) => put("oneOf", list(items)),
        Keyword::Not(s) => put("not", boxed(s)),
        Keyword::Conditional { if_, then, else_ } => {
            put("if", boxed(if_));
            if let Some(t) = then {
                put("then", boxed(t));
            }
            if let Some(e) = else_ {
                put("else", boxed(e));
            }
        }
        Keyword::Ref(r) => put("$ref", JsonValue::string(&r.raw)),
        Keyword::Anchor(a) => put("$anchor", JsonValue::string(a)),
        Keyword::Unknown(name, v) => put(name, v.clone()),
        Keyword::AdditionalProperties(s) => put("additionalProperties", boxed(s)),
        Keyword::Items(s) => put("items", boxed(s)),
        Keyword::UnevaluatedProperties(s) => put("unevaluatedProperties", boxed(s)),
        Keyword::UnevaluatedItems(s) => put("unevaluatedItems", boxed(s)),
    }
}
