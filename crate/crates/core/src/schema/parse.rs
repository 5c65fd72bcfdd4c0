use std::collections::{BTreeMap, BTreeSet};

use bigdecimal::{BigDecimal, Zero};
use indexmap::IndexMap;

use super::{escape_pointer_token, sort_keywords, Keyword, Reference, Schema, SchemaDocument, Target, TypeSet};
use crate::error::SchemaError;
use crate::json::{parse_json_str, JsonType, JsonValue};
use crate::pattern::Pattern;

/// Keywords of the 2020-12 vocabularies whose behavior is not modeled.
/// Treating them as inert would silently change validation.
const UNSUPPORTED: &[&str] = &[
    "$dynamicRef",
    "$dynamicAnchor",
    "$recursiveRef",
    "$recursiveAnchor",
    "dependentSchemas",
    "dependentRequired",
    "exclusiveMinimum",
    "exclusiveMaximum",
];

struct Context<'a> {
    defs: &'a BTreeSet<String>,
    anchors: &'a BTreeMap<String, Target>,
}

pub fn parse_schema_text(text: &str) -> Result<SchemaDocument, SchemaError> {
    parse_schema(&parse_json_str(text)?)
}

pub fn parse_schema(value: &JsonValue) -> Result<SchemaDocument, SchemaError> {
    let members = match value {
        JsonValue::Bool(b) => return Ok(SchemaDocument::new(Schema::Bool(*b))),
        JsonValue::Object(members) => members,
        _ => return Err(SchemaError::NotASchema { pointer: String::new() }),
    };

    let raw_defs = match members.get("$defs") {
        None => BTreeMap::new(),
        Some(JsonValue::Object(defs)) => defs.clone(),
        Some(_) => return Err(bad("", "$defs", "expected an object")),
    };
    let def_names: BTreeSet<String> = raw_defs.keys().cloned().collect();

    let mut anchors: BTreeMap<String, Target> = BTreeMap::new();
    let mut declare = |anchor: &JsonValue, target: Target, pointer: &str| -> Result<(), SchemaError> {
        let JsonValue::String(name) = anchor else {
            return Err(bad(pointer, "$anchor", "expected a string"));
        };
        if !is_plain_name(name) {
            return Err(bad(pointer, "$anchor", "not a plain name"));
        }
        if anchors.insert(name.clone(), target).is_some() {
            return Err(SchemaError::AmbiguousAnchor { anchor: name.clone() });
        }
        Ok(())
    };
    if let Some(anchor) = members.get("$anchor") {
        declare(anchor, Target::Root, "")?;
    }
    for (name, def) in &raw_defs {
        if let JsonValue::Object(def_members) = def {
            if let Some(anchor) = def_members.get("$anchor") {
                declare(anchor, Target::Def(name.clone()), &def_pointer(name))?;
            }
        }
    }
    for (anchor, target) in &anchors {
        if def_names.contains(anchor) && *target != Target::Def(anchor.clone()) {
            return Err(SchemaError::AnchorCollision { anchor: anchor.clone(), holder: target.to_string() });
        }
    }

    let ctx = Context { defs: &def_names, anchors: &anchors };
    let root = parse_object(members, "", true, true, &ctx)?;
    let mut defs = IndexMap::new();
    for (name, def) in &raw_defs {
        defs.insert(name.clone(), parse_node(def, &def_pointer(name), true, &ctx)?);
    }
    Ok(SchemaDocument { root, defs, anchors })
}

/// Parse a schema that lives outside the document (for example a test
/// input), resolving its references against `doc`.
pub fn parse_subschema(doc: &SchemaDocument, value: &JsonValue) -> Result<Schema, SchemaError> {
    let defs: BTreeSet<String> = doc.defs.keys().cloned().collect();
    let ctx = Context { defs: &defs, anchors: &doc.anchors };
    parse_node(value, "", false, &ctx)
}

fn def_pointer(name: &str) -> String {
    format!("/$defs/{}", escape_pointer_token(name))
}

fn bad(pointer: &str, keyword: &str, message: &str) -> SchemaError {
    SchemaError::BadKeyword { pointer: pointer.to_owned(), keyword: keyword.to_owned(), message: message.to_owned() }
}

fn is_plain_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '.' | '_'))
}

fn parse_node(value: &JsonValue, pointer: &str, top: bool, ctx: &Context) -> Result<Schema, SchemaError> {
    match value {
        JsonValue::Bool(b) => Ok(Schema::Bool(*b)),
        JsonValue::Object(members) => parse_object(members, pointer, top, false, ctx),
        _ => Err(SchemaError::NotASchema { pointer: pointer.to_owned() }),
    }
}

fn child(pointer: &str, token: &str) -> String {
    format!("{pointer}/{}", escape_pointer_token(token))
}

fn parse_object(
    members: &BTreeMap<String, JsonValue>,
    pointer: &str,
    top: bool,
    is_root: bool,
    ctx: &Context,
) -> Result<Schema, SchemaError> {
    let mut keywords = Vec::with_capacity(members.len());
    for (name, value) in members {
        let here = child(pointer, name);
        let sub = |v: &JsonValue| parse_node(v, &here, false, ctx);
        let list = |v: &JsonValue| -> Result<Vec<Schema>, SchemaError> {
            let JsonValue::Array(items) = v else {
                return Err(bad(pointer, name, "expected an array of schemas"));
            };
            items.iter().enumerate().map(|(i, item)| parse_node(item, &format!("{here}/{i}"), false, ctx)).collect()
        };
        let count =
            |v: &JsonValue| non_negative(v).ok_or_else(|| bad(pointer, name, "expected a non-negative integer"));
        let number = |v: &JsonValue| match v {
            JsonValue::Number(n) => Ok(n.clone()),
            _ => Err(bad(pointer, name, "expected a number")),
        };

        let kw = match name.as_str() {
            "$defs" if is_root => continue,
            "$defs" => return Err(SchemaError::NestedDefs { pointer: pointer.to_owned() }),
            "$anchor" if top => match value {
                JsonValue::String(s) => Keyword::Anchor(s.clone()),
                _ => return Err(bad(pointer, name, "expected a string")),
            },
            "$anchor" => return Err(SchemaError::NestedAnchor { pointer: pointer.to_owned() }),
            "$id" if is_root => Keyword::Unknown(name.clone(), value.clone()),
            "$id" => {
                return Err(SchemaError::UnsupportedKeyword { pointer: pointer.to_owned(), keyword: name.clone() })
            }
            n if UNSUPPORTED.contains(&n) => {
                return Err(SchemaError::UnsupportedKeyword { pointer: pointer.to_owned(), keyword: name.clone() })
            }
            "type" => Keyword::Type(
                parse_type(value).ok_or_else(|| bad(pointer, name, "expected a type name or a list of type names"))?,
            ),
            "const" => Keyword::Const(value.clone()),
            "enum" => match value {
                JsonValue::Array(items) => Keyword::Enum(items.clone()),
                _ => return Err(bad(pointer, name, "expected an array")),
            },
            "minimum" => Keyword::Minimum(number(value)?),
            "maximum" => Keyword::Maximum(number(value)?),
            "multipleOf" => {
                let n = number(value)?;
                if n <= BigDecimal::zero() {
                    return Err(bad(pointer, name, "expected a positive number"));
                }
                Keyword::MultipleOf(n)
            }
            "minLength" => Keyword::MinLength(count(value)?),
            "maxLength" => Keyword::MaxLength(count(value)?),
            "pattern" => match value {
                JsonValue::String(src) => Keyword::Pattern(compile(src, &here)?),
                _ => return Err(bad(pointer, name, "expected a string")),
            },
            "required" => match value {
                JsonValue::Array(items) => Keyword::Required(
                    items
                        .iter()
                        .map(|v| v.as_str().map(str::to_owned))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| bad(pointer, name, "expected an array of strings"))?,
                ),
                _ => return Err(bad(pointer, name, "expected an array of strings")),
            },
            "minProperties" => Keyword::MinProperties(count(value)?),
            "maxProperties" => Keyword::MaxProperties(count(value)?),
            "propertyNames" => Keyword::PropertyNames(Box::new(sub(value)?)),
            "properties" => match value {
                JsonValue::Object(props) => {
                    let mut map = IndexMap::new();
                    for (k, v) in props {
                        map.insert(k.clone(), parse_node(v, &child(&here, k), false, ctx)?);
                    }
                    Keyword::Properties(map)
                }
                _ => return Err(bad(pointer, name, "expected an object")),
            },
            "patternProperties" => match value {
                JsonValue::Object(props) => {
                    let mut entries = Vec::new();
                    for (k, v) in props {
                        let p = compile(k, &here)?;
                        entries.push((p, parse_node(v, &child(&here, k), false, ctx)?));
                    }
                    Keyword::PatternProperties(entries)
                }
                _ => return Err(bad(pointer, name, "expected an object")),
            },
            "minItems" => Keyword::MinItems(count(value)?),
            "maxItems" => Keyword::MaxItems(count(value)?),
            "uniqueItems" => match value {
                JsonValue::Bool(b) => Keyword::UniqueItems(*b),
                _ => return Err(bad(pointer, name, "expected a boolean")),
            },
            "prefixItems" => Keyword::PrefixItems(list(value)?),
            "contains" => {
                let min = match members.get("minContains") {
                    None => 1,
                    Some(v) => {
                        non_negative(v).ok_or_else(|| bad(pointer, "minContains", "expected a non-negative integer"))?
                    }
                };
                let max = match members.get("maxContains") {
                    None => None,
                    Some(v) => Some(
                        non_negative(v)
                            .ok_or_else(|| bad(pointer, "maxContains", "expected a non-negative integer"))?,
                    ),
                };
                Keyword::Contains { schema: Box::new(sub(value)?), min, max }
            }
            // Folded into `contains`; without it they have no effect.
            "minContains" | "maxContains" => continue,
            "allOf" => Keyword::AllOf(list(value)?),
            "anyOf" => Keyword::AnyOf(list(value)?),
            "oneOf" => Keyword::OneOf(list(value)?),
            "not" => Keyword::Not(Box::new(sub(value)?)),
            "if" => {
                let branch = |key: &str| -> Result<Option<Box<Schema>>, SchemaError> {
                    members.get(key).map(|v| parse_node(v, &child(pointer, key), false, ctx).map(Box::new)).transpose()
                };
                Keyword::Conditional { if_: Box::new(sub(value)?), then: branch("then")?, else_: branch("else")? }
            }
            "then" | "else" if members.contains_key("if") => continue,
            "$ref" => match value {
                JsonValue::String(uri) => {
                    let target = resolve_uri(uri, pointer, &|n| ctx.defs.contains(n), ctx.anchors)?;
                    Keyword::Ref(Reference { raw: uri.clone(), target })
                }
                _ => return Err(bad(pointer, name, "expected a string")),
            },
            "additionalProperties" => Keyword::AdditionalProperties(Box::new(sub(value)?)),
            "items" => match value {
                JsonValue::Array(_) => {
                    return Err(bad(pointer, name, "the array form is not part of draft 2020-12; use prefixItems"))
                }
                _ => Keyword::Items(Box::new(sub(value)?)),
            },
            "unevaluatedProperties" => Keyword::UnevaluatedProperties(Box::new(sub(value)?)),
            "unevaluatedItems" => Keyword::UnevaluatedItems(Box::new(sub(value)?)),
            _ => Keyword::Unknown(name.clone(), value.clone()),
        };
        keywords.push(kw);
    }
    sort_keywords(&mut keywords);
    Ok(Schema::Object(keywords))
}

fn compile(source: &str, pointer: &str) -> Result<Pattern, SchemaError> {
    Pattern::new(source).map_err(|e| SchemaError::InvalidPattern {
        pointer: pointer.to_owned(),
        pattern: source.to_owned(),
        message: e.to_string(),
    })
}

fn non_negative(v: &JsonValue) -> Option<u64> {
    match v {
        JsonValue::Number(n) if n.is_integer() && *n >= BigDecimal::zero() => n.with_scale(0).to_string().parse().ok(),
        _ => None,
    }
}

fn parse_type(v: &JsonValue) -> Option<TypeSet> {
    match v {
        JsonValue::String(s) => Some(TypeSet { types: vec![JsonType::from_name(s)?], array_form: false }),
        JsonValue::Array(items) => {
            let types = items.iter().map(|t| t.as_str().and_then(JsonType::from_name)).collect::<Option<Vec<_>>>()?;
            Some(TypeSet { types, array_form: true })
        }
        _ => None,
    }
}

fn percent_decode(s: &str) -> Option<String> {
    let bytes = s.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' {
            let hex = s.get(i + 1..i + 3)?;
            out.push(u8::from_str_radix(hex, 16).ok()?);
            i += 3;
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    String::from_utf8(out).ok()
}

pub(super) fn resolve_uri(
    uri: &str,
    pointer: &str,
    has_def: &dyn Fn(&str) -> bool,
    anchors: &BTreeMap<String, Target>,
) -> Result<Target, SchemaError> {
    let unsupported = || SchemaError::UnsupportedRef { pointer: pointer.to_owned(), uri: uri.to_owned() };
    let unresolved = || SchemaError::UnresolvedRef { pointer: pointer.to_owned(), uri: uri.to_owned() };
    let Some(fragment) = uri.strip_prefix('#') else {
        return Err(unsupported());
    };
    if fragment.is_empty() {
        return Ok(Target::Root);
    }
    if let Some(path) = fragment.strip_prefix('/') {
        let token = path.strip_prefix("$defs/").ok_or_else(unsupported)?;
        if token.contains('/') {
            return Err(unsupported());
        }
        let name = percent_decode(token).ok_or_else(unsupported)?.replace("~1", "/").replace("~0", "~");
        return if has_def(&name) { Ok(Target::Def(name)) } else { Err(unresolved()) };
    }
    anchors.get(fragment).cloned().ok_or_else(unresolved)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bool_schema() {
        assert_eq!(parse_schema_text("true").unwrap().root, Schema::Bool(true));
    }

    #[test]
    fn reorders_keywords() {
        let doc = parse_schema_text(r#"{"unevaluatedProperties":false,"properties":{"a":true}}"#).unwrap();
        let Schema::Object(kws) = &doc.root else { panic!() };
        assert!(matches!(kws[0], Keyword::Properties(_)));
        assert!(matches!(kws[1], Keyword::UnevaluatedProperties(_)));
    }

    #[test]
    fn folds_contains_bounds() {
        let doc = parse_schema_text(r#"{"contains":true,"maxContains":2}"#).unwrap();
        assert_eq!(
            doc.root.keywords()[0],
            Keyword::Contains { schema: Box::new(Schema::Bool(true)), min: 1, max: Some(2) }
        );
        let doc = parse_schema_text(r#"{"minContains":0,"maxContains":2}"#).unwrap();
        assert_eq!(doc.root, Schema::Object(vec![]));
    }

    #[test]
    fn resolves_references() {
        let doc = parse_schema_text(
            r##"{"anyOf":[{"$ref":"#sale"},{"$ref":"#/$defs/car"},{"$ref":"#"}],
                "$defs":{"sale":{"$anchor":"sale"},"car":{"$anchor":"car"}}}"##,
        )
        .unwrap();
        assert_eq!(doc.resolve("#sale").unwrap(), Target::Def("sale".into()));
        assert_eq!(doc.resolve("#/$defs/car").unwrap(), Target::Def("car".into()));
        assert_eq!(doc.resolve("#").unwrap(), Target::Root);
        assert!(matches!(doc.resolve("#nope"), Err(SchemaError::UnresolvedRef { .. })));
        assert!(matches!(doc.resolve("http://x/y#a"), Err(SchemaError::UnsupportedRef { .. })));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_schema_text(r#"{"anyOf":{}}"#), Err(SchemaError::BadKeyword { .. })));
        assert!(matches!(parse_schema_text(r#"{"pattern":3}"#), Err(SchemaError::BadKeyword { .. })));
        assert!(matches!(parse_schema_text(r#"{"pattern":"("}"#), Err(SchemaError::InvalidPattern { .. })));
        assert!(matches!(parse_schema_text(r#"{"not":{"$defs":{}}}"#), Err(SchemaError::NestedDefs { .. })));
        assert!(matches!(parse_schema_text(r#"{"not":{"$anchor":"a"}}"#), Err(SchemaError::NestedAnchor { .. })));
        assert!(matches!(parse_schema_text(r##"{"$ref":"#/$defs/x"}"##), Err(SchemaError::UnresolvedRef { .. })));
        assert!(matches!(parse_schema_text(r#"{"exclusiveMinimum":1}"#), Err(SchemaError::UnsupportedKeyword { .. })));
        assert!(matches!(parse_schema_text("3"), Err(SchemaError::NotASchema { .. })));
    }

    #[test]
    fn anchor_errors() {
        let dup = r#"{"$defs":{"a":{"$anchor":"x"},"b":{"$anchor":"x"}}}"#;
        assert!(matches!(parse_schema_text(dup), Err(SchemaError::AmbiguousAnchor { .. })));
        let clash = r#"{"$defs":{"a":{"$anchor":"b"},"b":{}}}"#;
        assert!(matches!(parse_schema_text(clash), Err(SchemaError::AnchorCollision { .. })));
        let same = r#"{"$defs":{"a":{"$anchor":"a"}}}"#;
        assert!(parse_schema_text(same).is_ok());
    }

    #[test]
    fn unknown_keywords_are_kept() {
        let doc = parse_schema_text(r#"{"title":"t","then":{}}"#).unwrap();
        assert_eq!(doc.root.keywords().len(), 2);
        assert!(doc.root.keywords().iter().all(|k| matches!(k, Keyword::Unknown(..))));
    }

    #[test]
    fn grammar_keywords_get_dedicated_variants() {
        let all = r##"{"minimum":1,"maximum":2,"pattern":"a","const":1,"type":"string","anyOf":[true],
            "allOf":[true],"oneOf":[true],"not":true,"patternProperties":{},"properties":{},"required":[],
            "minProperties":0,"maxProperties":1,"propertyNames":true,"prefixItems":[],"contains":true,
            "minContains":0,"maxContains":3,"minItems":0,"maxItems":1,"uniqueItems":true,"$ref":"#",
            "additionalProperties":true,"items":true,"unevaluatedProperties":true,"unevaluatedItems":true}"##;
        let doc = parse_schema_text(all).unwrap();
        assert!(doc.root.keywords().iter().all(|k| !matches!(k, Keyword::Unknown(..))));
        assert_eq!(doc.root.keywords().len(), 25);
    }
}
