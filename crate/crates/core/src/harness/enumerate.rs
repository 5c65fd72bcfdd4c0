//! Bounded exhaustive instance enumeration.

use std::collections::BTreeSet;

use crate::json::{serialize_json, JsonValue};
use crate::pattern::literal_of;
use crate::schema::{Keyword, Schema, SchemaDocument};

/// Names taken from the schema, before the fresh name is added.
pub const MAX_NAMES: usize = 11;
/// Fresh property name that no schema mentions.
pub const FRESH_NAME: &str = "_";
const OBJECT_BUDGET: usize = 60_000;
const MAX_RICH: usize = 32;

/// The words and constants a document mentions.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    /// Property names, most relevant first, `_` last.
    pub names: Vec<String>,
    /// Scalars drawn from `const` and `enum`.
    pub constants: Vec<JsonValue>,
    /// Literal strings from patterns.
    pub literals: Vec<String>,
    /// Distinct relevant names before truncation, `_` included.
    pub relevant: usize,
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

impl Vocabulary {
    pub fn of(doc: &SchemaDocument) -> Self {
        let mut direct = Vec::new();
        let mut pattern_literals = Vec::new();
        let mut constants = Vec::new();
        let mut literals = Vec::new();
        for (_, s) in doc.named() {
            s.walk(&mut |node: &Schema| {
                for kw in node.keywords() {
                    match kw {
                        Keyword::Properties(map) => map.keys().for_each(|k| push_unique(&mut direct, k.clone())),
                        Keyword::Required(names) => names.iter().for_each(|k| push_unique(&mut direct, k.clone())),
                        Keyword::PatternProperties(entries) => {
                            for (p, _) in entries {
                                if let Some((lit, _)) = literal_of(p.source()) {
                                    push_unique(&mut pattern_literals, lit);
                                }
                            }
                        }
                        Keyword::Pattern(p) => {
                            if let Some((lit, _)) = literal_of(p.source()) {
                                push_unique(&mut literals, lit);
                            }
                        }
                        Keyword::Const(v) => push_unique(&mut constants, v.clone()),
                        Keyword::Enum(vs) => vs.iter().for_each(|v| push_unique(&mut constants, v.clone())),
                        _ => {}
                    }
                }
            });
        }
        let mut names = direct;
        for lit in &pattern_literals {
            push_unique(&mut names, lit.clone());
        }
        // Names matching two overlapping patterns at once.
        for a in &pattern_literals {
            for b in &pattern_literals {
                if a != b {
                    push_unique(&mut names, format!("{a}{b}"));
                }
            }
        }
        names.retain(|n| n != FRESH_NAME);
        let relevant = names.len() + 1;
        names.truncate(MAX_NAMES);
        names.push(FRESH_NAME.to_owned());
        constants.retain(|c| !matches!(c, JsonValue::Array(_) | JsonValue::Object(_)));
        Vocabulary { names, constants, literals, relevant }
    }
}

fn base_values() -> Vec<JsonValue> {
    vec![
        JsonValue::Null,
        JsonValue::from_i64(0),
        JsonValue::string("x"),
        JsonValue::Array(vec![]),
        JsonValue::Object(Default::default()),
    ]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every assignment of `values` to the positions of a tuple of length `len`.
fn tuples(values: &[JsonValue], len: usize) -> Vec<Vec<&JsonValue>> {
    let mut out: Vec<Vec<&JsonValue>> = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| values.iter().map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

fn count_objects(names: usize, values: usize) -> usize {
    (0..=3.min(names)).map(|k| combinations(names, k).len() * values.pow(k as u32)).sum()
}

/// Small objects used as array items.
fn rich_items(names: &[String]) -> Vec<JsonValue> {
    let scalars = [JsonValue::Null, JsonValue::from_i64(0), JsonValue::string("x")];
    let mut out = Vec::new();
    for n in names.iter().take(6) {
        for v in &scalars {
            out.push(JsonValue::object([(n.clone(), v.clone())]));
        }
    }
    let head: Vec<&String> = names.iter().take(5).collect();
    for pair in combinations(head.len(), 2) {
        let (a, b) = (head[pair[0]], head[pair[1]]);
        out.push(JsonValue::object([(a.clone(), JsonValue::Null), (b.clone(), JsonValue::Null)]));
        out.push(JsonValue::object([(a.clone(), JsonValue::from_i64(0)), (b.clone(), JsonValue::string("x"))]));
        out.push(JsonValue::object([(a.clone(), JsonValue::string("x")), (b.clone(), JsonValue::from_i64(0))]));
    }
    out.truncate(MAX_RICH);
    out
}

/// The instance universe for a document: scalars, objects of up to three
/// fields over the vocabulary, and arrays of up to three items. The base
/// value alphabet is `null, 0, "x", [], {}`; constants and small objects
/// are added while the object count stays within budget.
pub fn universe(doc: &SchemaDocument) -> Vec<JsonValue> {
    let vocab = Vocabulary::of(doc);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut add = |v: JsonValue| {
        if seen.insert(serialize_json(&v)) {
            out.push(v);
        }
    };

    let mut scalars: Vec<JsonValue> = vec![
        JsonValue::Null,
        JsonValue::Bool(true),
        JsonValue::Bool(false),
        JsonValue::from_i64(-1),
        JsonValue::from_i64(0),
        JsonValue::from_i64(1),
        "2.5".parse().expect("number"),
        JsonValue::from_i64(10),
        JsonValue::from_i64(100),
        JsonValue::string("x"),
        JsonValue::string(""),
        JsonValue::string("abc"),
    ];
    scalars.extend(vocab.constants.iter().cloned());
    scalars.extend(vocab.literals.iter().map(JsonValue::string));
    scalars.extend(vocab.names.iter().map(JsonValue::string));
    for s in scalars {
        add(s);
    }

    let names = &vocab.names;
    let rich = rich_items(names);
    let mut field_values = base_values();
    let extras: Vec<JsonValue> = vocab.constants.iter().take(2).cloned().chain(rich.iter().take(3).cloned()).collect();
    for extra in extras {
        if count_objects(names.len(), field_values.len() + 1) > OBJECT_BUDGET {
            break;
        }
        if !field_values.contains(&extra) {
            field_values.push(extra);
        }
    }
    for k in 0..=3.min(names.len()) {
        for combo in combinations(names.len(), k) {
            for vals in tuples(&field_values, k) {
                add(JsonValue::object(combo.iter().zip(vals).map(|(&i, v)| (names[i].clone(), v.clone()))));
            }
        }
    }

    let base = base_values();
    for len in 0..=3 {
        for t in tuples(&base, len) {
            add(JsonValue::Array(t.into_iter().cloned().collect()));
        }
    }
    let mut items = base.clone();
    items.extend(rich.iter().cloned());
    for len in 1..=2 {
        for t in tuples(&items, len) {
            add(JsonValue::Array(t.into_iter().cloned().collect()));
        }
    }
    let mut small = vec![JsonValue::Null, JsonValue::from_i64(0)];
    small.extend(rich.iter().take(4).cloned());
    for t in tuples(&small, 3) {
        add(JsonValue::Array(t.into_iter().cloned().collect()));
    }
    out
}
