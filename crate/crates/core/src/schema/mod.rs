//! Schema AST, documents and reference resolution.

mod graph;
mod parse;
mod serialize;

use std::collections::BTreeMap;
use std::fmt;

use bigdecimal::BigDecimal;
use indexmap::IndexMap;

use crate::json::{serialize_json, JsonType, JsonValue};
use crate::pattern::Pattern;

pub use graph::{boolean_one_of, check_guarded, find_unguarded_cycle, in_place_depth, in_place_depth_keyword};
pub use parse::{parse_schema, parse_schema_text, parse_subschema};
pub use serialize::{canonical_text, serialize_schema, serialize_subschema};

#[derive(Debug, Clone, PartialEq)]
pub enum Schema {
    Bool(bool),
    Object(Vec<Keyword>),
}

/// Where a reference points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Root,
    Def(String),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Root => f.write_str("#"),
            Target::Def(name) => write!(f, "#/$defs/{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reference {
    /// The URI as written; re-emitted verbatim.
    pub raw: String,
    pub target: Target,
}

impl Reference {
    pub fn to_def(name: &str) -> Reference {
        Reference { raw: format!("#/$defs/{}", escape_pointer_token(name)), target: Target::Def(name.to_owned()) }
    }
}

pub(crate) fn escape_pointer_token(name: &str) -> String {
    name.replace('~', "~0").replace('/', "~1")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSet {
    pub types: Vec<JsonType>,
    /// Written as an array rather than a single string.
    pub array_form: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Keyword {
    // Independent keywords.
    Type(TypeSet),
    Const(JsonValue),
    Enum(Vec<JsonValue>),
    Minimum(BigDecimal),
    Maximum(BigDecimal),
    MultipleOf(BigDecimal),
    MinLength(u64),
    MaxLength(u64),
    Pattern(Pattern),
    Required(Vec<String>),
    MinProperties(u64),
    MaxProperties(u64),
    PropertyNames(Box<Schema>),
    Properties(IndexMap<String, Schema>),
    PatternProperties(Vec<(Pattern, Schema)>),
    MinItems(u64),
    MaxItems(u64),
    UniqueItems(bool),
    PrefixItems(Vec<Schema>),
    /// `contains` with its normalized `minContains` (default 1) and
    /// `maxContains` (`None` = unbounded).
    Contains {
        schema: Box<Schema>,
        min: u64,
        max: Option<u64>,
    },
    AllOf(Vec<Schema>),
    AnyOf(Vec<Schema>),
    OneOf(Vec<Schema>),
    Not(Box<Schema>),
    /// `if`/`then`/`else`; a missing branch behaves as `true`.
    Conditional {
        if_: Box<Schema>,
        then: Option<Box<Schema>>,
        else_: Option<Box<Schema>>,
    },
    Ref(Reference),
    Anchor(String),
    Unknown(String, JsonValue),
    // Static dependent keywords.
    AdditionalProperties(Box<Schema>),
    Items(Box<Schema>),
    // Annotation dependent keywords.
    UnevaluatedProperties(Box<Schema>),
    UnevaluatedItems(Box<Schema>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum KeywordClass {
    Independent,
    StaticDependent,
    AnnotationDependent,
}

impl Keyword {
    /// Position in the canonical keyword order.
    fn rank(&self) -> u8 {
        match self {
            Keyword::Type(_) => 0,
            Keyword::Const(_) => 1,
            Keyword::Enum(_) => 2,
            Keyword::Minimum(_) => 3,
            Keyword::Maximum(_) => 4,
            Keyword::MultipleOf(_) => 5,
            Keyword::MinLength(_) => 6,
            Keyword::MaxLength(_) => 7,
            Keyword::Pattern(_) => 8,
            Keyword::Required(_) => 9,
            Keyword::MinProperties(_) => 10,
            Keyword::MaxProperties(_) => 11,
            Keyword::PropertyNames(_) => 12,
            Keyword::Properties(_) => 13,
            Keyword::PatternProperties(_) => 14,
            Keyword::MinItems(_) => 15,
            Keyword::MaxItems(_) => 16,
            Keyword::UniqueItems(_) => 17,
            Keyword::PrefixItems(_) => 18,
            Keyword::Contains { .. } => 19,
            Keyword::AllOf(_) => 20,
            Keyword::AnyOf(_) => 21,
            Keyword::OneOf(_) => 22,
            Keyword::Not(_) => 23,
            Keyword::Conditional { .. } => 24,
            Keyword::Ref(_) => 25,
            Keyword::Anchor(_) => 26,
            Keyword::Unknown(..) => 27,
            Keyword::AdditionalProperties(_) => 28,
            Keyword::Items(_) => 29,
            Keyword::UnevaluatedProperties(_) => 30,
            Keyword::UnevaluatedItems(_) => 31,
        }
    }

    pub fn class(&self) -> KeywordClass {
        match self {
            Keyword::AdditionalProperties(_) | Keyword::Items(_) => KeywordClass::StaticDependent,
            Keyword::UnevaluatedProperties(_) | Keyword::UnevaluatedItems(_) => KeywordClass::AnnotationDependent,
            _ => KeywordClass::Independent,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Keyword::Type(_) => "type",
            Keyword::Const(_) => "const",
            Keyword::Enum(_) => "enum",
            Keyword::Minimum(_) => "minimum",
            Keyword::Maximum(_) => "maximum",
            Keyword::MultipleOf(_) => "multipleOf",
            Keyword::MinLength(_) => "minLength",
            Keyword::MaxLength(_) => "maxLength",
            Keyword::Pattern(_) => "pattern",
            Keyword::Required(_) => "required",
            Keyword::MinProperties(_) => "minProperties",
            Keyword::MaxProperties(_) => "maxProperties",
            Keyword::PropertyNames(_) => "propertyNames",
            Keyword::Properties(_) => "properties",
            Keyword::PatternProperties(_) => "patternProperties",
            Keyword::MinItems(_) => "minItems",
            Keyword::MaxItems(_) => "maxItems",
            Keyword::UniqueItems(_) => "uniqueItems",
            Keyword::PrefixItems(_) => "prefixItems",
            Keyword::Contains { .. } => "contains",
            Keyword::AllOf(_) => "allOf",
            Keyword::AnyOf(_) => "anyOf",
            Keyword::OneOf(_) => "oneOf",
            Keyword::Not(_) => "not",
            Keyword::Conditional { .. } => "if",
            Keyword::Ref(_) => "$ref",
            Keyword::Anchor(_) => "$anchor",
            Keyword::Unknown(name, _) => name,
            Keyword::AdditionalProperties(_) => "additionalProperties",
            Keyword::Items(_) => "items",
            Keyword::UnevaluatedProperties(_) => "unevaluatedProperties",
            Keyword::UnevaluatedItems(_) => "unevaluatedItems",
        }
    }

    /// Keywords with no effect on validity or annotations.
    pub fn is_inert(&self) -> bool {
        matches!(self, Keyword::Anchor(_) | Keyword::Unknown(..))
    }

    pub fn is_unevaluated(&self) -> bool {
        self.class() == KeywordClass::AnnotationDependent
    }

    /// Every schema argument of the keyword, in order.
    pub fn subschemas(&self) -> Vec<&Schema> {
        match self {
            Keyword::PropertyNames(s)
            | Keyword::Not(s)
            | Keyword::AdditionalProperties(s)
            | Keyword::Items(s)
            | Keyword::UnevaluatedProperties(s)
            | Keyword::UnevaluatedItems(s) => vec![s],
            Keyword::Contains { schema, .. } => vec![schema],
            Keyword::Properties(map) => map.values().collect(),
            Keyword::PatternProperties(entries) => entries.iter().map(|(_, s)| s).collect(),
            Keyword::PrefixItems(list) | Keyword::AllOf(list) | Keyword::AnyOf(list) | Keyword::OneOf(list) => {
                list.iter().collect()
            }
            Keyword::Conditional { if_, then, else_ } => {
                let mut out: Vec<&Schema> = vec![if_];
                out.extend(then.as_deref());
                out.extend(else_.as_deref());
                out
            }
            _ => Vec::new(),
        }
    }

    pub fn subschemas_mut(&mut self) -> Vec<&mut Schema> {
        match self {
            Keyword::PropertyNames(s)
            | Keyword::Not(s)
            | Keyword::AdditionalProperties(s)
            | Keyword::Items(s)
            | Keyword::UnevaluatedProperties(s)
            | Keyword::UnevaluatedItems(s) => vec![s],
            Keyword::Contains { schema, .. } => vec![schema],
            Keyword::Properties(map) => map.values_mut().collect(),
            Keyword::PatternProperties(entries) => entries.iter_mut().map(|(_, s)| s).collect(),
            Keyword::PrefixItems(list) | Keyword::AllOf(list) | Keyword::AnyOf(list) | Keyword::OneOf(list) => {
                list.iter_mut().collect()
            }
            Keyword::Conditional { if_, then, else_ } => {
                let mut out: Vec<&mut Schema> = vec![if_];
                out.extend(then.as_deref_mut());
                out.extend(else_.as_deref_mut());
                out
            }
            _ => Vec::new(),
        }
    }

    /// The boolean reading of `if`/`then`/`else`:
    /// `anyOf[allOf[I, T], allOf[not I, E]]`. Validity and annotations agree
    /// with the keyword.
    pub fn conditional_as_any_of(if_: &Schema, then: Option<&Schema>, else_: Option<&Schema>) -> Schema {
        let then = then.cloned().unwrap_or(Schema::Bool(true));
        let else_ = else_.cloned().unwrap_or(Schema::Bool(true));
        Schema::any_of(vec![
            Schema::all_of(vec![if_.clone(), then]),
            Schema::all_of(vec![Schema::not(if_.clone()), else_]),
        ])
    }
}

/// Sort keywords into the canonical order: independent, then static
/// dependent, then annotation dependent.
pub fn sort_keywords(keywords: &mut [Keyword]) {
    keywords.sort_by(|a, b| {
        a.rank().cmp(&b.rank()).then_with(|| match (a, b) {
            (Keyword::Unknown(x, _), Keyword::Unknown(y, _)) => x.cmp(y),
            _ => std::cmp::Ordering::Equal,
        })
    });
}

impl Schema {
    pub fn object(mut keywords: Vec<Keyword>) -> Schema {
        sort_keywords(&mut keywords);
        Schema::Object(keywords)
    }

    pub fn single(keyword: Keyword) -> Schema {
        Schema::Object(vec![keyword])
    }

    pub fn any_of(args: Vec<Schema>) -> Schema {
        Schema::single(Keyword::AnyOf(args))
    }

    pub fn all_of(args: Vec<Schema>) -> Schema {
        Schema::single(Keyword::AllOf(args))
    }

    pub fn one_of(args: Vec<Schema>) -> Schema {
        Schema::single(Keyword::OneOf(args))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(arg: Schema) -> Schema {
        Schema::single(Keyword::Not(Box::new(arg)))
    }

    pub fn reference(r: Reference) -> Schema {
        Schema::single(Keyword::Ref(r))
    }

    pub fn keywords(&self) -> &[Keyword] {
        match self {
            Schema::Bool(_) => &[],
            Schema::Object(kws) => kws,
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Schema::Bool(true))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Schema::Bool(false))
    }

    /// The argument list if this is exactly `{"anyOf": [...]}`.
    pub fn as_any_of(&self) -> Option<&[Schema]> {
        match self.keywords() {
            [Keyword::AnyOf(list)] => Some(list),
            _ => None,
        }
    }

    /// The argument list if this is exactly `{"allOf": [...]}`.
    pub fn as_all_of(&self) -> Option<&[Schema]> {
        match self.keywords() {
            [Keyword::AllOf(list)] => Some(list),
            _ => None,
        }
    }

    pub fn has_unevaluated(&self) -> bool {
        self.keywords().iter().any(Keyword::is_unevaluated)
    }

    /// Pre-order walk over this schema and all nested subschemas.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Schema)) {
        f(self);
        for kw in self.keywords() {
            for sub in kw.subschemas() {
                sub.walk(f);
            }
        }
    }

    /// Number of schema nodes.
    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_json(&serialize_subschema(self)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemaDocument {
    /// The root schema without its `$defs` member.
    pub root: Schema,
    pub defs: IndexMap<String, Schema>,
    pub anchors: BTreeMap<String, Target>,
}

impl SchemaDocument {
    pub fn new(root: Schema) -> Self {
        SchemaDocument { root, defs: IndexMap::new(), anchors: BTreeMap::new() }
    }

    pub fn get(&self, target: &Target) -> Option<&Schema> {
        match target {
            Target::Root => Some(&self.root),
            Target::Def(name) => self.defs.get(name),
        }
    }

    pub fn get_mut(&mut self, target: &Target) -> Option<&mut Schema> {
        match target {
            Target::Root => Some(&mut self.root),
            Target::Def(name) => self.defs.get_mut(name),
        }
    }

    /// The schema a resolved reference points to. References produced by
    /// parsing always resolve; a dangling one is a construction bug.
    pub fn deref(&self, r: &Reference) -> &Schema {
        self.get(&r.target).unwrap_or_else(|| panic!("dangling reference {}", r.raw))
    }

    /// Resolve a URI of shape `#`, `#/$defs/name` or `#anchor`.
    pub fn resolve(&self, uri: &str) -> Result<Target, crate::error::SchemaError> {
        parse::resolve_uri(uri, "", &|name| self.defs.contains_key(name), &self.anchors)
    }

    /// Root first, then definitions in document order.
    pub fn named(&self) -> impl Iterator<Item = (Target, &Schema)> {
        std::iter::once((Target::Root, &self.root)).chain(self.defs.iter().map(|(k, v)| (Target::Def(k.clone()), v)))
    }

    pub fn targets(&self) -> Vec<Target> {
        self.named().map(|(t, _)| t).collect()
    }

    /// A copy of this document with a different root schema; definitions
    /// and anchors are shared.
    pub fn with_root(&self, root: Schema) -> SchemaDocument {
        SchemaDocument { root, defs: self.defs.clone(), anchors: self.anchors.clone() }
    }
}
