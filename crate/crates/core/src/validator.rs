//! Annotation-aware validation.
//!
//! Every judgment returns a validity flag and the evaluated property names
//! and item positions. A failing schema forgets its annotation; a failing
//! keyword may still report one (its enclosing schema then discards it).

use std::collections::BTreeSet;

use bigdecimal::{BigDecimal, Zero};

use crate::error::SchemaError;
use crate::json::{json_equal, JsonValue};
use crate::pattern::Pattern;
use crate::schema::{find_unguarded_cycle, Keyword, Schema, SchemaDocument};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Annotation {
    pub props: BTreeSet<String>,
    /// Zero-based positions.
    pub items: BTreeSet<usize>,
}

impl Annotation {
    pub fn is_empty(&self) -> bool {
        self.props.is_empty() && self.items.is_empty()
    }

    pub fn extend(&mut self, other: Annotation) {
        self.props.extend(other.props);
        self.items.extend(other.items);
    }

    fn props(props: BTreeSet<String>) -> Self {
        Annotation { props, items: BTreeSet::new() }
    }

    fn items(items: BTreeSet<usize>) -> Self {
        Annotation { props: BTreeSet::new(), items }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub valid: bool,
    pub annotation: Annotation,
}

impl Outcome {
    fn new(valid: bool, annotation: Annotation) -> Self {
        Outcome { valid, annotation }
    }

    fn pass() -> Self {
        Outcome::new(true, Annotation::default())
    }
}

pub struct Validator<'d> {
    doc: &'d SchemaDocument,
}

impl<'d> Validator<'d> {
    /// Fails if the document has an unguarded reference cycle, since
    /// validation would not terminate.
    pub fn new(doc: &'d SchemaDocument) -> Result<Self, SchemaError> {
        match find_unguarded_cycle(doc) {
            Some(cycle) => Err(SchemaError::UnguardedRecursion { cycle }),
            None => Ok(Validator { doc }),
        }
    }

    pub fn document(&self) -> &'d SchemaDocument {
        self.doc
    }

    pub fn validate(&self, instance: &JsonValue) -> Outcome {
        self.validate_schema(&self.doc.root, instance)
    }

    pub fn is_valid(&self, instance: &JsonValue) -> bool {
        self.validate(instance).valid
    }

    pub fn validate_schema(&self, schema: &Schema, instance: &JsonValue) -> Outcome {
        match schema {
            Schema::Bool(b) => Outcome::new(*b, Annotation::default()),
            Schema::Object(keywords) => {
                let out = self.validate_keyword_list(keywords, instance);
                if out.valid {
                    out
                } else {
                    Outcome::new(false, Annotation::default())
                }
            }
        }
    }

    /// Left fold over the keyword list: conjunction of results and union of
    /// annotations. Dependent keywords see the keywords before them.
    pub fn validate_keyword_list(&self, keywords: &[Keyword], instance: &JsonValue) -> Outcome {
        let mut acc = Outcome::pass();
        for (i, kw) in keywords.iter().enumerate() {
            let step = match kw {
                Keyword::AdditionalProperties(_)
                | Keyword::Items(_)
                | Keyword::UnevaluatedProperties(_)
                | Keyword::UnevaluatedItems(_) => self.dependent(&keywords[..i], &acc.annotation, kw, instance),
                _ => self.validate_keyword(kw, instance),
            };
            acc.valid &= step.valid;
            acc.annotation.extend(step.annotation);
        }
        acc
    }

    /// A dependent keyword judged after `prefix`; the result includes the
    /// prefix's own validity and annotation.
    pub fn validate_dependent(&self, prefix: &[Keyword], kw: &Keyword, instance: &JsonValue) -> Outcome {
        let before = self.validate_keyword_list(prefix, instance);
        let step = self.dependent(prefix, &before.annotation, kw, instance);
        let mut annotation = before.annotation;
        annotation.extend(step.annotation);
        Outcome::new(before.valid && step.valid, annotation)
    }

    fn all_fields(&self, instance: &JsonValue, skip: impl Fn(&str) -> bool, sub: &Schema) -> Option<Outcome> {
        let map = instance.as_object()?;
        let valid =
            map.iter().filter(|(k, _)| !skip(k)).fold(true, |ok, (_, v)| self.validate_schema(sub, v).valid && ok);
        Some(Outcome::new(valid, Annotation::props(map.keys().cloned().collect())))
    }

    fn all_items(&self, instance: &JsonValue, skip: impl Fn(usize) -> bool, sub: &Schema) -> Option<Outcome> {
        let items = instance.as_array()?;
        let valid = items
            .iter()
            .enumerate()
            .filter(|(i, _)| !skip(*i))
            .fold(true, |ok, (_, v)| self.validate_schema(sub, v).valid && ok);
        Some(Outcome::new(valid, Annotation::items((0..items.len()).collect())))
    }

    fn dependent(&self, prefix: &[Keyword], before: &Annotation, kw: &Keyword, instance: &JsonValue) -> Outcome {
        let out = match kw {
            Keyword::AdditionalProperties(sub) => {
                let mut names: Vec<&str> = Vec::new();
                let mut patterns: Vec<&Pattern> = Vec::new();
                for k in prefix {
                    match k {
                        Keyword::Properties(map) => names.extend(map.keys().map(String::as_str)),
                        Keyword::PatternProperties(entries) => patterns.extend(entries.iter().map(|(p, _)| p)),
                        _ => {}
                    }
                }
                self.all_fields(instance, |k| names.contains(&k) || patterns.iter().any(|p| p.is_match(k)), sub)
            }
            Keyword::Items(sub) => {
                let prefix_len = prefix
                    .iter()
                    .find_map(|k| match k {
                        Keyword::PrefixItems(list) => Some(list.len()),
                        _ => None,
                    })
                    .unwrap_or(0);
                self.all_items(instance, |i| i < prefix_len, sub)
            }
            Keyword::UnevaluatedProperties(sub) => self.all_fields(instance, |k| before.props.contains(k), sub),
            Keyword::UnevaluatedItems(sub) => self.all_items(instance, |i| before.items.contains(&i), sub),
            other => Some(self.validate_keyword(other, instance)),
        };
        out.unwrap_or_else(Outcome::pass)
    }

    /// An independent keyword on its own.
    pub fn validate_keyword(&self, kw: &Keyword, instance: &JsonValue) -> Outcome {
        use JsonValue as J;
        let check = |ok: bool| Outcome::new(ok, Annotation::default());
        match (kw, instance) {
            (Keyword::Type(ts), _) => check(ts.types.iter().any(|t| instance.has_type(*t))),
            (Keyword::Const(c), _) => check(json_equal(c, instance)),
            (Keyword::Enum(options), _) => check(options.iter().any(|c| json_equal(c, instance))),
            (Keyword::Minimum(d), J::Number(n)) => check(n >= d),
            (Keyword::Maximum(d), J::Number(n)) => check(n <= d),
            (Keyword::MultipleOf(d), J::Number(n)) => check(is_multiple(n, d)),
            (Keyword::MinLength(m), J::String(s)) => check(s.chars().count() as u64 >= *m),
            (Keyword::MaxLength(m), J::String(s)) => check(s.chars().count() as u64 <= *m),
            (Keyword::Pattern(p), J::String(s)) => check(p.is_match(s)),
            (Keyword::Required(names), J::Object(map)) => check(names.iter().all(|k| map.contains_key(k))),
            (Keyword::MinProperties(m), J::Object(map)) => check(map.len() as u64 >= *m),
            (Keyword::MaxProperties(m), J::Object(map)) => check(map.len() as u64 <= *m),
            (Keyword::PropertyNames(s), J::Object(map)) => {
                check(map.keys().all(|k| self.validate_schema(s, &J::String(k.clone())).valid))
            }
            (Keyword::Properties(props), J::Object(map)) => {
                let mut valid = true;
                let mut seen = BTreeSet::new();
                for (k, v) in map {
                    if let Some(s) = props.get(k) {
                        valid &= self.validate_schema(s, v).valid;
                        seen.insert(k.clone());
                    }
                }
                Outcome::new(valid, Annotation::props(seen))
            }
            (Keyword::PatternProperties(entries), J::Object(map)) => {
                let mut valid = true;
                let mut seen = BTreeSet::new();
                for (k, v) in map {
                    for (p, s) in entries {
                        if p.is_match(k) {
                            valid &= self.validate_schema(s, v).valid;
                            seen.insert(k.clone());
                        }
                    }
                }
                Outcome::new(valid, Annotation::props(seen))
            }
            (Keyword::MinItems(m), J::Array(items)) => check(items.len() as u64 >= *m),
            (Keyword::MaxItems(m), J::Array(items)) => check(items.len() as u64 <= *m),
            (Keyword::UniqueItems(true), J::Array(items)) => {
                check(items.iter().enumerate().all(|(i, a)| items[i + 1..].iter().all(|b| !json_equal(a, b))))
            }
            (Keyword::PrefixItems(schemas), J::Array(items)) => {
                let mut valid = true;
                let mut seen = BTreeSet::new();
                for (i, (s, v)) in schemas.iter().zip(items).enumerate() {
                    valid &= self.validate_schema(s, v).valid;
                    seen.insert(i);
                }
                Outcome::new(valid, Annotation::items(seen))
            }
            (Keyword::Contains { schema, min, max }, J::Array(items)) => {
                let matched: BTreeSet<usize> = items
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| self.validate_schema(schema, v).valid)
                    .map(|(i, _)| i)
                    .collect();
                let n = matched.len() as u64;
                Outcome::new(*min <= n && max.is_none_or(|m| n <= m), Annotation::items(matched))
            }
            (Keyword::AllOf(args), _) => self.fold_branches(args, instance, |outs| outs.iter().all(|o| o.valid)),
            (Keyword::AnyOf(args), _) => self.fold_branches(args, instance, |outs| outs.iter().any(|o| o.valid)),
            (Keyword::OneOf(args), _) => {
                self.fold_branches(args, instance, |outs| outs.iter().filter(|o| o.valid).count() == 1)
            }
            (Keyword::Not(s), _) => {
                let inner = self.validate_schema(s, instance);
                Outcome::new(!inner.valid, inner.annotation)
            }
            (Keyword::Conditional { if_, then, else_ }, _) => {
                let cond = self.validate_schema(if_, instance);
                let branch = if cond.valid { then } else { else_ };
                let mut out = match branch {
                    Some(s) => self.validate_schema(s, instance),
                    None => Outcome::pass(),
                };
                out.annotation.extend(cond.annotation);
                out
            }
            (Keyword::Ref(r), _) => self.validate_schema(self.doc.deref(r), instance),
            (Keyword::AdditionalProperties(_) | Keyword::Items(_), _)
            | (Keyword::UnevaluatedProperties(_) | Keyword::UnevaluatedItems(_), _) => {
                self.dependent(&[], &Annotation::default(), kw, instance)
            }
            // Inert keywords, and typed keywords applied to another type.
            _ => Outcome::pass(),
        }
    }

    /// Evaluate every branch (no short-circuit) and union the annotations.
    fn fold_branches(&self, args: &[Schema], instance: &JsonValue, decide: impl Fn(&[Outcome]) -> bool) -> Outcome {
        let outs: Vec<Outcome> = args.iter().map(|s| self.validate_schema(s, instance)).collect();
        let valid = decide(&outs);
        let mut annotation = Annotation::default();
        for o in outs {
            annotation.extend(o.annotation);
        }
        Outcome::new(valid, annotation)
    }
}

fn is_multiple(n: &BigDecimal, d: &BigDecimal) -> bool {
    !d.is_zero() && (n % d).is_zero()
}
