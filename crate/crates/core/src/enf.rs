//! Evaluation normal form: a disjunction of statically characterized
//! branches that is closed under covers.

use std::collections::{BTreeSet, HashMap};

use crate::analysis::Analyzer;
use crate::error::ElimError;
use crate::schema::{canonical_text, Keyword, Schema, Target};

/// Conjunction of two branches: nested `allOf`s are spliced, `true` and
/// repeated arguments dropped, a single argument unwrapped.
pub fn conj(a: &Schema, b: &Schema) -> Schema {
    let mut args: Vec<Schema> = Vec::new();
    let mut seen = BTreeSet::new();
    for s in [a, b] {
        let parts = match s.as_all_of() {
            Some(inner) => inner.to_vec(),
            None => vec![s.clone()],
        };
        for p in parts {
            if !p.is_true() && seen.insert(canonical_text(&p)) {
                args.push(p);
            }
        }
    }
    match args.len() {
        0 => Schema::Bool(true),
        1 => args.pop().expect("one"),
        _ => Schema::all_of(args),
    }
}

/// Text identifying a branch up to the order and repetition of `allOf`
/// arguments.
pub fn dedup_key(s: &Schema) -> String {
    match s.as_all_of() {
        Some(args) => {
            let parts: BTreeSet<String> = args.iter().map(canonical_text).collect();
            let parts: Vec<String> = parts.into_iter().collect();
            format!("{{\"allOf\":[{}]}}", parts.join(","))
        }
        None => canonical_text(s),
    }
}

pub fn dedup(branches: Vec<Schema>) -> Vec<Schema> {
    let mut seen = BTreeSet::new();
    branches.into_iter().filter(|s| seen.insert(dedup_key(s))).collect()
}

/// Cartesian product of the lists under `conj`; `And([]) = [true]`.
pub fn and_combine(lists: Vec<Vec<Schema>>) -> Vec<Schema> {
    let mut acc = vec![Schema::Bool(true)];
    for list in lists {
        let mut next = Vec::with_capacity(acc.len() * list.len());
        for a in &acc {
            for b in &list {
                next.push(conj(a, b));
            }
        }
        acc = dedup(next);
    }
    acc
}

/// `Or(L :: rest) = L ++ Or(rest) ++ Close(L, Or(rest))`.
pub fn or_combine(analyzer: &Analyzer<'_>, lists: Vec<Vec<Schema>>) -> Vec<Schema> {
    let mut acc: Vec<Schema> = Vec::new();
    for list in lists.into_iter().rev() {
        let closed = close(analyzer, &list, &acc);
        let mut next = list;
        next.extend(acc);
        next.extend(closed);
        acc = dedup(next);
    }
    acc
}

/// The conjunctions needed so that every cross pair has a cover. A pair is
/// skipped when one of its two members provably covers it.
pub fn close(analyzer: &Analyzer<'_>, l1: &[Schema], l2: &[Schema]) -> Vec<Schema> {
    let mut out = Vec::new();
    for a in l1 {
        for b in l2 {
            if !analyzer.covers_check(a, b) && !analyzer.covers_check(b, a) {
                out.push(conj(a, b));
            }
        }
    }
    dedup(out)
}

/// Splits a keyword list into the units normalized independently: the
/// property keywords stay together when `additionalProperties` is present,
/// and likewise `prefixItems` with `items`. Inert keywords are dropped.
pub fn split_units(keywords: &[Keyword]) -> Vec<Schema> {
    let has_additional = keywords.iter().any(|k| matches!(k, Keyword::AdditionalProperties(_)));
    let has_items = keywords.iter().any(|k| matches!(k, Keyword::Items(_)));
    let mut props = Vec::new();
    let mut items = Vec::new();
    let mut units = Vec::new();
    for kw in keywords {
        match kw {
            k if k.is_inert() => {}
            Keyword::Properties(_) | Keyword::PatternProperties(_) | Keyword::AdditionalProperties(_)
                if has_additional =>
            {
                props.push(kw.clone())
            }
            Keyword::PrefixItems(_) | Keyword::Items(_) if has_items => items.push(kw.clone()),
            _ => units.push(Schema::single(kw.clone())),
        }
    }
    for group in [props, items] {
        if !group.is_empty() {
            units.push(Schema::object(group));
        }
    }
    units
}

fn strip_inert(s: &Schema) -> Schema {
    match s {
        Schema::Bool(_) => s.clone(),
        Schema::Object(kws) => Schema::Object(kws.iter().filter(|k| !k.is_inert()).cloned().collect()),
    }
}

/// Supplies the branch list for a referenced schema. The default reads the
/// target from the analyzer's document; the eliminator substitutes the
/// eliminated form of targets that carry `unevaluated*` keywords.
pub trait RefResolver {
    fn resolve(&mut self, target: &Target, normalizer: &mut Normalizer<'_, '_>) -> Result<Vec<Schema>, ElimError>;
}

/// Resolves references to the target schema as written.
pub struct PlainRefs;

impl RefResolver for PlainRefs {
    fn resolve(&mut self, target: &Target, n: &mut Normalizer<'_, '_>) -> Result<Vec<Schema>, ElimError> {
        let doc = n.analyzer.document();
        let schema = doc.get(target).ok_or_else(|| ElimError::Internal(format!("dangling reference {target}")))?;
        n.enf_list(schema, self)
    }
}

/// Runs the normalization with memoized reference expansion.
pub struct Normalizer<'a, 'd> {
    pub analyzer: &'a Analyzer<'d>,
    memo: HashMap<Target, Vec<Schema>>,
    depth: usize,
    /// Deepest nesting of boolean-keyword and reference expansions seen.
    pub max_depth: usize,
}

impl<'a, 'd> Normalizer<'a, 'd> {
    pub fn new(analyzer: &'a Analyzer<'d>) -> Self {
        Normalizer { analyzer, memo: HashMap::new(), depth: 0, max_depth: 0 }
    }

    /// `{"anyOf": branches}` for `s`.
    pub fn enf(&mut self, s: &Schema, refs: &mut dyn RefResolver) -> Result<Schema, ElimError> {
        Ok(Schema::any_of(self.enf_list(s, refs)?))
    }

    pub fn enf_list(&mut self, s: &Schema, refs: &mut dyn RefResolver) -> Result<Vec<Schema>, ElimError> {
        if s.has_unevaluated() {
            return Err(ElimError::Internal(format!(
                "normal form requested for a schema with unevaluated keywords: {s}"
            )));
        }
        let a = self.analyzer;
        // An anyOf that is already a closed list of characterized branches.
        if let Some(args) = s.as_any_of() {
            if args.iter().all(|b| a.is_characterized(b)) && self.is_cover_closed(args) {
                return Ok(dedup(args.to_vec()));
            }
        }
        if a.is_characterized(s) {
            return Ok(vec![strip_inert(s)]);
        }
        let units = split_units(s.keywords());
        if units.len() > 1 {
            let lists = units.iter().map(|u| self.enf_list(u, refs)).collect::<Result<Vec<_>, _>>()?;
            return Ok(and_combine(lists));
        }
        let Some(unit) = units.into_iter().next() else {
            return Ok(vec![Schema::Bool(true)]);
        };
        match unit.keywords() {
            [kw] => self.descend(kw, refs),
            _ => Ok(vec![unit]),
        }
    }

    fn descend(&mut self, kw: &Keyword, refs: &mut dyn RefResolver) -> Result<Vec<Schema>, ElimError> {
        self.depth += 1;
        self.max_depth = self.max_depth.max(self.depth);
        let out = self.descend_inner(kw, refs);
        self.depth -= 1;
        out
    }

    fn descend_inner(&mut self, kw: &Keyword, refs: &mut dyn RefResolver) -> Result<Vec<Schema>, ElimError> {
        match kw {
            Keyword::AllOf(args) => {
                let lists = args.iter().map(|s| self.enf_list(s, refs)).collect::<Result<Vec<_>, _>>()?;
                Ok(and_combine(lists))
            }
            Keyword::AnyOf(args) => {
                let lists = args.iter().map(|s| self.enf_list(s, refs)).collect::<Result<Vec<_>, _>>()?;
                Ok(or_combine(self.analyzer, lists))
            }
            Keyword::OneOf(args) => {
                // The products are mutually exclusive, so no pair needs a cover.
                let mut out = Vec::new();
                for i in 0..args.len() {
                    let product = Schema::all_of(
                        args.iter()
                            .enumerate()
                            .map(|(j, s)| if i == j { s.clone() } else { Schema::not(s.clone()) })
                            .collect(),
                    );
                    out.extend(self.enf_list(&product, refs)?);
                }
                Ok(dedup(out))
            }
            Keyword::Conditional { if_, then, else_ } => {
                let desugared = Keyword::conditional_as_any_of(if_, then.as_deref(), else_.as_deref());
                self.enf_list(&desugared, refs)
            }
            Keyword::Ref(r) => {
                if let Some(list) = self.memo.get(&r.target) {
                    return Ok(list.clone());
                }
                let list = refs.resolve(&r.target, self)?;
                self.memo.insert(r.target.clone(), list.clone());
                Ok(list)
            }
            // Every other keyword on its own is characterized.
            other => Ok(vec![Schema::single(other.clone())]),
        }
    }

    /// Every pair has a member covering it or its conjunction in the list.
    pub fn is_cover_closed(&self, branches: &[Schema]) -> bool {
        let keys: BTreeSet<String> = branches.iter().map(dedup_key).collect();
        branches.iter().enumerate().all(|(i, a)| {
            branches[i + 1..].iter().all(|b| {
                self.analyzer.covers_check(a, b)
                    || self.analyzer.covers_check(b, a)
                    || keys.contains(&dedup_key(&conj(a, b)))
            })
        })
    }
}

/// Normal form of `s`, resolving references to the schemas as written.
pub fn enf(analyzer: &Analyzer<'_>, s: &Schema) -> Result<Schema, ElimError> {
    Normalizer::new(analyzer).enf(s, &mut PlainRefs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json::parse_json_str;
    use crate::schema::{parse_schema_text, parse_subschema, SchemaDocument};

    fn sch(doc: &SchemaDocument, t: &str) -> Schema {
        parse_subschema(doc, &parse_json_str(t).unwrap()).unwrap()
    }

    fn texts(list: &[Schema]) -> Vec<String> {
        list.iter().map(canonical_text).collect()
    }

    const SALE_CAR: &str = r##"{"$defs":{"sale":{"$anchor":"sale","properties":{"price":{"type":"integer"}}},
        "car":{"$anchor":"car","properties":{"plate":{"type":"string"}}}}}"##;

    #[test]
    fn characterized_schemas_are_wrapped() {
        let doc = parse_schema_text("true").unwrap();
        let a = Analyzer::new(&doc);
        assert_eq!(
            enf(&a, &sch(&doc, r#"{"type":"string"}"#)).unwrap().to_string(),
            r#"{"anyOf":[{"type":"string"}]}"#
        );
        assert_eq!(enf(&a, &Schema::Bool(true)).unwrap().to_string(), r#"{"anyOf":[true]}"#);
    }

    #[test]
    fn sale_car_has_three_branches() {
        let doc = parse_schema_text(SALE_CAR).unwrap();
        let a = Analyzer::new(&doc);
        let s = sch(&doc, r##"{"anyOf":[{"$ref":"#sale"},{"$ref":"#car"}]}"##);
        assert_eq!(
            enf(&a, &s).unwrap().to_string(),
            r##"{"anyOf":[{"$ref":"#sale"},{"$ref":"#car"},{"allOf":[{"$ref":"#sale"},{"$ref":"#car"}]}]}"##
        );
    }

    #[test]
    fn combinators() {
        let doc = parse_schema_text(SALE_CAR).unwrap();
        let an = Analyzer::new(&doc);
        let a = sch(&doc, r#"{"properties":{"a":true}}"#);
        let b = sch(&doc, r#"{"properties":{"b":true}}"#);
        let c = sch(&doc, r#"{"properties":{"c":true}}"#);
        assert_eq!(texts(&and_combine(vec![])), vec!["true"]);
        assert_eq!(
            and_combine(vec![vec![a.clone()], vec![b.clone()]]),
            vec![Schema::all_of(vec![a.clone(), b.clone()])]
        );
        assert_eq!(
            and_combine(vec![vec![a.clone(), b.clone()], vec![c.clone()]]),
            vec![Schema::all_of(vec![a.clone(), c.clone()]), Schema::all_of(vec![b.clone(), c.clone()])]
        );
        assert!(or_combine(&an, vec![]).is_empty());
        assert_eq!(or_combine(&an, vec![vec![a.clone()]]), vec![a.clone()]);
        assert!(close(&an, std::slice::from_ref(&a), &[]).is_empty());
        assert_eq!(
            close(&an, std::slice::from_ref(&a), std::slice::from_ref(&b)),
            vec![Schema::all_of(vec![a.clone(), b.clone()])]
        );
        let all = sch(&doc, r#"{"unevaluatedProperties":true,"unevaluatedItems":true}"#);
        assert!(close(&an, &[all], std::slice::from_ref(&b)).is_empty());
    }

    #[test]
    fn dedup_ignores_all_of_order() {
        let doc = parse_schema_text("true").unwrap();
        let a = sch(&doc, r#"{"minItems":1}"#);
        let b = sch(&doc, r#"{"maxItems":1}"#);
        assert_eq!(dedup(vec![a.clone(), a.clone()]), vec![a.clone()]);
        let ab = Schema::all_of(vec![a.clone(), b.clone()]);
        let ba = Schema::all_of(vec![b.clone(), a.clone()]);
        assert_eq!(dedup(vec![ab.clone(), ba]), vec![ab]);
        assert_eq!(dedup(vec![a.clone(), b.clone()]), vec![a, b]);
    }

    #[test]
    fn conj_flattens() {
        let doc = parse_schema_text("true").unwrap();
        let a = sch(&doc, r#"{"minItems":1}"#);
        let b = sch(&doc, r#"{"maxItems":1}"#);
        let ab = Schema::all_of(vec![a.clone(), b.clone()]);
        assert_eq!(conj(&ab, &a), ab);
        assert_eq!(conj(&Schema::Bool(true), &a), a);
        assert_eq!(conj(&Schema::Bool(true), &Schema::Bool(true)), Schema::Bool(true));
    }

    #[test]
    fn multi_keyword_schemas_are_split() {
        let doc = parse_schema_text(SALE_CAR).unwrap();
        let a = Analyzer::new(&doc);
        let s = sch(&doc, r##"{"type":"object","anyOf":[{"$ref":"#sale"},{"$ref":"#car"}]}"##);
        let out = Normalizer::new(&a).enf_list(&s, &mut PlainRefs).unwrap();
        assert_eq!(out.len(), 3);
        assert!(out.iter().all(|b| a.is_characterized(b)));
    }

    #[test]
    fn one_of_uses_exclusive_products() {
        let doc = parse_schema_text(SALE_CAR).unwrap();
        let a = Analyzer::new(&doc);
        let s = sch(&doc, r##"{"oneOf":[{"$ref":"#sale"},{"$ref":"#car"}]}"##);
        let out = Normalizer::new(&a).enf_list(&s, &mut PlainRefs).unwrap();
        assert_eq!(
            texts(&out),
            vec![
                r##"{"allOf":[{"$ref":"#sale"},{"not":{"$ref":"#car"}}]}"##,
                r##"{"allOf":[{"not":{"$ref":"#sale"}},{"$ref":"#car"}]}"##
            ]
        );
    }

    #[test]
    fn rejects_unevaluated_input() {
        let doc = parse_schema_text("true").unwrap();
        let a = Analyzer::new(&doc);
        assert!(enf(&a, &sch(&doc, r#"{"unevaluatedItems":false}"#)).is_err());
    }
}
