//! Rewriting `unevaluatedProperties` / `unevaluatedItems` away.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::analysis::{Analyzer, ItemBound};
use crate::enf::{Normalizer, RefResolver};
use crate::error::{ElimError, SchemaError};
use crate::pattern::PatternSet;
use crate::schema::{find_unguarded_cycle, Keyword, Reference, Schema, SchemaDocument, Target};

const FRESH_PREFIX: &str = "__uneval_";
const MAX_NAME_ATTEMPTS: u64 = 1 << 20;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ElimStats {
    /// Normal-form branch count per rewritten named schema.
    pub enf_branches: BTreeMap<String, usize>,
    /// Definitions introduced by unnesting.
    pub fresh_defs: Vec<String>,
}

impl ElimStats {
    pub fn total_branches(&self) -> usize {
        self.enf_branches.values().sum()
    }
}

struct FreshNames<'a> {
    taken: &'a BTreeSet<String>,
    next: u64,
}

impl FreshNames<'_> {
    fn next(&mut self) -> Result<String, ElimError> {
        while self.next < MAX_NAME_ATTEMPTS {
            let name = format!("{FRESH_PREFIX}{}", self.next);
            self.next += 1;
            if !self.taken.contains(&name) {
                return Ok(name);
            }
        }
        Err(ElimError::NamesExhausted)
    }
}

fn lift(
    s: &mut Schema,
    top: bool,
    names: &mut FreshNames<'_>,
    out: &mut Vec<(String, Schema)>,
) -> Result<(), ElimError> {
    if let Schema::Object(kws) = s {
        for kw in kws.iter_mut() {
            for sub in kw.subschemas_mut() {
                lift(sub, false, names, out)?;
            }
        }
    }
    if !top && s.has_unevaluated() {
        let name = names.next()?;
        let body = std::mem::replace(s, Schema::reference(Reference::to_def(&name)));
        out.push((name, body));
    }
    Ok(())
}

/// Moves every nested schema with an `unevaluated*` keyword into a fresh
/// definition, innermost first, leaving a reference in its place.
pub fn unnest(doc: &SchemaDocument) -> Result<(SchemaDocument, Vec<String>), ElimError> {
    let mut out = doc.clone();
    let taken: BTreeSet<String> = doc.defs.keys().cloned().collect();
    let mut names = FreshNames { taken: &taken, next: 0 };
    let mut fresh = Vec::new();
    for target in doc.targets() {
        let schema = out.get_mut(&target).expect("target exists");
        lift(schema, true, &mut names, &mut fresh)?;
    }
    let added = fresh.iter().map(|(n, _)| n.clone()).collect();
    out.defs.extend(fresh);
    Ok((out, added))
}

/// `patternProperties` mapping each pattern to `{}`.
pub fn p_props(patterns: &PatternSet) -> Keyword {
    Keyword::PatternProperties(patterns.iter().map(|p| (p.clone(), Schema::Object(vec![]))).collect())
}

/// `prefixItems` of `h` true schemas.
pub fn pref_its(h: u64) -> Keyword {
    Keyword::PrefixItems(vec![Schema::Bool(true); h as usize])
}

fn branches_of(enf_schema: &Schema) -> Result<&[Schema], ElimError> {
    enf_schema.as_any_of().ok_or_else(|| ElimError::Internal(format!("not in normal form: {enf_schema}")))
}

/// Applies `s_u` to the properties no branch member evaluates.
pub fn push_uneval_props(analyzer: &Analyzer<'_>, s_u: &Schema, enf_schema: &Schema) -> Result<Schema, ElimError> {
    let branches = branches_of(enf_schema)?
        .iter()
        .map(|b| {
            let ex = analyzer
                .ex_ep(b)
                .ok_or_else(|| ElimError::Internal(format!("branch without exact property bound: {b}")))?;
            let rest = Schema::object(vec![p_props(&ex), Keyword::AdditionalProperties(Box::new(s_u.clone()))]);
            Ok(Schema::all_of(vec![b.clone(), rest]))
        })
        .collect::<Result<Vec<_>, ElimError>>()?;
    Ok(Schema::any_of(branches))
}

/// Applies `s_u` to the items no branch member evaluates.
pub fn push_uneval_items(analyzer: &Analyzer<'_>, s_u: &Schema, enf_schema: &Schema) -> Result<Schema, ElimError> {
    let branches = branches_of(enf_schema)?
        .iter()
        .map(|b| {
            let ex = analyzer
                .ex_ei(b)
                .ok_or_else(|| ElimError::Internal(format!("branch without exact item bound: {b}")))?;
            let ItemBound::Finite(h) = ex.h else {
                return Ok(b.clone());
            };
            let rest = Schema::object(vec![
                pref_its(h),
                Keyword::Items(Box::new(Schema::any_of(vec![s_u.clone(), ex.guard]))),
            ]);
            Ok(Schema::all_of(vec![b.clone(), rest]))
        })
        .collect::<Result<Vec<_>, ElimError>>()?;
    Ok(Schema::any_of(branches))
}

/// Rewrites the named schemas of an unnested document. References to
/// targets that still carry `unevaluated*` keywords are normalized through
/// their rewritten form.
pub struct Eliminator<'d> {
    doc: &'d SchemaDocument,
    done: HashMap<Target, Schema>,
    pub stats: ElimStats,
}

impl<'d> Eliminator<'d> {
    pub fn new(doc: &'d SchemaDocument) -> Self {
        Eliminator { doc, done: HashMap::new(), stats: ElimStats::default() }
    }

    pub fn elim_target(&mut self, target: &Target, n: &mut Normalizer<'_, '_>) -> Result<Schema, ElimError> {
        if let Some(s) = self.done.get(target) {
            return Ok(s.clone());
        }
        let schema = self.doc.get(target).ok_or_else(|| ElimError::Internal(format!("dangling reference {target}")))?;
        let out = self.elim_schema(schema, n, Some(target))?;
        self.done.insert(target.clone(), out.clone());
        Ok(out)
    }

    /// Schemas without `unevaluated*` keywords come back unchanged.
    pub fn elim_schema(
        &mut self,
        s: &Schema,
        n: &mut Normalizer<'_, '_>,
        target: Option<&Target>,
    ) -> Result<Schema, ElimError> {
        let mut inert = Vec::new();
        let mut body = Vec::new();
        let mut uneval_props = None;
        let mut uneval_items = None;
        for kw in s.keywords() {
            match kw {
                Keyword::UnevaluatedProperties(su) => uneval_props = Some((**su).clone()),
                Keyword::UnevaluatedItems(su) => uneval_items = Some((**su).clone()),
                k if k.is_inert() => inert.push(k.clone()),
                k => body.push(k.clone()),
            }
        }
        if uneval_props.is_none() && uneval_items.is_none() {
            return Ok(s.clone());
        }
        let e = n.enf(&Schema::Object(body), self)?;
        let count = e.as_any_of().map_or(0, <[Schema]>::len);
        if let Some(t) = target {
            self.stats.enf_branches.insert(t.to_string(), count);
        }
        let a = n.analyzer;
        let rewritten = match (uneval_props, uneval_items) {
            (Some(p), Some(i)) => Schema::all_of(vec![push_uneval_props(a, &p, &e)?, push_uneval_items(a, &i, &e)?]),
            (Some(p), None) => push_uneval_props(a, &p, &e)?,
            (None, Some(i)) => push_uneval_items(a, &i, &e)?,
            (None, None) => unreachable!("checked above"),
        };
        if inert.is_empty() {
            return Ok(rewritten);
        }
        let mut kws = inert;
        kws.extend(rewritten.keywords().iter().cloned());
        Ok(Schema::object(kws))
    }
}

impl RefResolver for Eliminator<'_> {
    fn resolve(&mut self, target: &Target, n: &mut Normalizer<'_, '_>) -> Result<Vec<Schema>, ElimError> {
        let doc = self.doc;
        let schema = doc.get(target).ok_or_else(|| ElimError::Internal(format!("dangling reference {target}")))?;
        if schema.has_unevaluated() {
            let rewritten = self.elim_target(target, n)?;
            n.enf_list(&rewritten, self)
        } else {
            n.enf_list(schema, self)
        }
    }
}

/// Unnests the document and rewrites every named schema, the root
/// included. The result has no `unevaluated*` keywords.
pub fn elim_document(doc: &SchemaDocument) -> Result<(SchemaDocument, ElimStats), ElimError> {
    if let Some(cycle) = find_unguarded_cycle(doc) {
        return Err(SchemaError::UnguardedRecursion { cycle }.into());
    }
    let (unnested, fresh) = unnest(doc)?;
    let analyzer = Analyzer::new(&unnested);
    let mut n = Normalizer::new(&analyzer);
    let mut elim = Eliminator::new(&unnested);
    elim.stats.fresh_defs = fresh;
    let mut out = unnested.clone();
    for target in unnested.targets() {
        let rewritten = elim.elim_target(&target, &mut n)?;
        *out.get_mut(&target).expect("target exists") = rewritten;
    }
    Ok((out, elim.stats))
}

/// Normal form of a named schema with its `unevaluated*` keywords set
/// aside, as computed during elimination.
pub fn enf_named(doc: &SchemaDocument, target: &Target) -> Result<Schema, ElimError> {
    if let Some(cycle) = find_unguarded_cycle(doc) {
        return Err(SchemaError::UnguardedRecursion { cycle }.into());
    }
    let (unnested, _) = unnest(doc)?;
    let schema = unnested.get(target).ok_or_else(|| ElimError::Internal(format!("no schema at {target}")))?;
    let body = schema.keywords().iter().filter(|k| !k.is_unevaluated()).cloned().collect();
    let body = match schema {
        Schema::Bool(_) => schema.clone(),
        Schema::Object(_) => Schema::Object(body),
    };
    let analyzer = Analyzer::new(&unnested);
    let mut n = Normalizer::new(&analyzer);
    let mut elim = Eliminator::new(&unnested);
    n.enf(&body, &mut elim)
}
