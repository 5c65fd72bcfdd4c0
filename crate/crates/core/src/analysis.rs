//! Static bounds on the properties and items a schema evaluates.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::json::JsonValue;
use crate::pattern::{Pattern, PatternSet};
use crate::schema::{canonical_text, Keyword, Schema, SchemaDocument, Target};
use crate::validator::Validator;

/// Number of leading items, or every item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ItemBound {
    Finite(u64),
    Infinite,
}

impl ItemBound {
    /// Whether the zero-based position `i` lies within the bound.
    pub fn covers(self, i: usize) -> bool {
        match self {
            ItemBound::Finite(h) => (i as u64) < h,
            ItemBound::Infinite => true,
        }
    }
}

impl fmt::Display for ItemBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ItemBound::Finite(h) => write!(f, "{h}"),
            ItemBound::Infinite => f.write_str("inf"),
        }
    }
}

/// `(h, S)`: the items at positions below `h`, plus every item satisfying `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalPair {
    pub h: ItemBound,
    pub guard: Schema,
}

impl EvalPair {
    /// Normalizes the two ways of saying "all items".
    pub fn new(h: ItemBound, guard: Schema) -> Self {
        if h == ItemBound::Infinite || guard.is_true() {
            EvalPair { h: ItemBound::Infinite, guard: Schema::Bool(true) }
        } else {
            EvalPair { h, guard }
        }
    }

    pub fn none() -> Self {
        EvalPair { h: ItemBound::Finite(0), guard: Schema::Bool(false) }
    }

    pub fn all() -> Self {
        EvalPair::new(ItemBound::Infinite, Schema::Bool(true))
    }

    pub fn is_all(&self) -> bool {
        self.h == ItemBound::Infinite
    }

    /// Largest `h` and the disjunction of guards.
    pub fn join(pairs: impl IntoIterator<Item = EvalPair>) -> EvalPair {
        let (hs, guards): (Vec<_>, Vec<_>) = pairs.into_iter().map(|p| (p.h, p.guard)).unzip();
        EvalPair::new(hs.into_iter().max().unwrap_or(ItemBound::Finite(0)), guard_any(guards))
    }

    /// Smallest `h` and the conjunction of guards. An empty meet is `(0, false)`.
    pub fn meet(pairs: impl IntoIterator<Item = EvalPair>) -> EvalPair {
        let (hs, guards): (Vec<_>, Vec<_>) = pairs.into_iter().map(|p| (p.h, p.guard)).unzip();
        if hs.is_empty() {
            return EvalPair::none();
        }
        EvalPair::new(hs.into_iter().min().expect("non-empty"), guard_all(guards))
    }

    /// Whether `item`, at zero-based position `i`, satisfies the pair.
    pub fn satisfied_by(&self, validator: &Validator<'_>, i: usize, item: &JsonValue) -> bool {
        self.h.covers(i) || validator.validate_schema(&self.guard, item).valid
    }
}

impl fmt::Display for EvalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h, self.guard)
    }
}

fn dedup_by_text(schemas: Vec<Schema>) -> Vec<Schema> {
    let mut seen = BTreeSet::new();
    schemas.into_iter().filter(|s| seen.insert(canonical_text(s))).collect()
}

/// Disjunction with the obvious simplifications.
pub fn guard_any(guards: Vec<Schema>) -> Schema {
    let mut parts = Vec::new();
    for g in guards {
        match g {
            Schema::Bool(true) => return Schema::Bool(true),
            Schema::Bool(false) => {}
            other => match other.as_any_of() {
                Some(inner) => parts.extend(inner.iter().cloned()),
                None => parts.push(other),
            },
        }
    }
    let mut parts = dedup_by_text(parts);
    match parts.len() {
        0 => Schema::Bool(false),
        1 => parts.pop().expect("one"),
        _ => Schema::any_of(parts),
    }
}

/// Conjunction with the obvious simplifications.
pub fn guard_all(guards: Vec<Schema>) -> Schema {
    let mut parts = Vec::new();
    for g in guards {
        match g {
            Schema::Bool(false) => return Schema::Bool(false),
            Schema::Bool(true) => {}
            other => match other.as_all_of() {
                Some(inner) => parts.extend(inner.iter().cloned()),
                None => parts.push(other),
            },
        }
    }
    let mut parts = dedup_by_text(parts);
    match parts.len() {
        0 => Schema::Bool(true),
        1 => parts.pop().expect("one"),
        _ => Schema::all_of(parts),
    }
}

/// The equality used to decide when the lower and upper bounds agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EqStrategy {
    /// Same pattern strings.
    Syntactic,
    /// Same pattern strings, or both sets contain `.*`.
    #[default]
    DotStarAbsorbing,
}

impl EqStrategy {
    pub fn patterns(self, a: &PatternSet, b: &PatternSet) -> bool {
        a == b || (self == EqStrategy::DotStarAbsorbing && a.contains_dot_star() && b.contains_dot_star())
    }

    pub fn pairs(self, a: &EvalPair, b: &EvalPair) -> bool {
        a.h == b.h && canonical_text(&a.guard) == canonical_text(&b.guard)
    }
}

pub fn eq_patterns(a: &PatternSet, b: &PatternSet) -> bool {
    EqStrategy::default().patterns(a, b)
}

pub fn eq_pairs(a: &EvalPair, b: &EvalPair) -> bool {
    EqStrategy::default().pairs(a, b)
}

type Bounds<T> = (T, T);

/// Computes bounds over one document, caching results per named schema.
pub struct Analyzer<'d> {
    doc: &'d SchemaDocument,
    eq: EqStrategy,
    ep_memo: RefCell<HashMap<Target, Bounds<PatternSet>>>,
    ei_memo: RefCell<HashMap<Target, Bounds<EvalPair>>>,
}

impl<'d> Analyzer<'d> {
    /// The document must satisfy guarded recursion.
    pub fn new(doc: &'d SchemaDocument) -> Self {
        Analyzer::with_eq(doc, EqStrategy::default())
    }

    pub fn with_eq(doc: &'d SchemaDocument, eq: EqStrategy) -> Self {
        Analyzer { doc, eq, ep_memo: RefCell::default(), ei_memo: RefCell::default() }
    }

    pub fn document(&self) -> &'d SchemaDocument {
        self.doc
    }

    pub fn min_ep(&self, s: &Schema) -> PatternSet {
        self.ep(s).0
    }

    pub fn max_ep(&self, s: &Schema) -> PatternSet {
        self.ep(s).1
    }

    pub fn min_ei(&self, s: &Schema) -> EvalPair {
        self.ei(s).0
    }

    pub fn max_ei(&self, s: &Schema) -> EvalPair {
        self.ei(s).1
    }

    pub fn ex_ep(&self, s: &Schema) -> Option<PatternSet> {
        let (min, max) = self.ep(s);
        self.eq.patterns(&min, &max).then_some(min)
    }

    pub fn ex_ei(&self, s: &Schema) -> Option<EvalPair> {
        let (min, max) = self.ei(s);
        self.eq.pairs(&min, &max).then_some(min)
    }

    /// Both characterizations are defined.
    pub fn is_characterized(&self, s: &Schema) -> bool {
        self.ex_ep(s).is_some() && self.ex_ei(s).is_some()
    }

    /// Sound check that `s1` covers the pair `(s1, s2)`: on instances valid
    /// for both, `s1` evaluates everything `s2` does.
    pub fn covers_check(&self, s1: &Schema, s2: &Schema) -> bool {
        if !self.min_ep(s1).proves_superset_of(&self.max_ep(s2)) {
            return false;
        }
        let lower = self.min_ei(s1);
        let upper = self.max_ei(s2);
        lower.is_all()
            || (lower.h >= upper.h
                && (upper.guard.is_false() || canonical_text(&upper.guard) == canonical_text(&lower.guard)))
    }

    /// `(minEP, maxEP)`.
    pub fn ep(&self, s: &Schema) -> Bounds<PatternSet> {
        let mut min = PatternSet::empty();
        let mut max = PatternSet::empty();
        for kw in s.keywords() {
            let (lo, hi) = self.ep_keyword(kw);
            min = min.union(&lo);
            max = max.union(&hi);
        }
        (min, max)
    }

    fn ep_keyword(&self, kw: &Keyword) -> Bounds<PatternSet> {
        match kw {
            Keyword::Properties(map) => {
                let set: PatternSet = map.keys().map(|k| Pattern::exact(k)).collect();
                (set.clone(), set)
            }
            Keyword::PatternProperties(entries) => {
                let set: PatternSet = entries.iter().map(|(p, _)| p.clone()).collect();
                (set.clone(), set)
            }
            Keyword::AdditionalProperties(_) | Keyword::UnevaluatedProperties(_) => {
                (PatternSet::dot_star(), PatternSet::dot_star())
            }
            Keyword::AllOf(args) => {
                let mut min = PatternSet::empty();
                let mut max = PatternSet::empty();
                for a in args {
                    let (lo, hi) = self.ep(a);
                    min = min.union(&lo);
                    max = max.union(&hi);
                }
                (min, max)
            }
            Keyword::AnyOf(args) | Keyword::OneOf(args) => self.ep_disjunction(args),
            Keyword::Conditional { if_, then, else_ } => {
                self.ep(&Keyword::conditional_as_any_of(if_, then.as_deref(), else_.as_deref()))
            }
            Keyword::Ref(r) => {
                if let Some(b) = self.ep_memo.borrow().get(&r.target) {
                    return b.clone();
                }
                let b = self.ep(self.doc.deref(r));
                self.ep_memo.borrow_mut().insert(r.target.clone(), b.clone());
                b
            }
            _ => (PatternSet::empty(), PatternSet::empty()),
        }
    }

    fn ep_disjunction(&self, args: &[Schema]) -> Bounds<PatternSet> {
        let mut bounds = args.iter().map(|a| self.ep(a));
        let Some((mut min, mut max)) = bounds.next() else {
            return (PatternSet::empty(), PatternSet::empty());
        };
        for (lo, hi) in bounds {
            min = min.intersection(&lo);
            max = max.union(&hi);
        }
        (min, max)
    }

    /// `(minEI, maxEI)`.
    pub fn ei(&self, s: &Schema) -> Bounds<EvalPair> {
        let pairs: Vec<_> = s.keywords().iter().map(|k| self.ei_keyword(k)).collect();
        let (lo, hi): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        (EvalPair::join(lo), EvalPair::join(hi))
    }

    fn ei_keyword(&self, kw: &Keyword) -> Bounds<EvalPair> {
        match kw {
            Keyword::PrefixItems(list) => {
                let p = EvalPair::new(ItemBound::Finite(list.len() as u64), Schema::Bool(false));
                (p.clone(), p)
            }
            Keyword::Contains { schema, .. } => {
                let p = EvalPair::new(ItemBound::Finite(0), (**schema).clone());
                (p.clone(), p)
            }
            Keyword::Items(_) | Keyword::UnevaluatedItems(_) => (EvalPair::all(), EvalPair::all()),
            Keyword::AllOf(args) => {
                let (lo, hi): (Vec<_>, Vec<_>) = args.iter().map(|a| self.ei(a)).unzip();
                (EvalPair::join(lo), EvalPair::join(hi))
            }
            Keyword::AnyOf(args) | Keyword::OneOf(args) => {
                let (lo, hi): (Vec<_>, Vec<_>) = args.iter().map(|a| self.ei(a)).unzip();
                (EvalPair::meet(lo), EvalPair::join(hi))
            }
            Keyword::Conditional { if_, then, else_ } => {
                self.ei(&Keyword::conditional_as_any_of(if_, then.as_deref(), else_.as_deref()))
            }
            Keyword::Ref(r) => {
                if let Some(b) = self.ei_memo.borrow().get(&r.target) {
                    return b.clone();
                }
                let b = self.ei(self.doc.deref(r));
                self.ei_memo.borrow_mut().insert(r.target.clone(), b.clone());
                b
            }
            _ => (EvalPair::none(), EvalPair::none()),
        }
    }
}
