//! Reference graph checks and the in-place depth measure.

use std::collections::{BTreeSet, HashMap};

use super::{Keyword, Schema, SchemaDocument, Target};

/// `oneOf` spelled with the other boolean keywords: one branch per argument,
/// that argument positive and all others negated.
pub fn boolean_one_of(args: &[Schema]) -> Schema {
    let branches = (0..args.len())
        .map(|i| {
            Schema::all_of(
                args.iter().enumerate().map(|(j, s)| if i == j { s.clone() } else { Schema::not(s.clone()) }).collect(),
            )
        })
        .collect();
    Schema::any_of(branches)
}

/// Targets referenced from the in-place part of `schema`: its own `$ref`
/// and those reachable through boolean keyword arguments.
fn in_place_refs(schema: &Schema, out: &mut BTreeSet<Target>) {
    for kw in schema.keywords() {
        match kw {
            Keyword::Ref(r) => {
                out.insert(r.target.clone());
            }
            Keyword::AllOf(_)
            | Keyword::AnyOf(_)
            | Keyword::OneOf(_)
            | Keyword::Not(_)
            | Keyword::Conditional { .. } => {
                for sub in kw.subschemas() {
                    in_place_refs(sub, out);
                }
            }
            _ => {}
        }
    }
}

/// One cycle of the in-place dependency graph, if any.
pub fn find_unguarded_cycle(doc: &SchemaDocument) -> Option<Vec<String>> {
    let edges: HashMap<Target, BTreeSet<Target>> = doc
        .named()
        .map(|(t, s)| {
            let mut refs = BTreeSet::new();
            in_place_refs(s, &mut refs);
            (t, refs)
        })
        .collect();

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    fn visit(
        t: &Target,
        edges: &HashMap<Target, BTreeSet<Target>>,
        marks: &mut HashMap<Target, Mark>,
        stack: &mut Vec<Target>,
    ) -> Option<Vec<String>> {
        match marks.get(t) {
            Some(Mark::Done) => return None,
            Some(Mark::Active) => {
                let start = stack.iter().position(|s| s == t).expect("active node on stack");
                let mut cycle: Vec<String> = stack[start..].iter().map(Target::to_string).collect();
                cycle.push(t.to_string());
                return Some(cycle);
            }
            None => {}
        }
        marks.insert(t.clone(), Mark::Active);
        stack.push(t.clone());
        for next in edges.get(t).into_iter().flatten() {
            if let Some(cycle) = visit(next, edges, marks, stack) {
                return Some(cycle);
            }
        }
        stack.pop();
        marks.insert(t.clone(), Mark::Done);
        None
    }

    let mut marks = HashMap::new();
    for t in doc.targets() {
        if let Some(cycle) = visit(&t, &edges, &mut marks, &mut Vec::new()) {
            return Some(cycle);
        }
    }
    None
}

/// True iff every reference cycle crosses a structural keyword.
pub fn check_guarded(doc: &SchemaDocument) -> bool {
    find_unguarded_cycle(doc).is_none()
}

struct Depth<'d> {
    doc: &'d SchemaDocument,
    memo: HashMap<Target, usize>,
    active: BTreeSet<Target>,
}

impl Depth<'_> {
    fn schema(&mut self, s: &Schema) -> usize {
        match s {
            Schema::Bool(_) => 0,
            Schema::Object(kws) => kws.iter().map(|k| self.keyword(k)).max().unwrap_or(0) + 1,
        }
    }

    fn keyword(&mut self, kw: &Keyword) -> usize {
        match kw {
            Keyword::AllOf(args) | Keyword::AnyOf(args) => args.iter().map(|s| self.schema(s)).max().unwrap_or(0) + 1,
            Keyword::Not(s) => self.schema(s) + 1,
            Keyword::OneOf(args) => {
                // Depth of boolean_one_of(args), computed without building it.
                let d: Vec<usize> = args.iter().map(|s| self.schema(s)).collect();
                let branch = |i: usize| {
                    let negated = d.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x + 2).max().unwrap_or(0);
                    d[i].max(negated) + 2
                };
                let expansion = (0..d.len()).map(branch).max().unwrap_or(0) + 2;
                expansion + 1
            }
            Keyword::Conditional { if_, then, else_ } => {
                let desugared = Keyword::conditional_as_any_of(if_, then.as_deref(), else_.as_deref());
                self.schema(&desugared) + 1
            }
            Keyword::Ref(r) => {
                if let Some(&d) = self.memo.get(&r.target) {
                    return d + 1;
                }
                assert!(self.active.insert(r.target.clone()), "in-place depth requires guarded recursion ({})", r.raw);
                let d = self.schema(self.doc.deref(r));
                self.active.remove(&r.target);
                self.memo.insert(r.target.clone(), d);
                d + 1
            }
            _ => 0,
        }
    }
}

/// In-place depth of a schema. The document must satisfy guarded recursion.
pub fn in_place_depth(doc: &SchemaDocument, schema: &Schema) -> usize {
    Depth { doc, memo: HashMap::new(), active: BTreeSet::new() }.schema(schema)
}

pub fn in_place_depth_keyword(doc: &SchemaDocument, kw: &Keyword) -> usize {
    Depth { doc, memo: HashMap::new(), active: BTreeSet::new() }.keyword(kw)
}
