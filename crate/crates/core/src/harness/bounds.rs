//! Brute-force checks of the static bounds against actual annotations.

use crate::analysis::Analyzer;
use crate::json::{serialize_json, JsonValue};
use crate::schema::Schema;
use crate::validator::{Annotation, Validator};

/// Every way `schema`'s bounds disagree with the annotation it produces on
/// the valid instances among `instances`. Empty means the bounds are sound
/// and, where defined, exact.
pub fn bound_violations(
    analyzer: &Analyzer<'_>,
    validator: &Validator<'_>,
    schema: &Schema,
    instances: &[JsonValue],
) -> Vec<String> {
    let (min_ep, max_ep) = analyzer.ep(schema);
    let (min_ei, max_ei) = analyzer.ei(schema);
    let ex_ep = analyzer.ex_ep(schema);
    let ex_ei = analyzer.ex_ei(schema);
    let mut out = Vec::new();
    for j in instances {
        let outcome = validator.validate_schema(schema, j);
        if !outcome.valid {
            continue;
        }
        let Annotation { props, items } = outcome.annotation;
        let shown = || serialize_json(j);
        if let Some(map) = j.as_object() {
            for k in map.keys() {
                let evaluated = props.contains(k);
                if min_ep.matches(k) && !evaluated {
                    out.push(format!("{}: {k:?} matches minEP but is not evaluated", shown()));
                }
                if evaluated && !max_ep.matches(k) {
                    out.push(format!("{}: {k:?} is evaluated but misses maxEP", shown()));
                }
                if let Some(ex) = &ex_ep {
                    if ex.matches(k) != evaluated {
                        out.push(format!("{}: exEP disagrees on {k:?}", shown()));
                    }
                }
            }
        }
        if let Some(arr) = j.as_array() {
            for (i, item) in arr.iter().enumerate() {
                let evaluated = items.contains(&i);
                if min_ei.satisfied_by(validator, i, item) && !evaluated {
                    out.push(format!("{}: item {i} satisfies minEI but is not evaluated", shown()));
                }
                if evaluated && !max_ei.satisfied_by(validator, i, item) {
                    out.push(format!("{}: item {i} is evaluated but misses maxEI", shown()));
                }
                if let Some(ex) = &ex_ei {
                    if ex.satisfied_by(validator, i, item) != evaluated {
                        out.push(format!("{}: exEI disagrees on item {i}", shown()));
                    }
                }
            }
        }
    }
    out
}

/// Instances where `covers_check(s1, s2)` holds but `s1` misses something
/// `s2` evaluates.
pub fn cover_violations(
    analyzer: &Analyzer<'_>,
    validator: &Validator<'_>,
    s1: &Schema,
    s2: &Schema,
    instances: &[JsonValue],
) -> Vec<String> {
    if !analyzer.covers_check(s1, s2) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for j in instances {
        let a = validator.validate_schema(s1, j);
        let b = validator.validate_schema(s2, j);
        if a.valid
            && b.valid
            && !(b.annotation.props.is_subset(&a.annotation.props) && b.annotation.items.is_subset(&a.annotation.items))
        {
            out.push(serialize_json(j));
        }
    }
    out
}
