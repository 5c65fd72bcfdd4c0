mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uneval_core::enf::{Normalizer, PlainRefs};
use uneval_core::harness::{bound_violations, cover_violations, universe};
use uneval_core::schema::in_place_depth;
use uneval_core::{
    elim_document, json_equal, parse_json_str, parse_schema, parse_schema_text, serialize_json, serialize_schema,
    Analyzer, JsonValue, Schema, SchemaDocument, Validator,
};

use common::gen;

fn json_value() -> impl Strategy<Value = JsonValue> {
    let number = prop_oneof![
        any::<i64>().prop_map(JsonValue::from_i64),
        (-1000i64..1000, 0u32..4).prop_map(|(m, e)| {
            let text = format!("{m}e-{e}");
            parse_json_str(&text).unwrap()
        }),
    ];
    let leaf = prop_oneof![
        Just(JsonValue::Null),
        any::<bool>().prop_map(JsonValue::Bool),
        number,
        "\\PC{0,6}".prop_map(JsonValue::String),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(JsonValue::Array),
            prop::collection::btree_map("[a-c\"\\\\]{0,3}", inner, 0..4).prop_map(JsonValue::Object),
        ]
    })
}

fn doc_from_seed(seed: u64, classical: bool) -> (String, SchemaDocument) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let text = if classical { gen::classical_text(&mut rng, 2) } else { gen::schema_text(&mut rng, 2) };
    let doc = parse_schema_text(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
    (text, doc)
}

fn instances_from_seed(seed: u64, doc: &SchemaDocument) -> Vec<JsonValue> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut out: Vec<JsonValue> = (0..40).map(|_| gen::instance(&mut rng, 2)).collect();
    out.extend(universe(doc).into_iter().step_by(7));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn json_round_trip(v in json_value()) {
        let back = parse_json_str(&serialize_json(&v)).unwrap();
        prop_assert!(json_equal(&back, &v));
        prop_assert_eq!(serialize_json(&back), serialize_json(&v));
    }

    #[test]
    fn json_equal_is_an_equivalence(a in json_value(), b in json_value(), m in -50i64..50) {
        prop_assert!(json_equal(&a, &a));
        prop_assert_eq!(json_equal(&a, &b), json_equal(&b, &a));
        // Three spellings of one number exercise transitivity.
        let x = parse_json_str(&m.to_string()).unwrap();
        let y = parse_json_str(&format!("{m}.0")).unwrap();
        let z = parse_json_str(&format!("{}e-1", m * 10)).unwrap();
        prop_assert!(json_equal(&x, &y) && json_equal(&y, &z) && json_equal(&x, &z));
        if json_equal(&a, &b) {
            prop_assert!(json_equal(&b, &a));
        }
    }

    #[test]
    fn schema_serialization_is_a_fixpoint(seed in any::<u64>()) {
        let (_, doc) = doc_from_seed(seed, false);
        let once = serialize_schema(&doc);
        let again = parse_schema(&once).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(serialize_json(&serialize_schema(&again)), serialize_json(&once));
    }

    #[test]
    fn validator_invariants(seed in any::<u64>()) {
        let (text, doc) = doc_from_seed(seed, false);
        let v = Validator::new(&doc).unwrap();
        for j in instances_from_seed(seed, &doc) {
            let out = v.validate(&j);
            if !out.valid {
                prop_assert!(out.annotation.is_empty(), "{} on {}", text, j);
            }
            match &j {
                JsonValue::Object(map) => prop_assert!(out.annotation.props.iter().all(|k| map.contains_key(k))),
                JsonValue::Array(items) => prop_assert!(out.annotation.items.iter().all(|i| *i < items.len())),
                _ => prop_assert!(out.annotation.is_empty()),
            }
            let nn = v.validate_schema(&Schema::not(Schema::not(doc.root.clone())), &j);
            prop_assert_eq!(nn.valid, out.valid);
            prop_assert!(nn.annotation.is_empty());
        }
    }

    #[test]
    fn any_of_annotation_is_the_union(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (t1, _) = doc_from_seed(s1, false);
        let (t2, _) = doc_from_seed(s2, false);
        let doc = parse_schema_text(&format!(r#"{{"anyOf":[{t1},{t2}]}}"#)).unwrap();
        let branches = doc.root.as_any_of().unwrap();
        let v = Validator::new(&doc).unwrap();
        for j in instances_from_seed(s1, &doc) {
            let whole = v.validate(&j);
            let mut expected = uneval_core::Annotation::default();
            let mut any = false;
            for b in branches {
                let o = v.validate_schema(b, &j);
                if o.valid {
                    any = true;
                    expected.extend(o.annotation);
                }
            }
            prop_assert_eq!(whole.valid, any);
            if any {
                prop_assert_eq!(whole.annotation, expected);
            }
        }
    }

    #[test]
    fn normal_form_is_equivalent_and_well_shaped(seed in any::<u64>()) {
        let (text, doc) = doc_from_seed(seed, true);
        let a = Analyzer::new(&doc);
        let mut n = Normalizer::new(&a);
        let normal = n.enf(&doc.root, &mut PlainRefs).unwrap();
        prop_assert!(n.max_depth <= in_place_depth(&doc, &doc.root), "{}", text);
        let branches = normal.as_any_of().expect("single anyOf");
        prop_assert_eq!(normal.keywords().len(), 1);
        for b in branches {
            prop_assert!(a.is_characterized(b), "{} has uncharacterized branch {}", text, b);
        }
        let v = Validator::new(&doc).unwrap();
        for j in instances_from_seed(seed, &doc) {
            prop_assert_eq!(v.is_valid(&j), v.validate_schema(&normal, &j).valid, "{} on {}", text, j);
            // Cover-closure on this instance: any two succeeding branches have
            // a succeeding branch that evaluates everything both evaluate.
            let outs: Vec<_> = branches.iter().map(|b| v.validate_schema(b, &j)).filter(|o| o.valid).collect();
            for x in &outs {
                for y in &outs {
                    let covered = outs.iter().any(|c| {
                        x.annotation.props.is_subset(&c.annotation.props)
                            && y.annotation.props.is_subset(&c.annotation.props)
                            && x.annotation.items.is_subset(&c.annotation.items)
                            && y.annotation.items.is_subset(&c.annotation.items)
                    });
                    prop_assert!(covered, "{} on {}", text, j);
                }
            }
        }
    }

    #[test]
    fn bounds_and_covers_are_sound(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (t1, _) = doc_from_seed(s1, false);
        let (t2, _) = doc_from_seed(s2, false);
        let doc = parse_schema_text(&format!(r#"{{"$defs":{{"x":{t1},"y":{t2}}}}}"#)).unwrap();
        let a = Analyzer::new(&doc);
        let v = Validator::new(&doc).unwrap();
        let instances = instances_from_seed(s1, &doc);
        let (x, y) = (&doc.defs["x"], &doc.defs["y"]);
        for s in [x, y] {
            let bad = bound_violations(&a, &v, s, &instances);
            prop_assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(2)]);
        }
        prop_assert!(cover_violations(&a, &v, x, y, &instances).is_empty());
        prop_assert!(cover_violations(&a, &v, y, x, &instances).is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn elimination_is_equivalent_and_idempotent(seed in any::<u64>()) {
        let (text, doc) = doc_from_seed(seed, false);
        let (once, _) = elim_document(&doc).unwrap();
        let (twice, _) = elim_document(&once).unwrap();
        let (v0, v1, v2) = (Validator::new(&doc).unwrap(), Validator::new(&once).unwrap(), Validator::new(&twice).unwrap());
        let mut instances = instances_from_seed(seed, &doc);
        instances.extend(universe(&doc));
        for j in instances {
            let expected = v0.is_valid(&j);
            prop_assert_eq!(v1.is_valid(&j), expected, "{} on {}", text, j);
            prop_assert_eq!(v2.is_valid(&j), expected, "{} on {}", text, j);
        }
    }
}

#[test]
fn corpus_validation_upholds_invariants() {
    for f in common::corpus() {
        let v = Validator::new(&f.doc).unwrap();
        for j in universe(&f.doc) {
            let out = v.validate(&j);
            if !out.valid {
                assert!(out.annotation.is_empty(), "{}: {j}", f.name);
            }
            let nn = v.validate_schema(&Schema::not(Schema::not(f.doc.root.clone())), &j);
            assert_eq!(nn.valid, out.valid, "{}: {j}", f.name);
            assert!(nn.annotation.is_empty());
        }
    }
}

#[test]
fn family_growth_stays_within_size_bound() {
    use uneval_core::harness::{document_size, gen_family_sn};
    for n in 1..=4usize {
        let doc = gen_family_sn(n);
        let (out, stats) = elim_document(&doc).unwrap();
        assert_eq!(stats.total_branches(), (1 << n) - 1);
        let mut nodes = 0usize;
        doc.root.walk(&mut |_| nodes += 1);
        assert!(document_size(&out) <= (1usize << nodes) * nodes * document_size(&doc), "n = {n}");
    }
}
