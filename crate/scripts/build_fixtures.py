#!/usr/bin/env python3
"""Writes the fixture corpus under crates/core/tests/fixtures.

Each fixture is a hand-written schema with candidate instances. Candidates
are labelled valid/invalid by the `jsonschema` package (Draft 2020-12), so
the expected results do not come from this repository's validator.
"""

import json
import shutil
import sys
from pathlib import Path

from jsonschema import Draft202012Validator

ROOT = Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "fixtures"

COMMON = [None, 1, "x", [], {}]

FIXTURES = []


def fixture(name, schema, instances, adversarial=False):
    FIXTURES.append((name, schema, instances, adversarial))


SALE = {"$anchor": "sale", "properties": {"price": {"type": "integer"}}}
CAR = {"$anchor": "car", "properties": {"plate": {"type": "string"}}}

fixture(
    "sale-car",
    {"anyOf": [{"$ref": "#sale"}, {"$ref": "#car"}], "unevaluatedProperties": False,
     "$defs": {"sale": SALE, "car": CAR}},
    [{"price": 100, "plate": "x111"}, {"price": 100}, {"plate": "x"}, {"price": 1, "color": "red"},
     {"price": "high"}, {"price": "high", "plate": "x"}, {"plate": 3, "price": 1}, {"model": "T"}],
)

fixture(
    "sale-car-items",
    {"items": {"anyOf": [{"$ref": "#sale"}, {"$ref": "#car"}], "unevaluatedProperties": False},
     "$defs": {"sale": SALE, "car": CAR}},
    [[{"price": 100, "plate": "x111"}], [{"price": 1}, {"plate": "y"}], [{"price": 1, "color": 0}],
     [{"plate": "a"}, {"other": 1}], [], [{}], [{"price": 1.5}], [{"plate": "p", "price": 2}, 3]],
)

fixture(
    "worked-example",
    {"items": {"anyOf": [{"$ref": "#sale"}, {"$ref": "#car"}], "unevaluatedProperties": False},
     "$defs": {"sale": {"$anchor": "sale", "properties": {"price": {"type": "integer"}}},
               "car": {"$anchor": "car", "properties": {"model": {"type": "string"}}}}},
    [[{"price": 100, "model": "x111"}], [{"price": 100, "plate": "x111"}], [{"model": "T"}],
     [{"price": "no"}], [{"price": 3}, {"model": 3}], [{"price": 3, "model": "m", "x": 1}]],
)

fixture(
    "props-false-simple",
    {"properties": {"a": {}}, "unevaluatedProperties": False},
    [{"a": 1}, {"a": 1, "b": 2}, {"b": 2}, {}],
)

fixture(
    "props-schema",
    {"properties": {"a": {"type": "integer"}}, "unevaluatedProperties": {"type": "string"}},
    [{"a": 1, "b": "s"}, {"a": 1, "b": 2}, {"b": "s", "c": "t"}, {"a": "s"}, {"c": None}],
)

fixture(
    "props-with-additional",
    {"properties": {"a": {}}, "additionalProperties": {"type": "integer"}, "unevaluatedProperties": False},
    [{"a": "x", "b": 1}, {"b": "x"}, {"a": None}, {"c": 3, "d": 4}],
)

fixture(
    "props-pattern",
    {"patternProperties": {"^x-": {"type": "string"}}, "properties": {"id": {"type": "integer"}},
     "unevaluatedProperties": False},
    [{"x-a": "s", "id": 1}, {"x-a": 1}, {"y": 1}, {"id": 2, "x-": "k"}, {"ax-": "v"}],
)

fixture(
    "props-allof",
    {"allOf": [{"properties": {"a": {"type": "string"}}}, {"properties": {"b": {"type": "integer"}}}],
     "unevaluatedProperties": False},
    [{"a": "x", "b": 1}, {"a": "x", "c": 1}, {"b": "x"}, {"a": "x"}, {}],
)

fixture(
    "props-oneof-kind",
    {"oneOf": [
        {"properties": {"kind": {"const": "A"}, "address": {"type": "string"}, "name": {"type": "string"}},
         "required": ["kind"]},
        {"properties": {"kind": {"const": "M"}, "model": {"type": "string"}, "name": {"type": "string"}},
         "required": ["kind"]}],
     "unevaluatedProperties": False},
    [{"kind": "A", "address": "x"}, {"kind": "A", "model": "x"}, {"kind": "M", "model": "x", "name": "n"},
     {"kind": "M", "address": "x"}, {"kind": "B"}, {"kind": "A", "name": "n"}, {"name": "n"}],
)

fixture(
    "props-not",
    {"properties": {"a": {}}, "not": {"properties": {"b": {"type": "string"}}, "required": ["b"]},
     "unevaluatedProperties": False},
    [{"a": 1}, {"a": 1, "b": 2}, {"b": "s"}, {"b": 1}, {}],
)

fixture(
    "props-if-then-else",
    {"if": {"properties": {"t": {"const": "a"}}, "required": ["t"]},
     "then": {"properties": {"x": {"type": "string"}}},
     "else": {"properties": {"y": {"type": "integer"}}},
     "unevaluatedProperties": False},
    [{"t": "a", "x": "s"}, {"t": "a", "y": 1}, {"t": "b", "y": 1}, {"y": 1}, {"t": "b", "x": "s"},
     {"t": "a"}, {"x": "s"}, {}],
)

fixture(
    "props-if-then",
    {"properties": {"t": {}}, "if": {"required": ["t"]}, "then": {"properties": {"x": {}}},
     "unevaluatedProperties": False},
    [{"t": 1, "x": 1}, {"x": 1}, {"t": 1}, {"t": 1, "y": 1}, {}],
)

fixture(
    "props-nested",
    {"properties": {"a": {"properties": {"b": {}}, "unevaluatedProperties": False}}},
    [{"a": {"b": 1}}, {"a": {"c": 1}}, {"a": {}}, {"a": 1}, {"x": {"c": 1}}],
)

fixture(
    "props-nested-deep",
    {"properties": {"a": {"properties": {"b": {"properties": {"c": {}}, "unevaluatedProperties": False}},
                          "unevaluatedProperties": False}},
     "unevaluatedProperties": False},
    [{"a": {"b": {"c": 1}}}, {"a": {"b": {"d": 1}}}, {"a": {"x": 1}}, {"z": 1}, {"a": {}}],
)

fixture(
    "props-ref-to-uneval",
    {"anyOf": [{"$ref": "#/$defs/u"}, {"properties": {"x": {"type": "integer"}}}],
     "unevaluatedProperties": False,
     "$defs": {"u": {"properties": {"a": {"type": "string"}}, "anyOf": [{"properties": {"b": {}}},
                                                                            {"properties": {"c": {}}}],
                     "unevaluatedProperties": {"type": "integer"}}}},
    [{"a": "s", "b": 1}, {"x": 1}, {"x": "s"}, {"a": "s", "z": 1}, {"a": "s", "z": "s"}, {"x": 1, "q": 1},
     {"a": 1, "x": 1}],
)

fixture(
    "props-recursive-tree",
    {"$ref": "#/$defs/node",
     "$defs": {"node": {"properties": {"value": {"type": "integer"},
                                       "children": {"type": "array", "items": {"$ref": "#/$defs/node"}}},
                        "unevaluatedProperties": False}}},
    [{"value": 1}, {"value": 1, "children": [{"value": 2}]}, {"value": 1, "children": [{"extra": 2}]},
     {"extra": 1}, {"children": [{"children": []}]}, {"value": "x"}],
)

fixture(
    "props-root-ref",
    {"$ref": "#/$defs/base", "properties": {"extra": {"type": "boolean"}}, "unevaluatedProperties": False,
     "$defs": {"base": {"properties": {"id": {"type": "integer"}}, "required": ["id"]}}},
    [{"id": 1}, {"id": 1, "extra": True}, {"id": 1, "other": 1}, {"extra": True}, {"id": 1, "extra": 1}],
)

fixture(
    "props-anyof-additional",
    {"anyOf": [{"properties": {"a": {}}, "additionalProperties": False},
               {"properties": {"b": {}}, "additionalProperties": False}],
     "unevaluatedProperties": False},
    [{"a": 1}, {"b": 1}, {"a": 1, "b": 1}, {"c": 1}, {}],
)

fixture(
    "props-true",
    {"properties": {"a": {"type": "string"}}, "unevaluatedProperties": True},
    [{"a": "s", "b": 1}, {"a": 1}, {}],
)

fixture(
    "props-property-names",
    {"propertyNames": {"maxLength": 2}, "properties": {"a": {}}, "unevaluatedProperties": {"type": "null"}},
    [{"a": 1, "b": None}, {"a": 1, "b": 1}, {"abc": None}, {"ab": None}],
)

fixture(
    "props-counts",
    {"required": ["a"], "minProperties": 2, "maxProperties": 3, "properties": {"a": {}, "b": {}},
     "unevaluatedProperties": {"type": "string"}},
    [{"a": 1, "b": 1}, {"a": 1}, {"a": 1, "c": "s"}, {"a": 1, "c": 1}, {"a": 1, "b": 1, "c": "s", "d": "s"},
     {"b": 1, "c": "s"}],
)

fixture(
    "props-type-array",
    {"type": ["object", "array"], "properties": {"a": {}}, "unevaluatedProperties": False},
    [{"a": 1}, {"b": 1}, [], [1], "x", 1],
)

fixture(
    "props-enum-const",
    {"properties": {"kind": {"enum": ["a", "b"]}, "v": {"const": 1}}, "unevaluatedProperties": False},
    [{"kind": "a"}, {"kind": "c"}, {"v": 1}, {"v": 2}, {"kind": "b", "w": 1}],
)

fixture(
    "props-string-keywords",
    {"properties": {"s": {"type": "string", "minLength": 1, "maxLength": 3, "pattern": "^a"}},
     "unevaluatedProperties": False},
    [{"s": "ab"}, {"s": ""}, {"s": "abcd"}, {"s": "ba"}, {"s": "a", "t": 1}],
)

fixture(
    "props-numeric-keywords",
    {"properties": {"n": {"type": "number", "minimum": 0, "maximum": 10, "multipleOf": 0.5}},
     "unevaluatedProperties": False},
    [{"n": 2.5}, {"n": -1}, {"n": 11}, {"n": 0.3}, {"n": 1, "m": 1}, {"n": 10}],
)

fixture(
    "props-anchor-refs",
    {"allOf": [{"$ref": "#a"}, {"anyOf": [{"$ref": "#b"}, {"$ref": "#c"}]}], "unevaluatedProperties": False,
     "$defs": {"a": {"$anchor": "a", "properties": {"x": {}}},
               "b": {"$anchor": "b", "properties": {"y": {"type": "integer"}}},
               "c": {"$anchor": "c", "properties": {"z": {"type": "integer"}}}}},
    [{"x": 1, "y": 1}, {"x": 1, "y": 1, "z": 1}, {"x": 1, "w": 1}, {"y": "s", "z": 1}, {"y": "s", "z": "s"}],
)

fixture(
    "props-root-self-ref",
    {"properties": {"child": {"$ref": "#"}, "name": {"type": "string"}}, "unevaluatedProperties": False},
    [{"name": "a", "child": {"name": "b"}}, {"child": {"x": 1}}, {"x": 1}, {"child": {"child": {}}}],
)

fixture(
    "props-anyof-three",
    {"anyOf": [{"properties": {"a": {"type": "integer"}}, "required": ["a"]},
               {"properties": {"b": {"type": "integer"}}, "required": ["b"]},
               {"properties": {"c": {"type": "integer"}}, "required": ["c"]}],
     "unevaluatedProperties": False},
    [{"a": 1}, {"a": 1, "b": 1, "c": 1}, {"a": 1, "b": "s"}, {"a": 1, "d": 1}, {"b": 1, "c": 1}, {}],
)

fixture(
    "props-anyof-branch-additional",
    {"anyOf": [{"properties": {"a": {}}, "additionalProperties": {"type": "string"}},
               {"properties": {"b": {}}, "required": ["b"]}],
     "unevaluatedProperties": False},
    [{"a": 1, "x": "s"}, {"a": 1, "x": 1}, {"b": 1, "x": 1}, {"b": 1, "x": "s"}, {"b": 1}],
)

fixture(
    "props-ap-false-sibling",
    {"properties": {"a": {}}, "patternProperties": {"^p": {}}, "additionalProperties": False,
     "anyOf": [{"required": ["a"]}, {"required": ["p1"]}], "unevaluatedProperties": False},
    [{"a": 1}, {"p1": 1}, {"q": 1}, {"a": 1, "p2": 1}, {}],
)

fixture(
    "props-oneof-overlap",
    {"oneOf": [{"properties": {"a": {"type": "integer"}}, "required": ["a"]},
               {"properties": {"b": {"type": "integer"}}, "required": ["b"]}],
     "unevaluatedProperties": False},
    [{"a": 1}, {"a": "s", "b": 1}, {"a": 1, "b": 1}, {"c": 1}, {"a": "s", "b": "s"}],
)

fixture(
    "props-not-not",
    {"not": {"not": {"properties": {"a": {}}}}, "unevaluatedProperties": False},
    [{}, {"a": 1}, 1],
)

fixture(
    "props-conditional-nested-ref",
    {"$defs": {"r": {"if": {"required": ["k"]}, "then": {"properties": {"k": {}, "v": {}}},
                     "else": {"properties": {"w": {}}}, "unevaluatedProperties": False}},
     "properties": {"item": {"$ref": "#/$defs/r"}}},
    [{"item": {"k": 1, "v": 1}}, {"item": {"w": 1}}, {"item": {"k": 1, "w": 1}}, {"item": {"v": 1}}],
)

# Items.

fixture(
    "items-prefix",
    {"prefixItems": [{"type": "number"}], "unevaluatedItems": False},
    [[1], [1, 2], [], ["x"], "x"],
)

fixture(
    "items-contains",
    {"contains": {"type": "string"}, "unevaluatedItems": False},
    [["a"], ["a", "b"], ["a", 1], [], [1]],
)

fixture(
    "items-prefix-contains",
    {"type": "array", "prefixItems": [{"type": "number"}], "anyOf": [{"prefixItems": [{}, {"type": "string"}]}],
     "contains": {"type": "number"}, "unevaluatedItems": False},
    [[3, "a", 3], [3, "a", "a"], [3, "a"], [3], ["a"], [3, 3]],
)

fixture(
    "items-anyof-prefix",
    {"anyOf": [{"prefixItems": [{"type": "integer"}]}, {"prefixItems": [True, {"type": "string"}]}],
     "unevaluatedItems": False},
    [[1], [1, "s"], ["x", "s"], [1, 2], [1, "s", 3], []],
)

fixture(
    "items-with-items",
    {"prefixItems": [{"type": "string"}], "items": {"type": "number"}, "unevaluatedItems": False},
    [["a", 1, 2], ["a", "b"], [], [1]],
)

fixture(
    "items-schema",
    {"prefixItems": [True], "unevaluatedItems": {"type": "string"}},
    [[1, "a"], [1, 2], [1], ["a", "b", "c"]],
)

fixture(
    "items-allof",
    {"allOf": [{"prefixItems": [{"type": "integer"}]}, {"contains": {"type": "string"}}],
     "unevaluatedItems": False},
    [[1, "a"], [1, "a", 2], ["a"], [1, "a", "b"], [1]],
)

fixture(
    "items-oneof",
    {"oneOf": [{"prefixItems": [{"type": "integer"}, {"type": "integer"}]},
               {"prefixItems": [{"type": "string"}]}],
     "unevaluatedItems": False},
    [[1, 2], ["a"], ["a", 1], [1, 2, 3], [1]],
)

fixture(
    "items-if-then-else",
    {"if": {"prefixItems": [{"const": "a"}]}, "then": {"prefixItems": [True, {"type": "integer"}]},
     "else": {"contains": {"type": "null"}}, "unevaluatedItems": False},
    [["a", 1], ["a", 1, 2], ["b", None], ["b"], [None, None], ["a"]],
)

fixture(
    "items-contains-bounds",
    {"contains": {"type": "string"}, "minContains": 2, "maxContains": 3, "unevaluatedItems": {"type": "integer"}},
    [["a", "b"], ["a", 1, "b"], ["a"], ["a", "b", "c", "d"], ["a", "b", None], [1, 2]],
)

fixture(
    "items-nested",
    {"items": {"prefixItems": [True], "unevaluatedItems": False}},
    [[[1], [2]], [[1, 2]], [[]], [1], []],
)

fixture(
    "items-ref",
    {"$ref": "#/$defs/pair", "unevaluatedItems": False,
     "$defs": {"pair": {"prefixItems": [{"type": "string"}, {"type": "integer"}]}}},
    [["a", 1], ["a", 1, 2], ["a"], [1, 1]],
)

fixture(
    "items-not",
    {"prefixItems": [True], "not": {"contains": {"type": "null"}}, "unevaluatedItems": False},
    [[1], [None], [1, 2], []],
)

fixture(
    "items-array-keywords",
    {"minItems": 1, "maxItems": 3, "uniqueItems": True, "prefixItems": [True, True],
     "unevaluatedItems": {"type": "string"}},
    [[1, 2], [1, 1], [1, 2, "a"], [1, 2, 3], [], [1, 2, "a", "b"]],
)

fixture(
    "items-contains-anyof",
    {"anyOf": [{"contains": {"type": "string"}}, {"contains": {"type": "integer"}}], "unevaluatedItems": False},
    [["a"], [1], ["a", 1], ["a", None], [None], []],
)

fixture(
    "both-object-array",
    {"anyOf": [{"properties": {"a": {}}, "required": ["a"]}, {"prefixItems": [{"type": "integer"}], "minItems": 1}],
     "unevaluatedProperties": False, "unevaluatedItems": False},
    [{"a": 1}, {"a": 1, "b": 1}, [1], [1, 2], "x", {}],
)

fixture(
    "both-same-schema",
    {"properties": {"a": {}}, "prefixItems": [True], "unevaluatedProperties": {"type": "integer"},
     "unevaluatedItems": {"type": "integer"}},
    [{"a": "s", "b": 1}, {"b": "s"}, ["s", 1], ["s", "s"], 3],
)

fixture(
    "items-nested-objects",
    {"items": {"properties": {"a": {}}, "unevaluatedProperties": False}, "unevaluatedItems": False},
    [[{"a": 1}], [{"b": 1}], [], [{"a": 1}, 1]],
)

# Classical schemas: elimination must leave them alone.

fixture(
    "classical-additional-properties",
    {"properties": {"a": {"type": "string"}}, "additionalProperties": False},
    [{"a": "s"}, {"a": "s", "b": 1}, {"a": 1}],
)

fixture(
    "classical-items",
    {"prefixItems": [{"type": "string"}], "items": False, "minItems": 1},
    [["a"], ["a", 1], [], [1]],
)

fixture(
    "classical-mixed",
    {"anyOf": [{"type": "string", "pattern": "^x"}, {"type": "integer", "minimum": 3}],
     "not": {"const": "xx"}},
    ["xa", "xx", 3, 2, "a"],
)

for n in (1, 2, 3):
    a = [f"a{i}" for i in range(1, n + 1)]
    fixture(
        f"family-sn-{n}",
        {"anyOf": [{"required": [x], "patternProperties": {x: True}} for x in a], "unevaluatedProperties": False},
        [{"a1": None}, {"a1": None, "-a1-a3-": None}, {"a2": None, "-a1-a3-": None}, {"b": None},
         {"a1": None, "a2": None, "a1a2": None}, {"a2": None, "a2x": 1}, {}],
        adversarial=True,
    )
    fixture(
        f"family-san-{n}",
        {"anyOf": [{"prefixItems": [{"$ref": f"#T{i}"}], "minItems": 1, "contains": {"$ref": f"#T{i}"}}
                   for i in range(1, n + 1)],
         "unevaluatedItems": False,
         "$defs": {f"T{i}": {"$anchor": f"T{i}", "required": [f"a{i}"]} for i in range(1, n + 1)}},
        [[{"a1": None}], [{"a1": None}, {"a1": None, "a2": None}], [{"a1": None}, {"a2": None}], [],
         [{"a2": None}, {"a2": None, "a3": None}], [{"a1": None, "a2": None}, {"a2": None}], [{}]],
        adversarial=True,
    )


def main():
    if ROOT.exists():
        shutil.rmtree(ROOT)
    for name, schema, instances, adversarial in FIXTURES:
        Draft202012Validator.check_schema(schema)
        validator = Draft202012Validator(schema)
        d = ROOT / name
        (d / "valid").mkdir(parents=True)
        (d / "invalid").mkdir()
        (d / "schema.json").write_text(json.dumps(schema, indent=2) + "\n")
        if adversarial:
            (d / "ADVERSARIAL").write_text("")
        counts = {True: 0, False: 0}
        seen = set()
        for inst in instances + COMMON:
            key = json.dumps(inst, sort_keys=True)
            if key in seen:
                continue
            seen.add(key)
            ok = validator.is_valid(inst)
            counts[ok] += 1
            sub = "valid" if ok else "invalid"
            (d / sub / f"{counts[ok]:02d}.json").write_text(json.dumps(inst) + "\n")
        if not counts[True] or not counts[False]:
            sys.exit(f"{name}: needs both valid and invalid witnesses, got {counts}")
    print(f"wrote {len(FIXTURES)} fixtures to {ROOT}")


if __name__ == "__main__":
    main()
