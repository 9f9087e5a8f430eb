"""Serialization round-trips and format sanity."""

import json

import pytest
from hypothesis import given, settings

from flc.automata import (Alphabet, compile_pattern, export, from_json, to_dot,
                          to_json)
from flc.errors import ValidationError

from strategies import dfas

MOVES = Alphabet.of("n", "f", "l", "r")
PATTERN = ".* ((l r){2}|(r l){2})"


def test_json_round_trip_is_lossless():
    dfa = compile_pattern(PATTERN, MOVES)
    assert from_json(to_json(dfa)) == dfa


@given(dfas())
@settings(max_examples=100, deadline=None)
def test_json_round_trip_arbitrary(dfa):
    assert from_json(to_json(dfa)) == dfa


def test_json_schema_fields():
    dfa = compile_pattern(PATTERN, MOVES)
    doc = json.loads(to_json(dfa))
    assert set(doc) == {"alphabet", "states", "start", "accepting", "delta"}
    assert doc["alphabet"] == ["n", "f", "l", "r"]
    assert doc["states"] == dfa.num_states
    assert len(doc["delta"]) == doc["states"]
    assert all(len(row) == 4 for row in doc["delta"])
    assert doc["accepting"] == sorted(doc["accepting"])


def test_dot_names_and_accepting_shape():
    dfa = compile_pattern(PATTERN, MOVES)
    dot = to_dot(dfa)
    assert dot.startswith("digraph")
    for q in range(dfa.num_states):
        assert f"q{q} [shape=" in dot
    for q in dfa.accepting:
        assert f"q{q} [shape=doublecircle]" in dot
    assert f"__start -> q{dfa.start};" in dot


def test_export_dispatch():
    dfa = compile_pattern(PATTERN, MOVES)
    assert export(dfa, "dot") == to_dot(dfa)
    assert export(dfa, "json") == to_json(dfa)
    with pytest.raises(ValidationError):
        export(dfa, "yaml")


def test_from_json_rejects_garbage():
    with pytest.raises(ValidationError):
        from_json("{not json")
    with pytest.raises(ValidationError):
        from_json(json.dumps({"alphabet": ["a"]}))


def test_from_json_rejects_inconsistent_state_count():
    dfa = compile_pattern(PATTERN, MOVES)
    doc = json.loads(to_json(dfa))
    doc["states"] = doc["states"] + 1
    with pytest.raises(ValidationError):
        from_json(json.dumps(doc))


def test_from_json_rejects_out_of_range_target():
    doc = {"alphabet": ["a"], "states": 1, "start": 0, "accepting": [], "delta": [[5]]}
    with pytest.raises(ValidationError):
        from_json(json.dumps(doc))
