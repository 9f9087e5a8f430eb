"""Spec file parsing, validation, and the shipped constraint set."""

import pytest

from flc.constraint import (Identity, MagnitudeBins, ProximityBins, Sign1D,
                            ViolationMode, builtin_names, load, loads)
from flc.errors import ParseError, ValidationError

DITHERING = """
name = dithering-1d
alphabet = [n f l r]
pattern = ".* ((l r){2}|(r l){2})"
translator = sign1d
mode = reset
limit = 25
"""


def test_full_spec_parses():
    spec = loads(DITHERING)
    assert spec.name == "dithering-1d"
    assert spec.alphabet.symbols == ("n", "f", "l", "r")
    assert spec.dfa.num_states == 9
    assert spec.translator == Sign1D()
    assert spec.violation_mode is ViolationMode.RESET
    assert spec.limit == 25.0


def test_default_costs_are_sparse():
    spec = loads(DITHERING)
    for q in range(spec.dfa.num_states):
        expected = 1.0 if q in spec.dfa.accepting else 0.0
        assert spec.cost(q) == expected


def test_cost_overrides_apply():
    spec = loads(DITHERING + "cost.0 = 0.25\n")
    assert spec.cost(0) == 0.25


def test_cost_override_out_of_range_rejected():
    with pytest.raises(ValidationError) as err:
        loads(DITHERING + "cost.99 = 1\n")
    assert "99" in str(err.value)


def test_negative_cost_rejected():
    with pytest.raises(ValidationError):
        loads(DITHERING + "cost.0 = -1\n")


def test_builder_specs():
    text = """
    alphabet = [z l r]
    builder = successive_identical(k=3, neutral=[z])
    """
    spec = loads(text, default_name="counter")
    assert spec.name == "counter"
    assert spec.dfa.accepts(["l", "l", "l"])
    assert not spec.dfa.accepts(["l", "l", "z", "l"])
    assert spec.translator == Identity()
    assert spec.limit is None


def test_mode_absorbing():
    spec = loads(DITHERING.replace("mode = reset", "mode = absorbing"))
    assert spec.violation_mode is ViolationMode.ABSORBING


def test_translator_with_params():
    text = """
    alphabet = [m0 m1 m2]
    builder = sum_threshold(increment=0.5, window=2, threshold=1.0)
    translator = magnitude_bins(increment=0.5, cap=2)
    """
    spec = loads(text)
    assert spec.translator == MagnitudeBins(increment=0.5, cap=2)


class TestRejectedInputs:
    def test_missing_alphabet(self):
        with pytest.raises(ValidationError):
            loads('pattern = ".* a"')

    def test_pattern_and_builder_together(self):
        with pytest.raises(ValidationError):
            loads('alphabet = [a]\npattern = ".* a"\nbuilder = successive_identical(k=2)')

    def test_neither_pattern_nor_builder(self):
        with pytest.raises(ValidationError):
            loads("alphabet = [a]")

    def test_unknown_builder(self):
        with pytest.raises(ValidationError) as err:
            loads("alphabet = [a]\nbuilder = frobnicate(k=1)")
        assert "frobnicate" in str(err.value)

    def test_unknown_translator(self):
        with pytest.raises(ValidationError):
            loads(DITHERING.replace("sign1d", "morse"))

    def test_bad_mode(self):
        with pytest.raises(ValidationError):
            loads(DITHERING.replace("mode = reset", "mode = sticky"))

    def test_negative_limit(self):
        with pytest.raises(ValidationError):
            loads(DITHERING.replace("limit = 25", "limit = -1"))

    def test_line_without_equals(self):
        with pytest.raises(ParseError) as err:
            loads("alphabet [a]")
        assert err.value.line == 1

    def test_duplicate_key(self):
        with pytest.raises(ParseError):
            loads("alphabet = [a]\nalphabet = [b]")

    def test_unknown_key(self):
        with pytest.raises(ParseError):
            loads('alphabet = [a]\npattern = ".* a"\ncolour = red')

    def test_unterminated_quote(self):
        with pytest.raises(ParseError):
            loads('alphabet = [a]\npattern = ".* a')

    def test_bad_pattern_surfaces(self):
        with pytest.raises(Exception):
            loads('alphabet = [a]\npattern = "(a"')

    def test_comments_and_blanks_ignored(self):
        spec = loads("# header\n\n" + DITHERING + "\n# trailer\n")
        assert spec.dfa.num_states == 9


class TestBuiltins:
    def test_expected_set_ships(self):
        names = builtin_names()
        for expected in ("dithering-1d", "dithering-2d", "overactuation-1d",
                         "overactuation-2d", "proximity",
                         "successive-identical-3", "sum-threshold",
                         "danger-zone"):
            assert expected in names

    def test_all_builtins_load(self):
        for name in builtin_names():
            spec = load(name)
            assert spec.name == name
            assert spec.dfa.num_states >= 2
            assert spec.dfa.accepting, name

    def test_load_accepts_flc_suffix(self):
        assert load("dithering-1d.flc").name == "dithering-1d"

    def test_load_missing_name_lists_builtins(self):
        with pytest.raises(ParseError) as err:
            load("no-such-constraint")
        assert "dithering-1d" in str(err.value)

    def test_proximity_is_deliberately_wide(self):
        spec = load("proximity")
        assert spec.dfa.num_states == 12
        assert spec.translator == ProximityBins(bins=10)
