"""Table builders checked against the pattern pipeline and direct enumeration."""

import random

import pytest

from flc.automata import (Alphabet, MOVE_VECTORS, compile_pattern, equivalent,
                          proximity_levels, successive_identical,
                          sum_threshold, zero_displacement,
                          zero_displacement_pattern)
from flc.errors import ValidationError

from oracle_helpers import words_upto

ZLR = Alphabet.of("z", "l", "r")


class TestSuccessiveIdentical:
    def test_equivalent_to_triple_run_pattern(self):
        built = successive_identical(ZLR, k=3, neutral=("z",))
        compiled = compile_pattern(".* (l{3}|r{3})", ZLR)
        ok, witness = equivalent(built, compiled)
        assert ok, f"distinguished by {witness}"

    def test_neutral_token_resets_the_run(self):
        dfa = successive_identical(ZLR, k=3, neutral=("z",))
        assert not dfa.accepts(["l", "l", "z", "l"])
        assert dfa.accepts(["l", "l", "z", "l", "l", "l"])

    def test_switching_tokens_restarts_the_count(self):
        dfa = successive_identical(ZLR, k=3, neutral=("z",))
        assert not dfa.accepts(["l", "l", "r", "r", "l"])
        assert dfa.accepts(["r", "l", "l", "l"])

    def test_acceptance_saturates(self):
        dfa = successive_identical(ZLR, k=3, neutral=("z",))
        assert dfa.accepts(["l"] * 7)

    def test_k_one_flags_any_counted_token(self):
        built = successive_identical(ZLR, k=1, neutral=("z",))
        compiled = compile_pattern(".* (l|r)", ZLR)
        ok, _ = equivalent(built, compiled)
        assert ok

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValidationError):
            successive_identical(ZLR, k=0)
        with pytest.raises(ValidationError):
            successive_identical(ZLR, k=2, neutral=("q",))


class TestSumThreshold:
    ALPHA = Alphabet.of("m0", "m1", "m2", "m3")

    def test_exhaustive_against_window_sums(self):
        dfa = sum_threshold(self.ALPHA, increment=0.2, window=3, threshold=1.0)
        for word in words_upto(self.ALPHA.symbols, 6):
            levels = [int(s[1:]) for s in word]
            expected = len(levels) >= 3 and sum(levels[-3:]) * 0.2 >= 1.0
            assert dfa.accepts(word) == expected, word

    def test_boundary_sum_counts_as_reaching(self):
        dfa = sum_threshold(self.ALPHA, increment=0.2, window=3, threshold=1.0)
        assert dfa.accepts(["m3", "m2", "m0"])  # exactly 1.0
        assert not dfa.accepts(["m3", "m1", "m0"])

    def test_short_streams_never_accept(self):
        dfa = sum_threshold(self.ALPHA, increment=0.2, window=3, threshold=0.0)
        assert not dfa.accepts([])
        assert not dfa.accepts(["m0"])
        assert not dfa.accepts(["m0", "m0"])
        assert dfa.accepts(["m0", "m0", "m0"])  # zero threshold met by any window

    def test_window_one(self):
        dfa = sum_threshold(self.ALPHA, increment=0.5, window=1, threshold=1.0)
        assert dfa.accepts(["m2"])
        assert not dfa.accepts(["m1"])

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValidationError):
            sum_threshold(self.ALPHA, increment=0.0, window=3, threshold=1.0)
        with pytest.raises(ValidationError):
            sum_threshold(self.ALPHA, increment=0.2, window=0, threshold=1.0)
        with pytest.raises(ValidationError):
            sum_threshold(Alphabet.of("m0", "x1"), increment=0.2, window=2, threshold=1.0)


class TestProximityLevels:
    ALPHA = Alphabet.of("contact", "d0", "d1", "d2")

    def test_language_is_ends_with_contact(self):
        built = proximity_levels(self.ALPHA, bins=3)
        compiled = compile_pattern(".* contact", self.ALPHA)
        ok, witness = equivalent(built, compiled)
        assert ok, f"distinguished by {witness}"

    def test_keeps_one_state_per_bin(self):
        built = proximity_levels(self.ALPHA, bins=3)
        assert built.num_states == 5  # start + 3 bins + violated
        # the minimal machine would only have two states
        from flc.automata import minimize
        assert minimize(built).num_states == 2

    def test_bin_states_are_distinct(self):
        built = proximity_levels(self.ALPHA, bins=3)
        q_after_d0 = built.step(built.start, "d0")
        q_after_d2 = built.step(built.start, "d2")
        assert q_after_d0 != q_after_d2

    def test_alphabet_must_match_bins(self):
        with pytest.raises(ValidationError):
            proximity_levels(self.ALPHA, bins=4)
        with pytest.raises(ValidationError):
            proximity_levels(Alphabet.of("contact", "d0", "d1", "extra"), bins=2)


class TestZeroDisplacement:
    MOVES8 = Alphabet(tuple(MOVE_VECTORS))

    @staticmethod
    def _has_closed_suffix(word, min_len=2, max_len=4):
        for length in range(min_len, min(max_len, len(word)) + 1):
            tail = word[-length:]
            dx = sum(MOVE_VECTORS[m][0] for m in tail)
            dy = sum(MOVE_VECTORS[m][1] for m in tail)
            if dx == 0 and dy == 0:
                return True
        return False

    def test_exhaustive_short_words(self):
        dfa = zero_displacement(self.MOVES8)
        for word in words_upto(self.MOVES8.symbols, 4):
            assert dfa.accepts(word) == self._has_closed_suffix(list(word)), word

    def test_sampled_longer_words(self):
        dfa = zero_displacement(self.MOVES8)
        rng = random.Random(7)
        symbols = self.MOVES8.symbols
        for _ in range(3000):
            word = [rng.choice(symbols) for _ in range(rng.randint(5, 9))]
            assert dfa.accepts(word) == self._has_closed_suffix(word), word

    def test_simple_cases(self):
        dfa = zero_displacement(self.MOVES8)
        assert dfa.accepts(["u", "d"])
        assert dfa.accepts(["ul", "dr"])
        assert dfa.accepts(["r", "l", "u", "d"])
        assert not dfa.accepts(["u", "u"])
        assert not dfa.accepts(["u", "r", "d"])

    def test_pattern_requires_all_move_symbols(self):
        with pytest.raises(ValidationError):
            zero_displacement_pattern(Alphabet.of("u", "d", "l", "r"))

    def test_noop_symbol_may_be_declared_but_never_loops(self):
        with_noop = Alphabet(("n",) + tuple(MOVE_VECTORS))
        dfa = zero_displacement(with_noop)
        # noop is not a move, so it breaks any closed walk
        assert not dfa.accepts(["u", "n", "d"])
        assert dfa.accepts(["n", "u", "d"])
