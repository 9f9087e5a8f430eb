"""Hypothesis strategies shared across test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from flc.automata import Alphabet, Dfa
from flc.automata.regex import (Alt, Concat, Dot, Epsilon, Opt, Plus, Repeat,
                                Star, Sym)

SMALL_SYMBOLS = ("a", "b", "c")


def regex_asts(symbols=SMALL_SYMBOLS, max_leaves=8):
    leaf = st.one_of(
        st.sampled_from(symbols).map(Sym),
        st.just(Dot()),
        st.just(Epsilon()),
    )

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda pair: Concat(pair)),
            st.tuples(children, children).map(lambda pair: Alt(pair)),
            children.map(Star),
            children.map(Plus),
            children.map(Opt),
            st.tuples(children, st.integers(1, 3)).map(lambda t: Repeat(*t)),
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


@st.composite
def dfas(draw, symbols=SMALL_SYMBOLS, max_states=6):
    n = draw(st.integers(1, max_states))
    alphabet = Alphabet(tuple(symbols))
    delta = tuple(
        tuple(draw(st.integers(0, n - 1)) for _ in symbols)
        for _ in range(n)
    )
    accepting = frozenset(
        q for q in range(n) if draw(st.booleans())
    )
    start = draw(st.integers(0, n - 1))
    return Dfa(alphabet, delta, start, accepting)
