"""Reference matcher by direct position-set simulation.

Deliberately independent of the compilation pipeline: transitions come
from nullable/first/last/follow sets computed on the syntax tree, with no
determinization and no minimization. Equivalence audits run this matcher
against compiled automata, so the two sides must not share machinery
beyond the parser.
"""

from __future__ import annotations

from .alphabet import Alphabet
from .regex import Alt, Concat, Dot, Empty, Epsilon, Node, Opt, Plus, Repeat, Star, Sym

_START = -1  # sentinel position for the pre-input state


def _expand(node: Node) -> Node:
    """Rewrite counted repeats into explicit concatenation."""
    if isinstance(node, (Sym, Dot, Epsilon, Empty)):
        return node
    if isinstance(node, Concat):
        return Concat(tuple(_expand(p) for p in node.parts))
    if isinstance(node, Alt):
        return Alt(tuple(_expand(o) for o in node.options))
    if isinstance(node, Star):
        return Star(_expand(node.child))
    if isinstance(node, Plus):
        return Plus(_expand(node.child))
    if isinstance(node, Opt):
        return Opt(_expand(node.child))
    if isinstance(node, Repeat):
        child = _expand(node.child)
        return Concat(tuple(child for _ in range(node.count)))
    raise TypeError(f"unexpected node {node!r}")


class RegexMatcher:
    """Incremental matcher over sets of pattern positions.

    A state is a frozenset of leaf positions (plus a start sentinel);
    stepping moves along follow sets filtered by the consumed symbol.
    States and transitions are memoized, so long enumeration runs pay
    roughly one dict lookup per consumed symbol.
    """

    def __init__(self, ast: Node, alphabet: Alphabet):
        self.alphabet = alphabet
        self._pos_symbol: list[str | None] = []
        self._follow: list[set[int]] = []
        self._nullable, self._first, self._last = self._analyze(_expand(ast))
        self._memo: dict[tuple[frozenset[int], int], frozenset[int]] = {}

    def _new_position(self, symbol: str | None) -> int:
        self._pos_symbol.append(symbol)
        self._follow.append(set())
        return len(self._pos_symbol) - 1

    def _analyze(self, node: Node) -> tuple[bool, frozenset[int], frozenset[int]]:
        if isinstance(node, Empty):
            return False, frozenset(), frozenset()
        if isinstance(node, Epsilon):
            return True, frozenset(), frozenset()
        if isinstance(node, Sym):
            p = self._new_position(node.name)
            here = frozenset((p,))
            return False, here, here
        if isinstance(node, Dot):
            p = self._new_position(None)
            here = frozenset((p,))
            return False, here, here
        if isinstance(node, Concat):
            nullable, first, last = self._analyze(node.parts[0])
            for part in node.parts[1:]:
                p_null, p_first, p_last = self._analyze(part)
                for pos in last:
                    self._follow[pos] |= p_first
                first = first | p_first if nullable else first
                last = p_last | last if p_null else p_last
                nullable = nullable and p_null
            return nullable, first, last
        if isinstance(node, Alt):
            nullable = False
            first: frozenset[int] = frozenset()
            last: frozenset[int] = frozenset()
            for option in node.options:
                o_null, o_first, o_last = self._analyze(option)
                nullable = nullable or o_null
                first |= o_first
                last |= o_last
            return nullable, first, last
        if isinstance(node, (Star, Plus)):
            c_null, first, last = self._analyze(node.child)
            for pos in last:
                self._follow[pos] |= first
            return isinstance(node, Star) or c_null, first, last
        if isinstance(node, Opt):
            _, first, last = self._analyze(node.child)
            return True, first, last
        raise TypeError(f"unexpected node {node!r}")

    def start(self) -> frozenset[int]:
        return frozenset((_START,))

    def step(self, state: frozenset[int], symbol: str) -> frozenset[int]:
        sym_index = self.alphabet.index(symbol)  # membership check
        key = (state, sym_index)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        out: set[int] = set()
        for p in state:
            targets = self._first if p == _START else self._follow[p]
            for q in targets:
                expected = self._pos_symbol[q]
                if expected is None or expected == symbol:
                    out.add(q)
        result = frozenset(out)
        self._memo[key] = result
        return result

    def is_accepting(self, state: frozenset[int]) -> bool:
        if _START in state and self._nullable:
            return True
        return not self._last.isdisjoint(state)

    def matches(self, word) -> bool:
        state = self.start()
        for symbol in word:
            state = self.step(state, symbol)
        return self.is_accepting(state)
