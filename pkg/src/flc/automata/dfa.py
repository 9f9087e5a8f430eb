"""Deterministic finite automata over declared alphabets.

Automata are immutable and always complete: every state has exactly one
outgoing transition per symbol, with rejection modeled by an ordinary
(possibly sink) state. State numbering is canonical, breadth-first from
the start state in alphabet order, so equal machines compare equal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..errors import AlphabetMismatch, ValidationError
from .alphabet import Alphabet


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    delta: tuple[tuple[int, ...], ...]
    start: int
    accepting: frozenset[int]

    def __post_init__(self):
        n = len(self.delta)
        if n == 0:
            raise ValidationError("automaton needs at least one state")
        width = len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != width:
                raise ValidationError(f"state {q} has {len(row)} transitions, expected {width}")
            for target in row:
                if not 0 <= target < n:
                    raise ValidationError(f"state {q} points at missing state {target}")
        if not 0 <= self.start < n:
            raise ValidationError(f"start state {self.start} out of range")
        for q in self.accepting:
            if not 0 <= q < n:
                raise ValidationError(f"accepting state {q} out of range")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    def step(self, state: int, symbol: str) -> int:
        """Follow one transition. Unknown symbols raise, state advances nowhere."""
        return self.delta[state][self.alphabet.index(symbol)]

    def accepts(self, word) -> bool:
        state = self.start
        row = self.delta
        index = self.alphabet.index
        for symbol in word:
            state = row[state][index(symbol)]
        return state in self.accepting

    def is_accepting(self, state: int) -> bool:
        return state in self.accepting


def canonicalize(dfa: Dfa) -> Dfa:
    """Renumber states breadth-first from the start, dropping unreachable ones."""
    order: dict[int, int] = {dfa.start: 0}
    queue = deque((dfa.start,))
    while queue:
        q = queue.popleft()
        for target in dfa.delta[q]:
            if target not in order:
                order[target] = len(order)
                queue.append(target)
    delta = [None] * len(order)
    for old, new in order.items():
        delta[new] = tuple(order[t] for t in dfa.delta[old])
    accepting = frozenset(order[q] for q in dfa.accepting if q in order)
    return Dfa(dfa.alphabet, tuple(delta), 0, accepting)


def minimize(dfa: Dfa) -> Dfa:
    """Smallest complete automaton for the same language, canonically numbered.

    Hopcroft partition refinement on the reachable part. Idempotent: the
    result minimizes to itself.
    """
    reachable = _reachable(dfa)
    states = sorted(reachable)
    width = len(dfa.alphabet)

    # reverse edges restricted to the reachable part
    reverse: dict[tuple[int, int], list[int]] = {}
    for q in states:
        for c in range(width):
            reverse.setdefault((dfa.delta[q][c], c), []).append(q)

    accepting = {q for q in states if q in dfa.accepting}
    rejecting = set(states) - accepting
    partition: list[set[int]] = [block for block in (accepting, rejecting) if block]
    block_of = {q: i for i, block in enumerate(partition) for q in block}
    worklist = deque(range(len(partition)))
    queued = set(worklist)

    while worklist:
        current = worklist.popleft()
        queued.discard(current)
        splitter = partition[current].copy()
        for c in range(width):
            sources: set[int] = set()
            for q in splitter:
                sources.update(reverse.get((q, c), ()))
            touched: dict[int, set[int]] = {}
            for q in sources:
                touched.setdefault(block_of[q], set()).add(q)
            for b, inside in touched.items():
                block = partition[b]
                if len(inside) == len(block):
                    continue
                # split block b into `inside` and the remainder, in place
                block -= inside
                new_index = len(partition)
                partition.append(inside)
                for q in inside:
                    block_of[q] = new_index
                if b in queued:
                    # both halves stay pending
                    worklist.append(new_index)
                    queued.add(new_index)
                elif len(inside) <= len(block):
                    worklist.append(new_index)
                    queued.add(new_index)
                else:
                    worklist.append(b)
                    queued.add(b)

    delta = tuple(
        tuple(block_of[dfa.delta[next(iter(partition[b]))][c]] for c in range(width))
        for b in range(len(partition))
    )
    accepting_blocks = frozenset(b for b, block in enumerate(partition)
                                 if next(iter(block)) in dfa.accepting)
    quotient = Dfa(dfa.alphabet, delta, block_of[dfa.start], accepting_blocks)
    return canonicalize(quotient)


def equivalent(a: Dfa, b: Dfa) -> tuple[bool, tuple[str, ...] | None]:
    """Decide language equality; on failure return a shortest distinguishing word."""
    if a.alphabet.symbols != b.alphabet.symbols:
        raise AlphabetMismatch(
            f"alphabets differ: {a.alphabet.symbols} vs {b.alphabet.symbols}")
    symbols = a.alphabet.symbols
    origin = (a.start, b.start)
    parents: dict[tuple[int, int], tuple[tuple[int, int] | None, str | None]] = {
        origin: (None, None)}
    queue = deque((origin,))
    while queue:
        pair = queue.popleft()
        qa, qb = pair
        if (qa in a.accepting) != (qb in b.accepting):
            word: list[str] = []
            cursor: tuple[int, int] | None = pair
            while cursor is not None:
                prev, symbol = parents[cursor]
                if symbol is not None:
                    word.append(symbol)
                cursor = prev
            return False, tuple(reversed(word))
        for c, symbol in enumerate(symbols):
            successor = (a.delta[qa][c], b.delta[qb][c])
            if successor not in parents:
                parents[successor] = (pair, symbol)
                queue.append(successor)
    return True, None


def _reachable(dfa: Dfa) -> set[int]:
    seen = {dfa.start}
    queue = deque((dfa.start,))
    while queue:
        q = queue.popleft()
        for target in dfa.delta[q]:
            if target not in seen:
                seen.add(target)
                queue.append(target)
    return seen
