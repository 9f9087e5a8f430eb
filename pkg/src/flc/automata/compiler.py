"""Pattern-to-automaton pipeline.

Thompson construction, then subset construction with a configurable
state budget, then minimization. The budget guards against pathological
patterns; override the default with the FLC_STATE_BUDGET environment
variable or the state_budget argument.
"""

from __future__ import annotations

import os

from ..errors import CapacityError, ConfigError
from .alphabet import Alphabet
from .dfa import Dfa, canonicalize, minimize
from .regex import (Alt, Concat, Dot, Empty, Epsilon, Node, Opt, Plus, Repeat,
                    Star, Sym, parse_regex)

DEFAULT_STATE_BUDGET = 1_000_000
_BUDGET_ENV = "FLC_STATE_BUDGET"


def state_budget() -> int:
    """Subset-construction state budget currently in effect."""
    raw = os.environ.get(_BUDGET_ENV)
    if raw is None:
        return DEFAULT_STATE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{_BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{_BUDGET_ENV} must be positive, got {value}")
    return value


_env_budget = state_budget


class _Nfa:
    """Mutable construction scratchpad; symbol label None means any symbol."""

    def __init__(self):
        self.eps: list[list[int]] = []
        self.edges: list[list[tuple[int | None, int]]] = []

    def add_state(self) -> int:
        self.eps.append([])
        self.edges.append([])
        return len(self.eps) - 1

    def link(self, src: int, dst: int, label: int | None = None, epsilon: bool = False):
        if epsilon:
            self.eps[src].append(dst)
        else:
            self.edges[src].append((label, dst))


def _fragment(nfa: _Nfa, node: Node, alphabet: Alphabet) -> tuple[int, int]:
    start = nfa.add_state()
    accept = nfa.add_state()
    if isinstance(node, Empty):
        pass
    elif isinstance(node, Epsilon):
        nfa.link(start, accept, epsilon=True)
    elif isinstance(node, Sym):
        nfa.link(start, accept, alphabet.index(node.name))
    elif isinstance(node, Dot):
        nfa.link(start, accept, None)
    elif isinstance(node, Concat):
        cursor = start
        for part in node.parts:
            s, a = _fragment(nfa, part, alphabet)
            nfa.link(cursor, s, epsilon=True)
            cursor = a
        nfa.link(cursor, accept, epsilon=True)
    elif isinstance(node, Alt):
        for option in node.options:
            s, a = _fragment(nfa, option, alphabet)
            nfa.link(start, s, epsilon=True)
            nfa.link(a, accept, epsilon=True)
    elif isinstance(node, Star):
        s, a = _fragment(nfa, node.child, alphabet)
        nfa.link(start, s, epsilon=True)
        nfa.link(start, accept, epsilon=True)
        nfa.link(a, s, epsilon=True)
        nfa.link(a, accept, epsilon=True)
    elif isinstance(node, Plus):
        s, a = _fragment(nfa, node.child, alphabet)
        nfa.link(start, s, epsilon=True)
        nfa.link(a, s, epsilon=True)
        nfa.link(a, accept, epsilon=True)
    elif isinstance(node, Opt):
        s, a = _fragment(nfa, node.child, alphabet)
        nfa.link(start, s, epsilon=True)
        nfa.link(start, accept, epsilon=True)
        nfa.link(a, accept, epsilon=True)
    elif isinstance(node, Repeat):
        cursor = start
        for _ in range(node.count):
            s, a = _fragment(nfa, node.child, alphabet)
            nfa.link(cursor, s, epsilon=True)
            cursor = a
        nfa.link(cursor, accept, epsilon=True)
    else:
        raise TypeError(f"unexpected node {node!r}")
    return start, accept


def _closure(nfa: _Nfa, states) -> frozenset[int]:
    stack = list(states)
    seen = set(stack)
    while stack:
        q = stack.pop()
        for target in nfa.eps[q]:
            if target not in seen:
                seen.add(target)
                stack.append(target)
    return frozenset(seen)


def compile_pattern(pattern: str | Node, alphabet: Alphabet, *,
                    reset_heuristic: bool = False,
                    state_budget: int | None = None) -> Dfa:
    """Compile pattern text or a syntax tree into the minimal complete automaton.

    With reset_heuristic, suffix-overlap tracking is dropped: a leading
    `.*` is stripped, the remaining core is compiled anchored, and every
    transition that would abandon the match restarts at the start state.
    This reproduces the convention of drawing only productive transitions
    and letting everything else return to the initial state. The
    recognized language shrinks: runs interrupted mid-pattern no longer
    count, so such a monitor can miss overlapping violations.
    """
    ast = parse_regex(pattern, alphabet) if isinstance(pattern, str) else pattern
    budget = state_budget if state_budget is not None else _env_budget()
    if reset_heuristic:
        exact = _compile_exact(_strip_wildcard_prefix(ast), alphabet, budget)
        return minimize(_restart_dead(exact))
    return _compile_exact(ast, alphabet, budget)


def _compile_exact(ast: Node, alphabet: Alphabet, budget: int) -> Dfa:
    nfa = _Nfa()
    start, accept = _fragment(nfa, ast, alphabet)
    raw = _determinize_with_alphabet(nfa, start, accept, alphabet, budget)
    return minimize(raw)


def _strip_wildcard_prefix(ast: Node) -> Node:
    if isinstance(ast, Concat) and ast.parts and ast.parts[0] == Star(Dot()):
        rest = ast.parts[1:]
        if not rest:
            return Star(Dot())
        return rest[0] if len(rest) == 1 else Concat(rest)
    return ast


def _determinize_with_alphabet(nfa: _Nfa, start: int, accept: int,
                               alphabet: Alphabet, budget: int) -> Dfa:
    initial = _closure(nfa, (start,))
    index: dict[frozenset[int], int] = {initial: 0}
    rows: list[tuple[int, ...]] = []
    order: list[frozenset[int]] = [initial]
    width = len(alphabet)
    cursor = 0
    while cursor < len(order):
        subset = order[cursor]
        cursor += 1
        row = []
        for c in range(width):
            moved = set()
            for q in subset:
                for label, target in nfa.edges[q]:
                    if label is None or label == c:
                        moved.add(target)
            successor = _closure(nfa, moved)
            slot = index.get(successor)
            if slot is None:
                slot = len(index)
                if slot >= budget:
                    raise CapacityError(
                        f"determinization exceeded the state budget of {budget}")
                index[successor] = slot
                order.append(successor)
            row.append(slot)
        rows.append(tuple(row))
    accepting = frozenset(i for subset, i in index.items() if accept in subset)
    return Dfa(alphabet, tuple(rows), 0, accepting)


def _restart_dead(dfa: Dfa) -> Dfa:
    """Send every transition into a hopeless state back to the start.

    Applied to an anchored core, whose off-pattern symbols all lead to a
    dead sink: the redirect turns "fail forever" into "start over".
    Accepting states end up restarting too, since an anchored core is
    done once matched.
    """
    alive = _coreachable(dfa)
    if len(alive) == dfa.num_states:
        return dfa
    delta = tuple(
        tuple(t if t in alive else dfa.start for t in row)
        for row in dfa.delta
    )
    return canonicalize(Dfa(dfa.alphabet, delta, dfa.start, dfa.accepting))


def _coreachable(dfa: Dfa) -> set[int]:
    reverse: dict[int, set[int]] = {}
    for q, row in enumerate(dfa.delta):
        for target in row:
            reverse.setdefault(target, set()).add(q)
    seen = set(dfa.accepting)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for src in reverse.get(q, ()):
            if src not in seen:
                seen.add(src)
                stack.append(src)
    return seen
