"""Recognizers built directly as tables, plus generated patterns.

Some constraint families are easier to state as counting machines than
as patterns. Builders construct their transition tables explicitly; the
test suite checks each one against the pattern pipeline or a brute-force
enumeration, so table bugs cannot hide behind shared code.

Builder outputs are not minimized. proximity_levels in particular keeps
one state per distance bin on purpose: the extra states carry how close
the last observation was, which matters when recognizer state is fed
back into learning.
"""

from __future__ import annotations

from itertools import product

from ..errors import ValidationError
from .alphabet import Alphabet
from .compiler import compile_pattern
from .dfa import Dfa
from .regex import Alt, Concat, Dot, Node, Star, Sym

# king moves on a grid, y axis pointing down
MOVE_VECTORS: dict[str, tuple[int, int]] = {
    "u": (0, -1), "d": (0, 1), "l": (-1, 0), "r": (1, 0),
    "ul": (-1, -1), "ur": (1, -1), "dl": (-1, 1), "dr": (1, 1),
}


def _table_dfa(alphabet: Alphabet, start_key, step, accepts) -> Dfa:
    """Materialize a keyed transition function, numbering states in visit order.

    Visit order is breadth-first in alphabet order, which matches the
    canonical numbering the rest of the package uses.
    """
    index = {start_key: 0}
    order = [start_key]
    rows: list[tuple[int, ...]] = []
    cursor = 0
    while cursor < len(order):
        key = order[cursor]
        cursor += 1
        row = []
        for symbol in alphabet:
            target = step(key, symbol)
            slot = index.get(target)
            if slot is None:
                slot = len(index)
                index[target] = slot
                order.append(target)
            row.append(slot)
        rows.append(tuple(row))
    accepting = frozenset(i for key, i in index.items() if accepts(key))
    return Dfa(alphabet, tuple(rows), 0, accepting)


def successive_identical(alphabet: Alphabet, k: int, neutral=()) -> Dfa:
    """Accept once the same non-neutral token arrived k times in a row.

    Neutral tokens reset the run; a different token starts a new run of
    length one. The run counter saturates at k, so acceptance persists
    while the token keeps repeating.
    """
    if not isinstance(k, int) or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k!r}")
    neutral_set = frozenset(neutral) if not isinstance(neutral, str) else frozenset((neutral,))
    for token in neutral_set:
        if token not in alphabet:
            raise ValidationError(f"neutral token {token!r} not in the alphabet")

    def step(key, symbol):
        token, run = key
        if symbol in neutral_set:
            return (None, 0)
        if symbol == token:
            return (token, min(run + 1, k))
        return (symbol, 1)

    return _table_dfa(alphabet, (None, 0), step, lambda key: key[1] >= k)


def sum_threshold(alphabet: Alphabet, increment: float, window: int,
                  threshold: float, prefix: str = "m") -> Dfa:
    """Accept when the last `window` magnitude bins sum to the threshold or past it.

    Symbols must be named prefix+level (m0, m1, ...); a level stands for
    level*increment actuation. Words shorter than the window never accept.
    """
    if not isinstance(window, int) or window < 1:
        raise ValidationError(f"window must be a positive integer, got {window!r}")
    if not increment > 0:
        raise ValidationError(f"increment must be positive, got {increment!r}")
    levels: dict[str, int] = {}
    for symbol in alphabet:
        if not symbol.startswith(prefix) or not symbol[len(prefix):].isdigit():
            raise ValidationError(
                f"symbol {symbol!r} does not look like {prefix}<level>")
        levels[symbol] = int(symbol[len(prefix):])

    # key: (levels of the last window-1 tokens, last full window accepted?)
    def step(key, symbol):
        suffix, _ = key
        history = suffix + (levels[symbol],)
        if len(history) == window:
            hit = sum(history) * increment >= threshold
            return (history[1:], hit)
        return (history, False)

    return _table_dfa(alphabet, ((), False), step, lambda key: key[1])


def proximity_levels(alphabet: Alphabet, bins: int = 10,
                     contact: str = "contact", prefix: str = "d") -> Dfa:
    """Accept on the contact token; remember the last distance bin otherwise.

    The language is simply "ends with contact", but the table keeps
    bins+2 states instead of the minimal two.
    """
    if not isinstance(bins, int) or bins < 1:
        raise ValidationError(f"bins must be a positive integer, got {bins!r}")
    expected = {contact} | {f"{prefix}{i}" for i in range(bins)}
    declared = set(alphabet.symbols)
    if declared != expected:
        raise ValidationError(
            f"alphabet must be exactly {sorted(expected)}, got {sorted(declared)}")

    def step(key, symbol):
        if symbol == contact:
            return "violated"
        return ("bin", int(symbol[len(prefix):]))

    return _table_dfa(alphabet, "start", step, lambda key: key == "violated")


def zero_displacement_pattern(alphabet: Alphabet, min_len: int = 2,
                              max_len: int = 4) -> Node:
    """Pattern for suffixes that are closed walks of bounded length.

    Enumerates every move sequence of min_len..max_len steps with zero
    net displacement and alternates them behind a wildcard prefix. All
    eight move symbols must be declared.
    """
    if not (isinstance(min_len, int) and isinstance(max_len, int)
            and 1 <= min_len <= max_len):
        raise ValidationError(f"bad walk length range {min_len!r}..{max_len!r}")
    missing = [m for m in MOVE_VECTORS if m not in alphabet]
    if missing:
        raise ValidationError(f"alphabet lacks move symbols {missing}")
    loops: list[Node] = []
    for length in range(min_len, max_len + 1):
        for seq in product(MOVE_VECTORS, repeat=length):
            dx = sum(MOVE_VECTORS[m][0] for m in seq)
            dy = sum(MOVE_VECTORS[m][1] for m in seq)
            if dx == 0 and dy == 0:
                loops.append(Concat(tuple(Sym(m) for m in seq)))
    if not loops:
        raise ValidationError("no closed walks in the requested length range")
    return Concat((Star(Dot()), Alt(tuple(loops))))


def zero_displacement(alphabet: Alphabet, min_len: int = 2, max_len: int = 4,
                      state_budget: int | None = None) -> Dfa:
    pattern = zero_displacement_pattern(alphabet, min_len, max_len)
    return compile_pattern(pattern, alphabet, state_budget=state_budget)
