"""Automaton serialization: Graphviz DOT for inspection, JSON for exchange.

The JSON form is lossless. Loading the export of a machine yields an
equal machine, state numbering included.
"""

from __future__ import annotations

import json

from ..errors import ValidationError
from .alphabet import Alphabet
from .dfa import Dfa


def to_dot(dfa: Dfa) -> str:
    lines = ["digraph dfa {", "  rankdir=LR;", '  __start [shape=point, label=""];',
             f"  __start -> q{dfa.start};"]
    for q in range(dfa.num_states):
        shape = "doublecircle" if q in dfa.accepting else "circle"
        lines.append(f"  q{q} [shape={shape}];")
    for q, row in enumerate(dfa.delta):
        grouped: dict[int, list[str]] = {}
        for symbol, target in zip(dfa.alphabet.symbols, row):
            grouped.setdefault(target, []).append(symbol)
        for target in sorted(grouped):
            label = ",".join(grouped[target])
            lines.append(f'  q{q} -> q{target} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(dfa: Dfa) -> str:
    doc = {
        "alphabet": list(dfa.alphabet.symbols),
        "states": dfa.num_states,
        "start": dfa.start,
        "accepting": sorted(dfa.accepting),
        "delta": [list(row) for row in dfa.delta],
    }
    return json.dumps(doc, indent=2) + "\n"


def export(dfa: Dfa, fmt: str) -> str:
    """Render to the named format, one of "dot" or "json"."""
    if fmt == "dot":
        return to_dot(dfa)
    if fmt == "json":
        return to_json(dfa)
    raise ValidationError(f"unknown export format {fmt!r}")


def from_json(text: str) -> Dfa:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from None
    try:
        alphabet = Alphabet(tuple(doc["alphabet"]))
        states = int(doc["states"])
        delta = tuple(tuple(int(t) for t in row) for row in doc["delta"])
        start = int(doc["start"])
        accepting = frozenset(int(q) for q in doc["accepting"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed automaton document: {exc}") from None
    if states != len(delta):
        raise ValidationError(
            f"document claims {states} states but lists {len(delta)} rows")
    return Dfa(alphabet, delta, start, accepting)
