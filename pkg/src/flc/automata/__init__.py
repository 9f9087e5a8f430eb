"""Token alphabets, patterns, and deterministic automata."""

from .alphabet import Alphabet
from .builders import (MOVE_VECTORS, proximity_levels, successive_identical,
                       sum_threshold, zero_displacement,
                       zero_displacement_pattern)
from .compiler import DEFAULT_STATE_BUDGET, compile_pattern, state_budget
from .dfa import Dfa, canonicalize, equivalent, minimize
from .export import export, from_json, to_dot, to_json
from .match import RegexMatcher
from .regex import (Alt, Concat, Dot, Empty, Epsilon, Node, Opt, Plus, Repeat,
                    Star, Sym, parse_regex)

__all__ = [
    "Alphabet", "Dfa", "RegexMatcher",
    "parse_regex", "compile_pattern", "state_budget", "DEFAULT_STATE_BUDGET",
    "minimize", "equivalent", "canonicalize",
    "export", "to_dot", "to_json", "from_json",
    "successive_identical", "sum_threshold", "proximity_levels",
    "zero_displacement", "zero_displacement_pattern", "MOVE_VECTORS",
    "Node", "Empty", "Epsilon", "Sym", "Dot", "Concat", "Alt", "Star", "Plus",
    "Opt", "Repeat",
]
