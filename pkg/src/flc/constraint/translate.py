"""Transition-to-token translation.

A translator binding turns one environment transition into exactly one
alphabet symbol. Bindings are stateless: the emitted token depends only
on the transition record, never on history.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..automata.builders import MOVE_VECTORS
from ..errors import ConfigError, DomainError

_SYMBOL_OF_MOVE = {vec: sym for sym, vec in MOVE_VECTORS.items()}


@dataclass(frozen=True)
class Transition:
    """One environment step as seen by translators.

    state/action/next_state are the raw indices; the remaining fields are
    structured views the environment fills in where they apply.
    """

    state: int
    action: int
    next_state: int
    action_value: float = 0.0
    move: tuple[int, int] | None = None
    hazard_closeness: float | None = None
    contact: bool = False
    token: str | None = None


class TranslatorBinding:
    __slots__ = ()


@dataclass(frozen=True)
class Sign1D(TranslatorBinding):
    """Signed scalar actions: negative, positive, or exactly zero."""

    negative: str = "l"
    positive: str = "r"
    zero: str = "n"


@dataclass(frozen=True)
class Direction2D(TranslatorBinding):
    """Intended king-move displacement; anything that moves nothing is a noop."""

    noop: str = "n"


@dataclass(frozen=True)
class MagnitudeBins(TranslatorBinding):
    """Actuation magnitude floored into increment-wide bins, capped."""

    increment: float
    cap: int
    prefix: str = "m"

    def __post_init__(self):
        if not (math.isfinite(self.increment) and self.increment > 0):
            raise DomainError(f"increment must be positive, got {self.increment!r}")
        if not isinstance(self.cap, int) or self.cap < 0:
            raise DomainError(f"cap must be a non-negative integer, got {self.cap!r}")


@dataclass(frozen=True)
class ProximityBins(TranslatorBinding):
    """Normalized hazard closeness in equal-width bins, contact distinguished."""

    bins: int = 10
    contact: str = "contact"
    prefix: str = "d"

    def __post_init__(self):
        if not isinstance(self.bins, int) or self.bins < 1:
            raise DomainError(f"bins must be a positive integer, got {self.bins!r}")


@dataclass(frozen=True)
class Identity(TranslatorBinding):
    """Pass through a token the environment already produced."""


def translate(binding: TranslatorBinding, transition: Transition) -> str:
    """Emit the symbol for one transition. Pure in both arguments."""
    if isinstance(binding, Sign1D):
        value = transition.action_value
        if not math.isfinite(value):
            raise DomainError(f"non-finite action value {value!r}")
        if value < 0:
            return binding.negative
        if value > 0:
            return binding.positive
        return binding.zero

    if isinstance(binding, Direction2D):
        move = transition.move
        if move is None or tuple(move) == (0, 0):
            return binding.noop
        symbol = _SYMBOL_OF_MOVE.get(tuple(move))
        if symbol is None:
            raise DomainError(f"not a king move: {move!r}")
        return symbol

    if isinstance(binding, MagnitudeBins):
        value = transition.action_value
        if not math.isfinite(value):
            raise DomainError(f"non-finite action value {value!r}")
        level = min(int(abs(value) / binding.increment), binding.cap)
        return f"{binding.prefix}{level}"

    if isinstance(binding, ProximityBins):
        if transition.contact:
            return binding.contact
        closeness = transition.hazard_closeness
        if closeness is None:
            raise ConfigError("translator needs hazard closeness, environment supplies none")
        if not math.isfinite(closeness):
            raise DomainError(f"non-finite closeness {closeness!r}")
        level = min(max(int(closeness * binding.bins), 0), binding.bins - 1)
        return f"{binding.prefix}{level}"

    if isinstance(binding, Identity):
        if transition.token is None:
            raise ConfigError("identity translator needs a token from the environment")
        return transition.token

    raise ConfigError(f"unknown translator binding {binding!r}")
