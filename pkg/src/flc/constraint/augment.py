"""Constraint-state augmentation of environment states."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import DomainError


class AugmentMode(enum.Enum):
    ONE_HOT = "one_hot"
    PRODUCT_INDEX = "product_index"


@dataclass(frozen=True)
class AugmentedState:
    mdp_state: int
    q: int
    encoding: AugmentMode
    num_states: int

    def one_hot(self) -> tuple[int, ...]:
        return tuple(1 if i == self.q else 0 for i in range(self.num_states))

    def product_index(self) -> int:
        # bijective with (mdp_state, q) pairs
        return self.mdp_state * self.num_states + self.q


def augment(s_index: int, q: int, mode: AugmentMode, num_states: int) -> AugmentedState:
    if not 0 <= q < num_states:
        raise IndexError(f"recognizer state {q} out of range for {num_states} states")
    return AugmentedState(s_index, q, mode, num_states)


def embedding_dim(num_states: int) -> int:
    """Dimensionality of a compressed recognizer-state embedding."""
    if num_states < 2:
        raise DomainError(f"need at least 2 states, got {num_states}")
    return num_states.bit_length() - 1
