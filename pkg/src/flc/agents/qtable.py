"""Tabular action values.

Greedy reads break exact ties with the caller's generator so an
untouched table behaves like a uniform policy instead of privileging
action 0. Rankings break ties by index to stay deterministic.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError


class QTable:
    def __init__(self, num_states: int, num_actions: int,
                 alpha: float = 0.1, gamma: float = 0.99):
        if num_states < 1 or num_actions < 1:
            raise ConfigError(
                f"table needs positive dimensions, got {num_states}x{num_actions}")
        if not 0.0 <= alpha <= 1.0:
            raise ConfigError(f"alpha must lie in [0, 1], got {alpha!r}")
        if not 0.0 <= gamma <= 1.0:
            raise ConfigError(f"gamma must lie in [0, 1], got {gamma!r}")
        self.values = np.zeros((num_states, num_actions), dtype=np.float64)
        self.alpha = alpha
        self.gamma = gamma

    @property
    def num_actions(self) -> int:
        return self.values.shape[1]

    def update(self, s: int, a: int, reward: float, s_next: int, done: bool):
        bootstrap = 0.0 if done else self.gamma * float(self.values[s_next].max())
        target = reward + bootstrap
        self.values[s, a] += self.alpha * (target - self.values[s, a])

    def greedy(self, s: int, rng: np.random.Generator) -> int:
        row = self.values[s]
        best = np.flatnonzero(row == row.max())
        if len(best) == 1:
            return int(best[0])
        return int(best[rng.integers(len(best))])

    def ranking(self, s: int) -> list[int]:
        """All actions, best value first, index order on ties."""
        return [int(a) for a in np.argsort(-self.values[s], kind="stable")]
