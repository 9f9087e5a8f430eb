"""Running empirical estimate of steps-to-next-violation per state.

Fed complete episodes between rollouts; never touched mid-episode, so
any potential table derived from it is stationary within a rollout.
Visits with no later violation in their episode are censored: counted,
excluded from the mean.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterable, Sequence

from ..errors import DomainError


class TvEstimator:
    def __init__(self, num_states: int, accepting: Iterable[int]):
        if num_states < 1:
            raise DomainError(f"need at least one state, got {num_states}")
        self.num_states = num_states
        self.accepting = frozenset(accepting)
        for q in self.accepting:
            if not 0 <= q < num_states:
                raise DomainError(f"accepting state {q} out of range")
        self._mean = [0.0] * num_states
        self._count = [0] * num_states
        self.censored_count = 0

    def update(self, states: Sequence[int], violation_times: Sequence[int]) -> None:
        """Fold one finished episode in.

        states[t] is the recognizer state entered at time t (index 0 is
        the initial state); violation_times are the indices of accepting
        entries, ascending.
        """
        previous = -1
        for t in violation_times:
            if not 0 <= t < len(states):
                raise DomainError(f"violation time {t} outside the episode")
            if t <= previous:
                raise DomainError("violation times must be strictly ascending")
            previous = t

        remaining = list(violation_times)
        next_violation = remaining.pop(0) if remaining else None
        for t, q in enumerate(states):
            if not 0 <= q < self.num_states:
                raise DomainError(f"state {q} out of range")
            if next_violation is not None and t > next_violation:
                next_violation = remaining.pop(0) if remaining else None
            if q in self.accepting:
                continue
            if next_violation is None:
                self.censored_count += 1
                continue
            sample = next_violation - t
            self._count[q] += 1
            self._mean[q] += (sample - self._mean[q]) / self._count[q]

    def estimate(self, q: int) -> float:
        if not 0 <= q < self.num_states:
            raise DomainError(f"state {q} out of range")
        if q in self.accepting:
            return 0.0
        if self._count[q] == 0:
            return math.inf  # no evidence yet: treat as never-violating
        return self._mean[q]

    def estimates(self) -> list[float]:
        return [self.estimate(q) for q in range(self.num_states)]

    def sample_count(self, q: int) -> int:
        return self._count[q]

    def to_json(self) -> str:
        body = {str(q): (None if math.isinf(e) else e)
                for q, e in enumerate(self.estimates())}
        return json.dumps(body, indent=2) + "\n"
