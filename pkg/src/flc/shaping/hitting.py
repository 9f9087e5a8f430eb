"""Exact expected steps until a recognizer-state chain enters a target.

Solves E = 1 + P·E restricted to states that hit a target with
probability one. A state with any positive-probability escape route into
a component that never reaches a target has infinite expectation, so it
is reported as +inf rather than fed to the solver.
"""

from __future__ import annotations

import math
from collections.abc import Iterable

import numpy as np

from ..errors import DomainError

_ROW_TOL = 1e-9


def exact_hitting_times(chain, targets: Iterable[int]) -> list[float]:
    p = np.asarray(chain, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise DomainError(f"chain must be a square matrix, got shape {p.shape}")
    n = p.shape[0]
    if np.any(p < 0.0) or np.any(np.abs(p.sum(axis=1) - 1.0) > _ROW_TOL):
        raise DomainError("chain rows must be probability distributions")
    target_set = set(targets)
    for t in target_set:
        if not 0 <= t < n:
            raise DomainError(f"target {t} out of range for {n} states")
    if not target_set:
        return [math.inf] * n

    positive = p > 0.0
    can_reach = set(target_set)
    grew = True
    while grew:
        grew = False
        for s in range(n):
            if s not in can_reach and any(positive[s, t] for t in can_reach):
                can_reach.add(s)
                grew = True

    # risk spreads backwards from doomed states, but never through a
    # target: arrival there ends the walk
    risky = {s for s in range(n) if s not in can_reach}
    grew = True
    while grew:
        grew = False
        for s in range(n):
            if s in risky or s in target_set:
                continue
            if any(positive[s, t] for t in risky):
                risky.add(s)
                grew = True

    solvable = [s for s in range(n) if s not in target_set and s not in risky]
    times = [math.inf] * n
    for t in target_set:
        times[t] = 0.0
    if solvable:
        sub = p[np.ix_(solvable, solvable)]
        solved = np.linalg.solve(np.eye(len(solvable)) - sub,
                                 np.ones(len(solvable)))
        for s, value in zip(solvable, solved):
            times[s] = float(value)
    return times
