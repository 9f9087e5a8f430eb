"""The potential over recognizer states and the costs built from it.

potential() maps an expected time-to-violation onto [0, 1]: zero steps
away gives 1, one baseline away gives 1/2, never (+inf) gives 0. The
dense cost is the sparse cost plus the discounted potential difference,
so summed along a trajectory the added term telescopes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from ..errors import ConfigError, DomainError


@dataclass(frozen=True)
class ShapingConfig:
    beta: float
    gamma: float
    t_v_baseline: float
    lam: float = 0.0
    enabled: bool = True

    def __post_init__(self):
        if self.beta < 0:
            raise ConfigError(f"beta must be non-negative, got {self.beta!r}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError(f"gamma must lie in [0, 1], got {self.gamma!r}")
        if not self.t_v_baseline > 0:
            raise ConfigError(
                f"t_v_baseline must be positive, got {self.t_v_baseline!r}")
        if self.lam < 0:
            raise ConfigError(f"lambda must be non-negative, got {self.lam!r}")


def potential(e_tv: float, baseline: float) -> float:
    if not baseline > 0:
        raise DomainError(f"baseline must be positive, got {baseline!r}")
    if not e_tv >= 0:  # also rejects nan
        raise DomainError(f"expected time must be non-negative, got {e_tv!r}")
    return 0.5 ** (e_tv / baseline)


def phi_table(estimates, baseline: float) -> tuple[float, ...]:
    """Frozen snapshot, safe to share for a whole rollout."""
    return tuple(potential(e, baseline) for e in estimates)


def dense_cost(q_prev: int, q_next: int, sparse, phi, beta: float,
               gamma: float) -> float:
    return sparse[q_next] + beta * (gamma * phi[q_next] - phi[q_prev])


def baseline_from_episode(length: float, d: float) -> float:
    if not length > 0:
        raise DomainError(f"episode length must be positive, got {length!r}")
    if not d > 0:
        raise DomainError(f"cost limit must be positive, got {d!r}")
    return length / d


def shaped_reward(r: float, c: float, lam: float) -> float:
    return r - lam * c


def lagrangian_update(lam: float, j_c: float, d: float, eta: float) -> float:
    if not eta > 0:
        raise DomainError(f"step size must be positive, got {eta!r}")
    return max(0.0, lam + eta * (j_c - d))


def table_json(values) -> str:
    """State-indexed JSON object; +inf becomes null."""
    body = {str(q): (None if math.isinf(v) else v) for q, v in enumerate(values)}
    return json.dumps(body, indent=2) + "\n"
