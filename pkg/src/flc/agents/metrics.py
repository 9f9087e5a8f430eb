"""Per-episode metrics, per-seed results, and their serialized forms.

The CSV and JSON writers format numbers with repr semantics, so a rerun
with the same seeds reproduces the files byte for byte.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from ..errors import DomainError

CSV_HEADER = "seed,episode,return,cost,violations,steps,lambda,cumulative_cost"


@dataclass(frozen=True)
class EpisodeMetrics:
    seed: int
    episode: int
    ret: float
    cost: float
    violations: int
    steps: int
    lam: float
    cumulative_cost: float

    def csv_row(self) -> str:
        return (f"{self.seed},{self.episode},{self.ret!r},{self.cost!r},"
                f"{self.violations},{self.steps},{self.lam!r},"
                f"{self.cumulative_cost!r}")


@dataclass(frozen=True)
class EvalStats:
    episodes: int
    mean_return: float
    mean_cost: float
    mean_violations: float
    mean_steps: float


@dataclass
class SeedResult:
    seed: int
    episodes: list[EpisodeMetrics]
    eval: EvalStats
    cost_rate: float
    final_lambda: float
    table: object


def cost_rate(episodes) -> float:
    """Total sparse training cost over total training steps."""
    total_cost = 0.0
    total_steps = 0
    for m in episodes:
        total_cost += m.cost
        total_steps += m.steps
    if total_steps == 0:
        raise DomainError("cost rate needs at least one step")
    return total_cost / total_steps


def _mean(xs) -> float:
    return sum(xs) / len(xs)


def _std(xs) -> float:
    m = _mean(xs)
    return math.sqrt(sum((x - m) ** 2 for x in xs) / len(xs))


def _stat(xs) -> dict:
    return {"mean": _mean(xs), "std": _std(xs)}


@dataclass
class RunSummary:
    results: list[SeedResult]

    def all_episodes(self):
        for result in self.results:
            yield from result.episodes

    def aggregate(self) -> dict:
        return {
            "seeds": [r.seed for r in self.results],
            "train": {
                "episodes_per_seed": len(self.results[0].episodes),
                "return": _stat([r.episodes[-1].ret for r in self.results]),
                "cumulative_cost": _stat(
                    [r.episodes[-1].cumulative_cost for r in self.results]),
            },
            "eval": {
                "episodes_per_seed": self.results[0].eval.episodes,
                "return": _stat([r.eval.mean_return for r in self.results]),
                "cost": _stat([r.eval.mean_cost for r in self.results]),
                "violations": _stat(
                    [r.eval.mean_violations for r in self.results]),
                "steps": _stat([r.eval.mean_steps for r in self.results]),
            },
            "cost_rate": {
                **_stat([r.cost_rate for r in self.results]),
                "per_seed": [r.cost_rate for r in self.results],
            },
            "final_lambda": _stat([r.final_lambda for r in self.results]),
        }

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        lines.extend(m.csv_row() for m in self.all_episodes())
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.aggregate(), indent=2, sort_keys=True) + "\n"
