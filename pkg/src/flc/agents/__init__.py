from .config import ExperimentConfig, load_experiment, parse_experiment
from .metrics import (CSV_HEADER, EpisodeMetrics, EvalStats, RunSummary,
                      SeedResult, cost_rate)
from .qtable import QTable
from .train import make_env, train, train_seed

__all__ = [
    "CSV_HEADER",
    "EpisodeMetrics",
    "EvalStats",
    "ExperimentConfig",
    "QTable",
    "RunSummary",
    "SeedResult",
    "cost_rate",
    "load_experiment",
    "make_env",
    "parse_experiment",
    "train",
    "train_seed",
]
