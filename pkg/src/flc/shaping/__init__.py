from .estimator import TvEstimator
from .hitting import exact_hitting_times
from .potential import (ShapingConfig, baseline_from_episode, dense_cost,
                        lagrangian_update, phi_table, potential, shaped_reward,
                        table_json)

__all__ = [
    "ShapingConfig",
    "TvEstimator",
    "baseline_from_episode",
    "dense_cost",
    "exact_hitting_times",
    "lagrangian_update",
    "phi_table",
    "potential",
    "shaped_reward",
    "table_json",
]
