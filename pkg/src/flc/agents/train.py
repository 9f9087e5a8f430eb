"""Seeded tabular Q-learning against one or more monitored constraints.

One generator per seed drives exploration, tie-breaking, and (via a
derived seed) the environment layout, so a run is reproducible from the
seed alone. Sparse cost is always what lands in the metrics and the
Lagrangian update; the dense shaped signal only ever feeds q_update.
"""

from __future__ import annotations

import numpy as np

from ..actionshape import EnforcementMode, Phase, enforcement_schedule
from ..constraint import (AugmentMode, RecognizerRuntime, augment, load,
                          translate)
from ..envs import Corridor1D, HazardGrid2D
from ..errors import ConfigError
from ..kvformat import Call
from ..shaping import (TvEstimator, baseline_from_episode, dense_cost,
                       lagrangian_update, phi_table, shaped_reward)
from .config import ExperimentConfig
from .metrics import (EpisodeMetrics, EvalStats, RunSummary, SeedResult,
                      cost_rate)
from .qtable import QTable

_DEF_COST_LIMIT = 25.0


def make_env(call: Call, seed: int):
    kwargs = dict(call.kwargs)
    if call.name == "corridor1d":
        allowed = {"length", "start", "goal", "max_steps"}
        extra = set(kwargs) - allowed
        if extra:
            raise ConfigError(f"corridor1d does not take {sorted(extra)}")
        return Corridor1D(**kwargs)
    if call.name == "hazardgrid":
        allowed = {"width", "height", "hazards", "max_steps", "seed", "shuffle",
                   "start", "goal"}
        extra = set(kwargs) - allowed
        if extra:
            raise ConfigError(f"hazardgrid does not take {sorted(extra)}")
        kwargs.setdefault("seed", seed)  # layout follows the run seed
        return HazardGrid2D(**kwargs)
    raise ConfigError(f"unknown environment {call.name!r}")


def _product_index(s: int, runtimes) -> int:
    idx = s
    for rt in runtimes:
        idx = augment(idx, rt.q, AugmentMode.PRODUCT_INDEX,
                      rt.dfa.num_states).product_index()
    return idx


def _check_translators(env, runtimes):
    """Fail before training if a translator needs data this env lacks."""
    probe = env.peek(env.noop_action)
    for rt in runtimes:
        token = translate(rt.spec.translator, probe)
        rt.dfa.alphabet.index(token)


def _masked_choice(env, runtimes, ranked_actions):
    """First action, best first, that no recognizer would flag; None if all do."""
    for action in ranked_actions:
        transition = env.peek(action)
        safe = True
        for rt in runtimes:
            token = translate(rt.spec.translator, transition)
            if rt.peek_token(token) in rt.dfa.accepting:
                safe = False
                break
        if safe:
            return action
    return None


def _epsilon_at(episode: int, config: ExperimentConfig) -> float:
    horizon = max(1, round(config.epsilon_fraction * config.episodes))
    progress = min(1.0, episode / horizon)
    return (config.epsilon_start
            + (config.epsilon_end - config.epsilon_start) * progress)


class _SeedRun:
    """Everything one seed owns: env, table, recognizers, estimators."""

    def __init__(self, config: ExperimentConfig, seed: int):
        self.config = config
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.env = make_env(config.env, seed)
        self.specs = [load(name) for name in config.constraints]
        self.runtimes = [RecognizerRuntime(spec) for spec in self.specs]
        _check_translators(self.env, self.runtimes)

        table_states = self.env.num_states
        if config.augmentation == "product":
            for spec in self.specs:
                table_states *= spec.dfa.num_states
        self.table = QTable(table_states, len(self.env.actions),
                            alpha=config.alpha, gamma=config.gamma)
        self.noop_index = self.env.actions.index(self.env.noop_action)

        self.dense = config.dense
        if self.dense:
            self.baseline = (config.t_v_baseline
                             if config.t_v_baseline is not None
                             else baseline_from_episode(self.env.max_steps,
                                                        _DEF_COST_LIMIT))
            self.estimators = [TvEstimator(spec.dfa.num_states,
                                           spec.dfa.accepting)
                               for spec in self.specs]
        self.lam = config.lam if config.enforcement == "shaping" else 0.0

    def _state_index(self) -> int:
        if self.config.augmentation == "product":
            return _product_index(self.env.state, self.runtimes)
        return self.env.state

    def _choose(self, state_index: int, epsilon: float, filtering: bool) -> int:
        explore = epsilon > 0.0 and self.rng.random() < epsilon
        if not filtering:
            if explore:
                return int(self.rng.integers(self.table.num_actions))
            return self.table.greedy(state_index, self.rng)
        if explore:
            order = self.rng.permutation(self.table.num_actions)
        else:
            order = self.table.ranking(state_index)
        ranked = [self.env.actions[int(a)] for a in order]
        action = _masked_choice(self.env, self.runtimes, ranked)
        if action is None:
            return self.noop_index  # safe fallback: stand still
        return self.env.actions.index(action)

    def _episode(self, *, epsilon: float, learn: bool, filtering: bool,
                 phi_tables):
        env = self.env
        env.reset()
        for rt in self.runtimes:
            rt.reset()
        traces = [[rt.q] for rt in self.runtimes]
        violation_times = [[] for _ in self.runtimes]
        ret = 0.0
        sparse_total = 0.0
        violations = 0
        done = False
        while not done:
            state_index = self._state_index()
            action_index = self._choose(state_index, epsilon, filtering)
            q_before = [rt.q for rt in self.runtimes]
            _, reward, done, transition = env.step(env.actions[action_index])
            signal = 0.0
            for i, rt in enumerate(self.runtimes):
                outcome = rt.step(transition)
                sparse_total += outcome.cost
                violations += outcome.violated
                traces[i].append(outcome.state)
                if outcome.violated:
                    violation_times[i].append(len(traces[i]) - 1)
                if phi_tables is None:
                    signal += outcome.cost
                else:
                    signal += dense_cost(q_before[i], outcome.state,
                                         self.specs[i].cost_map, phi_tables[i],
                                         self.config.beta, self.config.gamma)
            ret += reward
            if learn:
                effective = shaped_reward(reward, signal, self.lam)
                self.table.update(state_index, action_index, effective,
                                  self._state_index(), done)
        return ret, sparse_total, violations, env.steps, traces, violation_times

    def train(self) -> list[EpisodeMetrics]:
        config = self.config
        filtering = (config.enforcement == "hard"
                     and enforcement_schedule(config.hard_mode, Phase.TRAIN))
        rows = []
        cumulative = 0.0
        for episode in range(config.episodes):
            phi_tables = None
            if self.dense:
                phi_tables = [phi_table(est.estimates(), self.baseline)
                              for est in self.estimators]
            ret, cost, violations, steps, traces, times = self._episode(
                epsilon=_epsilon_at(episode, config), learn=True,
                filtering=filtering, phi_tables=phi_tables)
            if self.dense:
                for est, trace, when in zip(self.estimators, traces, times):
                    est.update(trace, when)
            if config.enforcement == "lagrangian":
                lam_used = self.lam
                self.lam = lagrangian_update(self.lam, cost, config.d,
                                             config.eta)
            else:
                lam_used = self.lam
            cumulative += cost
            rows.append(EpisodeMetrics(seed=self.seed, episode=episode,
                                       ret=ret, cost=cost,
                                       violations=violations, steps=steps,
                                       lam=lam_used,
                                       cumulative_cost=cumulative))
        return rows

    def evaluate(self) -> EvalStats:
        config = self.config
        filtering = (config.enforcement == "hard"
                     and enforcement_schedule(config.hard_mode, Phase.EVAL))
        returns, costs, violations, steps = [], [], [], []
        for _ in range(config.eval_episodes):
            ret, cost, v, n, _, _ = self._episode(
                epsilon=0.0, learn=False, filtering=filtering,
                phi_tables=None)
            returns.append(ret)
            costs.append(cost)
            violations.append(v)
            steps.append(n)
        episodes = max(1, config.eval_episodes)
        return EvalStats(episodes=config.eval_episodes,
                         mean_return=sum(returns) / episodes,
                         mean_cost=sum(costs) / episodes,
                         mean_violations=sum(violations) / episodes,
                         mean_steps=sum(steps) / episodes)


def train_seed(config: ExperimentConfig, seed: int) -> SeedResult:
    run = _SeedRun(config, seed)
    episodes = run.train()
    stats = run.evaluate()
    return SeedResult(seed=seed, episodes=episodes, eval=stats,
                      cost_rate=cost_rate(episodes),
                      final_lambda=run.lam, table=run.table)


def train(config: ExperimentConfig) -> RunSummary:
    return RunSummary([train_seed(config, seed) for seed in config.seeds])
