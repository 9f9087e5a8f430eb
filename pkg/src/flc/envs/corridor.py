"""A one-dimensional corridor with a goal at the far end.

Movement actions carry a signed action value for the sign translator;
noop and interact carry zero. Walking into a wall stays put but still
counts as actuation, so constraint tokens see the attempt.
"""

from __future__ import annotations

from ..constraint.translate import Transition
from ..errors import ConfigError, EpisodeDone

ACTION_VALUES = {"left": -1.0, "right": 1.0, "noop": 0.0, "interact": 0.0}


class Corridor1D:
    actions = ("left", "right", "noop", "interact")
    noop_action = "noop"

    def __init__(self, length: int = 10, start: int = 0, goal: int | None = None,
                 max_steps: int = 200):
        if length < 2:
            raise ConfigError(f"corridor needs at least 2 cells, got {length}")
        goal = length - 1 if goal is None else goal
        if not 0 <= start < length or not 0 <= goal < length:
            raise ConfigError("start and goal must lie inside the corridor")
        if start == goal:
            raise ConfigError("start and goal must differ")
        if max_steps < 1:
            raise ConfigError(f"max_steps must be positive, got {max_steps}")
        self.length = length
        self.start = start
        self.goal = goal
        self.max_steps = max_steps
        self.state = start
        self.steps = 0
        self.done = False

    @property
    def num_states(self) -> int:
        return self.length

    def reset(self) -> int:
        self.state = self.start
        self.steps = 0
        self.done = False
        return self.state

    def _destination(self, action: str) -> int:
        if action == "left":
            return max(self.state - 1, 0)
        if action == "right":
            return min(self.state + 1, self.length - 1)
        if action in ("noop", "interact"):
            return self.state
        raise ConfigError(f"unknown action {action!r}")

    def peek(self, action: str) -> Transition:
        """The transition step() would record, without taking it."""
        nxt = self._destination(action)
        return Transition(self.state, action, nxt,
                          action_value=ACTION_VALUES[action])

    def step(self, action: str):
        if self.done:
            raise EpisodeDone("episode is over; reset() first")
        transition = self.peek(action)
        self.state = transition.next_state
        self.steps += 1
        reward = -0.01
        if self.state == self.goal:
            reward += 1.0
            self.done = True
        elif self.steps >= self.max_steps:
            self.done = True
        return self.state, reward, self.done, transition
