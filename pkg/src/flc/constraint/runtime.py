"""Stateful recognizer advanced alongside a trajectory.

One runtime per rollout. Costs are emitted per entered state; violation
counting and the per-episode cost follow the constraint's violation mode:
reset returns to the start state after each accepting entry so repeats
are countable, absorbing just keeps folding the transition function.
"""

from __future__ import annotations

from typing import NamedTuple

from .spec import ConstraintSpec, ViolationMode
from .translate import Transition, translate


class StepOutcome(NamedTuple):
    state: int
    cost: float
    violated: bool


class RecognizerRuntime:
    def __init__(self, spec: ConstraintSpec):
        self.spec = spec
        self.dfa = spec.dfa
        self.q = spec.dfa.start
        self.violation_count = 0
        self.episode_cost = 0.0
        # lifetime counters survive reset(); training-level accounting
        self.total_violations = 0
        self.total_cost = 0.0

    def step_token(self, token: str) -> StepOutcome:
        dfa = self.dfa
        q_next = dfa.delta[self.q][dfa.alphabet.index(token)]
        cost = self.spec.cost_map[q_next]
        violated = q_next in dfa.accepting
        self.episode_cost += cost
        self.total_cost += cost
        if violated:
            self.violation_count += 1
            self.total_violations += 1
            if self.spec.violation_mode is ViolationMode.RESET:
                self.q = dfa.start
            else:
                self.q = q_next
        else:
            self.q = q_next
        return StepOutcome(q_next, cost, violated)

    def step(self, transition: Transition) -> StepOutcome:
        return self.step_token(translate(self.spec.translator, transition))

    def peek_token(self, token: str) -> int:
        """Where would this token lead? No state, cost, or counter changes."""
        return self.dfa.delta[self.q][self.dfa.alphabet.index(token)]

    def reset(self):
        """New episode: back to the start state, per-episode counters cleared."""
        self.q = self.dfa.start
        self.violation_count = 0
        self.episode_cost = 0.0
