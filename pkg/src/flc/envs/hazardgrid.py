"""An 8-connected gridworld with hazard cells and a goal.

Hazard layouts are rejection-sampled until a hazard-free path from
start to goal exists, which is what makes masked random walks able to
finish episodes without a single contact. closeness is 1 at contact and
falls off linearly with Chebyshev distance over the grid diameter.

shuffle="episode" re-samples the hazards every reset from the same
generator stream, so a (seed, action sequence) pair still replays to an
identical trajectory.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from ..automata.builders import MOVE_VECTORS
from ..constraint.translate import Transition
from ..errors import ConfigError, EpisodeDone

_MAX_LAYOUT_TRIES = 1000


class HazardGrid2D:
    actions = ("n", "u", "d", "l", "r", "ul", "ur", "dl", "dr")
    noop_action = "n"

    def __init__(self, width: int = 5, height: int = 5, hazards: int = 3,
                 max_steps: int = 300, seed: int = 0,
                 shuffle: str = "never",
                 start: tuple[int, int] | None = None,
                 goal: tuple[int, int] | None = None,
                 hazard_cells=None):
        if width < 2 or height < 2:
            raise ConfigError(f"grid must be at least 2x2, got {width}x{height}")
        if max_steps < 1:
            raise ConfigError(f"max_steps must be positive, got {max_steps}")
        if shuffle not in ("never", "episode"):
            raise ConfigError(f"shuffle must be never or episode, got {shuffle!r}")
        self.width = width
        self.height = height
        self.start = (0, 0) if start is None else tuple(start)
        self.goal = (width - 1, height - 1) if goal is None else tuple(goal)
        for label, (x, y) in (("start", self.start), ("goal", self.goal)):
            if not (0 <= x < width and 0 <= y < height):
                raise ConfigError(f"{label} {x, y} outside the grid")
        if self.start == self.goal:
            raise ConfigError("start and goal must differ")
        if not 0 <= hazards <= width * height - 2:
            raise ConfigError(f"cannot place {hazards} hazards on this grid")
        self.num_hazards = hazards
        self.max_steps = max_steps
        self.seed = seed
        self.shuffle = shuffle
        self._rng = np.random.default_rng(seed)
        self.hazard_cells: frozenset[tuple[int, int]] = frozenset()
        if hazard_cells is not None:
            if shuffle != "never":
                raise ConfigError("explicit hazard cells cannot be reshuffled")
            fixed = frozenset(tuple(c) for c in hazard_cells)
            for x, y in fixed:
                if not (0 <= x < width and 0 <= y < height):
                    raise ConfigError(f"hazard {x, y} outside the grid")
            if not self._solvable(fixed):
                raise ConfigError("explicit hazard layout blocks every path")
            self.hazard_cells = fixed
            self.num_hazards = len(fixed)
        else:
            self._sample_layout()
        self.pos = self.start
        self.steps = 0
        self.done = False

    # -- layout ----------------------------------------------------------

    def _sample_layout(self):
        cells = [(x, y) for y in range(self.height) for x in range(self.width)
                 if (x, y) not in (self.start, self.goal)]
        for _ in range(_MAX_LAYOUT_TRIES):
            picked = self._rng.choice(len(cells), size=self.num_hazards,
                                      replace=False)
            layout = frozenset(cells[i] for i in picked)
            if self._solvable(layout):
                self.hazard_cells = layout
                return
        raise ConfigError(
            f"no solvable layout with {self.num_hazards} hazards found in "
            f"{_MAX_LAYOUT_TRIES} attempts")

    def _solvable(self, layout) -> bool:
        if self.start in layout or self.goal in layout:
            return False
        seen = {self.start}
        frontier = deque([self.start])
        while frontier:
            x, y = frontier.popleft()
            if (x, y) == self.goal:
                return True
            for dx, dy in MOVE_VECTORS.values():
                nxt = (x + dx, y + dy)
                if (0 <= nxt[0] < self.width and 0 <= nxt[1] < self.height
                        and nxt not in layout and nxt not in seen):
                    seen.add(nxt)
                    frontier.append(nxt)
        return False

    # -- geometry --------------------------------------------------------

    def hazard_distance(self, pos: tuple[int, int]) -> float:
        """Normalized closeness in [0, 1]; 1.0 means standing on a hazard."""
        x, y = pos
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise ConfigError(f"{pos} outside the grid")
        if not self.hazard_cells:
            return 0.0
        nearest = min(max(abs(x - hx), abs(y - hy))
                      for hx, hy in self.hazard_cells)
        diameter = max(self.width - 1, self.height - 1)
        return min(max(1.0 - nearest / diameter, 0.0), 1.0)

    def cell_index(self, pos: tuple[int, int]) -> int:
        return pos[1] * self.width + pos[0]

    @property
    def num_states(self) -> int:
        return self.width * self.height

    @property
    def state(self) -> int:
        return self.cell_index(self.pos)

    # -- dynamics --------------------------------------------------------

    def reset(self) -> int:
        if self.shuffle == "episode":
            self._sample_layout()
        self.pos = self.start
        self.steps = 0
        self.done = False
        return self.state

    def _destination(self, action: str) -> tuple[tuple[int, int], tuple[int, int]]:
        if action == self.noop_action:
            move = (0, 0)
        elif action in MOVE_VECTORS:
            move = MOVE_VECTORS[action]
        else:
            raise ConfigError(f"unknown action {action!r}")
        x = min(max(self.pos[0] + move[0], 0), self.width - 1)
        y = min(max(self.pos[1] + move[1], 0), self.height - 1)
        return move, (x, y)

    def peek(self, action: str) -> Transition:
        move, nxt = self._destination(action)
        return Transition(self.state, action, self.cell_index(nxt),
                          move=None if move == (0, 0) else move,
                          hazard_closeness=self.hazard_distance(nxt),
                          contact=nxt in self.hazard_cells)

    def step(self, action: str):
        if self.done:
            raise EpisodeDone("episode is over; reset() first")
        transition = self.peek(action)
        _, nxt = self._destination(action)
        self.pos = nxt
        self.steps += 1
        reward = -0.01
        if self.pos == self.goal:
            reward += 1.0
            self.done = True
        elif self.steps >= self.max_steps:
            self.done = True
        return self.state, reward, self.done, transition
