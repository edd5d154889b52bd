"""Stochastic grid navigation with absorbing reward cells.

Default layout is an 8x5 grid (x = column 0..7, y = row 0..4) with +5 at
(0, 0), -1 at (0, 4) and (6, 1), and the agent starting at (3, 2). Every cell
carrying a non-zero reward is terminal. An action moves in the intended
direction with probability ``1 - noise``; the remaining mass is split evenly
between the two perpendicular directions. Moves off the grid leave the agent
in place, so all four actions are always legal.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, NamedTuple, Optional, Tuple, Union

from ..errors import ConfigError, IllegalActionError
from ..mdp import MDP


class Move(enum.Enum):
    LEFT = (-1, 0)
    UP = (0, 1)
    RIGHT = (1, 0)
    DOWN = (0, -1)

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    def __repr__(self):
        return f"Move.{self.name}"


_SYMBOLS = {Move.LEFT: "←", Move.UP: "↑", Move.RIGHT: "→", Move.DOWN: "↓"}
# enumeration order used for every tie-break
ACTIONS: Tuple[Move, ...] = (Move.LEFT, Move.UP, Move.RIGHT, Move.DOWN)
PERPENDICULAR = {
    Move.LEFT: (Move.UP, Move.DOWN),
    Move.RIGHT: (Move.UP, Move.DOWN),
    Move.UP: (Move.LEFT, Move.RIGHT),
    Move.DOWN: (Move.LEFT, Move.RIGHT),
}


class GridWorldState(NamedTuple):
    x: int
    y: int


DEFAULT_TERMINALS = {(0, 0): 5.0, (0, 4): -1.0, (6, 1): -1.0}


@dataclass(frozen=True)
class GridWorldConfig:
    noise: float = 0.2
    width: int = 8
    height: int = 5
    terminals: Dict[Tuple[int, int], float] = field(default_factory=lambda: dict(DEFAULT_TERMINALS))
    start: Tuple[int, int] = (3, 2)

    def __post_init__(self):
        if not 0.0 <= self.noise <= 1.0:
            raise ConfigError(f"noise must lie in [0, 1], got {self.noise}")
        if self.width < 1 or self.height < 1:
            raise ConfigError(f"grid must be at least 1x1, got {self.width}x{self.height}")
        for (x, y), r in self.terminals.items():
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ConfigError(f"terminal cell {(x, y)} outside the grid")
            if r == 0:
                raise ConfigError(f"terminal cell {(x, y)} must carry a non-zero reward")
        sx, sy = self.start
        if not (0 <= sx < self.width and 0 <= sy < self.height):
            raise ConfigError(f"start cell {self.start} outside the grid")


def load_layout(path: Union[str, Path], noise: float = 0.2) -> GridWorldConfig:
    """Read a layout file.

    Format (``#`` starts a comment)::

        8 5          <- width height
        0 0 5        <- x y reward, one line per terminal cell
        0 4 -1
        3 2          <- start cell, last line
    """
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if len(rows) < 2 or len(rows[0]) != 2 or len(rows[-1]) != 2:
        raise ConfigError(f"{path}: expected 'width height' first and 'x y' start cell last")
    try:
        width, height = int(rows[0][0]), int(rows[0][1])
        start = (int(rows[-1][0]), int(rows[-1][1]))
        terminals = {}
        for row in rows[1:-1]:
            if len(row) != 3:
                raise ConfigError(f"{path}: terminal line needs 'x y reward', got {' '.join(row)!r}")
            terminals[(int(row[0]), int(row[1]))] = float(row[2])
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return GridWorldConfig(noise=noise, width=width, height=height, terminals=terminals, start=start)


class GridWorld(MDP[GridWorldState, Move]):
    def __init__(self, config: Optional[GridWorldConfig] = None, **kwargs):
        self.config = config or GridWorldConfig(**kwargs)
        self.noise = self.config.noise
        self.width = self.config.width
        self.height = self.config.height
        self._rewards = {GridWorldState(*cell): r for cell, r in self.config.terminals.items()}

    def shift(self, state: GridWorldState, move: Move) -> GridWorldState:
        """Deterministic effect of ``move``; bumping into the boundary is a no-op."""
        dx, dy = move.value
        x, y = state.x + dx, state.y + dy
        if 0 <= x < self.width and 0 <= y < self.height:
            return GridWorldState(x, y)
        return state

    def transition(self, state, action, rng: random.Random):
        if action.__class__ is not Move or state in self._rewards:
            raise IllegalActionError(state, action)
        noise = self.noise
        if noise:
            u = rng.random()
            if u < noise:
                side_a, side_b = PERPENDICULAR[action]
                action = side_a if u < noise / 2 else side_b
        return self.shift(state, action)

    def reward(self, parent, action, state) -> float:
        return self._rewards.get(state, 0.0)

    def initial_state(self) -> GridWorldState:
        return GridWorldState(*self.config.start)

    def is_terminal(self, state) -> bool:
        return state in self._rewards

    def actions(self, state):
        return () if state in self._rewards else ACTIONS

    def action_label(self, action: Move) -> str:
        return action.name.lower()

    def states(self):
        """All cells, row-major from y = 0."""
        return [GridWorldState(x, y) for y in range(self.height) for x in range(self.width)]

    def with_start(self, start: Tuple[int, int]) -> "GridWorld":
        cfg = self.config
        return GridWorld(GridWorldConfig(noise=cfg.noise, width=cfg.width, height=cfg.height,
                                         terminals=dict(cfg.terminals), start=tuple(start)))
