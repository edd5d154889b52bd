"""The sliding-tile game 2048 on a 4x4 board.

Tiles are stored as exponents (0 = empty, 1 = 2, 2 = 4, ...) in a flat
row-major tuple. A move is legal only if it changes the board. After the
slide a tile spawns in a uniformly chosen empty cell: a 2 with probability
0.9, otherwise a 4.

Reward is the accumulated merge score divided by ``reward_scale``.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import NamedTuple, Optional, Tuple

from ..errors import IllegalActionError
from ..mdp import MDP

UP, DOWN, LEFT, RIGHT = "up", "down", "left", "right"
ACTIONS = (UP, DOWN, LEFT, RIGHT)
SIZE = 4

_ROWS = {
    LEFT: [tuple(r * 4 + c for c in range(4)) for r in range(4)],
    RIGHT: [tuple(r * 4 + c for c in reversed(range(4))) for r in range(4)],
    UP: [tuple(r * 4 + c for r in range(4)) for c in range(4)],
    DOWN: [tuple(r * 4 + c for r in reversed(range(4))) for c in range(4)],
}


class Game2048State(NamedTuple):
    board: Tuple[int, ...]
    score: int = 0

    def tiles(self):
        """Board as a 4x4 list of tile values (0 for empty)."""
        return [[(1 << e) if e else 0 for e in self.board[r * 4:(r + 1) * 4]] for r in range(4)]


@lru_cache(maxsize=None)
def slide_line(line: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
    """Slide one line of exponents towards index 0; returns (new line, score gained)."""
    tiles = [e for e in line if e]
    out = []
    score = 0
    i = 0
    while i < len(tiles):
        if i + 1 < len(tiles) and tiles[i] == tiles[i + 1]:
            merged = tiles[i] + 1
            out.append(merged)
            score += 1 << merged
            i += 2
        else:
            out.append(tiles[i])
            i += 1
    out.extend([0] * (len(line) - len(out)))
    return tuple(out), score


def slide(board: Tuple[int, ...], action: str) -> Tuple[Tuple[int, ...], int]:
    new = list(board)
    gained = 0
    for idx in _ROWS[action]:
        line, s = slide_line((board[idx[0]], board[idx[1]], board[idx[2]], board[idx[3]]))
        gained += s
        for k, v in zip(idx, line):
            new[k] = v
    return tuple(new), gained


def spawn(board: Tuple[int, ...], rng: random.Random) -> Tuple[int, ...]:
    empty = [i for i, e in enumerate(board) if not e]
    if not empty:
        return board
    cell = empty[int(rng.random() * len(empty))]
    exponent = 1 if rng.random() < 0.9 else 2
    return board[:cell] + (exponent,) + board[cell + 1:]


class Game2048(MDP[Game2048State, str]):
    def __init__(self, reward_scale: float = 1000.0, start_seed: int = 0,
                 initial_board: Optional[Tuple[int, ...]] = None):
        self.reward_scale = reward_scale
        if initial_board is None:
            rng = random.Random(start_seed)
            initial_board = spawn(spawn((0,) * 16, rng), rng)
        if len(initial_board) != 16:
            raise ValueError("initial_board must have 16 cells")
        self._initial = Game2048State(tuple(initial_board), 0)

    def transition(self, state, action, rng: random.Random):
        if action not in _ROWS:
            raise IllegalActionError(state, action)
        board, gained = slide(state.board, action)
        if board == state.board:
            raise IllegalActionError(state, action)
        return Game2048State(spawn(board, rng), state.score + gained)

    def reward(self, parent, action, state) -> float:
        return state.score / self.reward_scale

    def initial_state(self) -> Game2048State:
        return self._initial

    def is_terminal(self, state) -> bool:
        return not self.actions(state)

    def actions(self, state):
        board = state.board
        return tuple(a for a in ACTIONS if slide(board, a)[0] != board)
