"""Connect 4 on the standard 7-column, 6-row board, using bitboards.

Column ``c`` occupies bits ``7c .. 7c+5``; bit ``7c+6`` is an always-empty
sentinel that keeps the shift-based line detection from wrapping between
columns. Player 0 moves first.
"""

from __future__ import annotations

import random
from typing import List, NamedTuple, Optional, Tuple

from ..errors import IllegalActionError
from ..mdp import TwoPlayerMDP

COLUMNS = 7
ROWS = 6
_H = ROWS + 1
BOTTOM = tuple(1 << (c * _H) for c in range(COLUMNS))
COLUMN_MASK = tuple(((1 << ROWS) - 1) << (c * _H) for c in range(COLUMNS))
TOP = tuple(1 << (c * _H + ROWS - 1) for c in range(COLUMNS))
FULL = sum(COLUMN_MASK)


def has_four(bits: int) -> bool:
    for shift in (1, _H, _H - 1, _H + 1):
        m = bits & (bits >> shift)
        if m & (m >> (2 * shift)):
            return True
    return False


class Connect4State(NamedTuple):
    discs: Tuple[int, int] = (0, 0)
    to_move: int = 0
    winner: Optional[int] = None

    def board(self) -> List[List[Optional[int]]]:
        """Rows bottom-up, each a list of 7 cells holding a player index or None."""
        grid = [[None] * COLUMNS for _ in range(ROWS)]
        for player, bits in enumerate(self.discs):
            for c in range(COLUMNS):
                for r in range(ROWS):
                    if bits >> (c * _H + r) & 1:
                        grid[r][c] = player
        return grid


class Connect4(TwoPlayerMDP[Connect4State, int]):
    def transition(self, state, action, rng: Optional[random.Random] = None):
        discs = state.discs
        mask = discs[0] | discs[1]
        if state.winner is not None or action.__class__ is not int or not 0 <= action < COLUMNS \
                or mask & TOP[action]:
            raise IllegalActionError(state, action)
        move = (mask + BOTTOM[action]) & COLUMN_MASK[action]
        p = state.to_move
        mine = discs[p] | move
        new_discs = (discs[0], mine) if p else (mine, discs[1])
        return Connect4State(new_discs, 1 - p, p if has_four(mine) else None)

    def reward(self, parent, action, state) -> float:
        w = state.winner
        if w is None:
            return 0.0
        return 1.0 if w == self.player else -1.0

    def initial_state(self) -> Connect4State:
        return Connect4State()

    def is_terminal(self, state) -> bool:
        return state.winner is not None or (state.discs[0] | state.discs[1]) == FULL

    def actions(self, state):
        if state.winner is not None:
            return ()
        mask = state.discs[0] | state.discs[1]
        return tuple(c for c in range(COLUMNS) if not mask & TOP[c])

    def to_move(self, state) -> int:
        return state.to_move

    def winner(self, state) -> Optional[int]:
        return state.winner

    def for_player(self, player: int) -> "Connect4":
        return Connect4(player)
