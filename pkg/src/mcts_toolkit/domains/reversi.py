"""Reversi (Othello) on an 8x8 board, using 64-bit bitboards.

Square ``y * 8 + x`` maps to bit ``1 << (y * 8 + x)``. Dark (player 0) moves
first from the standard four-disc opening. A player without a flipping move
must pass; the game ends when neither side can move or the board is full.

States cache the side-to-move's legal-move mask and terminality, both pure
functions of the board, so ``actions`` and ``is_terminal`` are cheap.
"""

from __future__ import annotations

import random
from typing import List, NamedTuple, Optional, Tuple

from ..errors import IllegalActionError
from ..mdp import TwoPlayerMDP

DARK, LIGHT = 0, 1
PASS = 64
FULL = (1 << 64) - 1
_INNER = 0x7E7E7E7E7E7E7E7E  # columns 1..6; stops horizontal wrap-around


def square(x: int, y: int) -> int:
    return y * 8 + x


def coords(sq: int) -> Tuple[int, int]:
    return sq % 8, sq // 8


def legal_moves(own: int, opp: int) -> int:
    """Bitmask of the empty squares where ``own`` flips at least one ``opp`` disc."""
    empty = ~(own | opp) & FULL
    o = opp & _INNER
    moves = 0
    # +-1 (horizontal)
    x = o & (own << 1)
    x |= o & (x << 1); x |= o & (x << 1); x |= o & (x << 1); x |= o & (x << 1); x |= o & (x << 1)
    moves |= x << 1
    x = o & (own >> 1)
    x |= o & (x >> 1); x |= o & (x >> 1); x |= o & (x >> 1); x |= o & (x >> 1); x |= o & (x >> 1)
    moves |= x >> 1
    # +-8 (vertical)
    x = opp & (own << 8)
    x |= opp & (x << 8); x |= opp & (x << 8); x |= opp & (x << 8); x |= opp & (x << 8); x |= opp & (x << 8)
    moves |= x << 8
    x = opp & (own >> 8)
    x |= opp & (x >> 8); x |= opp & (x >> 8); x |= opp & (x >> 8); x |= opp & (x >> 8); x |= opp & (x >> 8)
    moves |= x >> 8
    # +-7, +-9 (diagonals)
    x = o & (own << 7)
    x |= o & (x << 7); x |= o & (x << 7); x |= o & (x << 7); x |= o & (x << 7); x |= o & (x << 7)
    moves |= x << 7
    x = o & (own >> 7)
    x |= o & (x >> 7); x |= o & (x >> 7); x |= o & (x >> 7); x |= o & (x >> 7); x |= o & (x >> 7)
    moves |= x >> 7
    x = o & (own << 9)
    x |= o & (x << 9); x |= o & (x << 9); x |= o & (x << 9); x |= o & (x << 9); x |= o & (x << 9)
    moves |= x << 9
    x = o & (own >> 9)
    x |= o & (x >> 9); x |= o & (x >> 9); x |= o & (x >> 9); x |= o & (x >> 9); x |= o & (x >> 9)
    moves |= x >> 9
    return moves & empty


def flips(own: int, opp: int, move: int) -> int:
    """Discs of ``opp`` flipped when ``own`` plays the single-bit ``move``."""
    o = opp & _INNER
    flipped = 0
    for shift, mask in ((1, o), (8, opp), (7, o), (9, o)):
        f = 0
        t = (move << shift) & mask
        while t:
            f |= t
            t <<= shift
            if t & own:
                flipped |= f
                break
            t &= mask
        f = 0
        t = (move >> shift) & mask
        while t:
            f |= t
            t >>= shift
            if t & own:
                flipped |= f
                break
            t &= mask
    return flipped


def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


class ReversiState(NamedTuple):
    discs: Tuple[int, int]
    to_move: int
    consecutive_passes: int
    moves: int
    terminal: bool

    def board(self) -> List[List[Optional[int]]]:
        """Rows y = 0..7, each a list of 8 cells holding a player index or None."""
        dark, light = self.discs
        return [[DARK if dark >> (y * 8 + x) & 1 else LIGHT if light >> (y * 8 + x) & 1 else None
                 for x in range(8)] for y in range(8)]

    def counts(self) -> Tuple[int, int]:
        return self.discs[0].bit_count(), self.discs[1].bit_count()


def make_state(dark: int, light: int, to_move: int, consecutive_passes: int = 0) -> ReversiState:
    """Build a state, deriving the legal-move cache and terminality."""
    own, opp = (light, dark) if to_move else (dark, light)
    moves = legal_moves(own, opp)
    if moves:
        terminal = False
    else:
        terminal = (own | opp) == FULL or consecutive_passes >= 2 or not legal_moves(opp, own)
    return ReversiState((dark, light), to_move, consecutive_passes, moves, terminal)


def initial_position() -> ReversiState:
    light = (1 << square(3, 3)) | (1 << square(4, 4))
    dark = (1 << square(4, 3)) | (1 << square(3, 4))
    return make_state(dark, light, DARK)


def board_from_rows(rows, to_move: int = DARK, consecutive_passes: int = 0) -> ReversiState:
    """Parse 8 strings of ``.``/``X``(dark)/``O``(light), row y = 0 first."""
    dark = light = 0
    for y, row in enumerate(rows):
        for x, ch in enumerate(row.replace(" ", "")):
            if ch in "XxBb":
                dark |= 1 << square(x, y)
            elif ch in "OoWw":
                light |= 1 << square(x, y)
    return make_state(dark, light, to_move, consecutive_passes)


class Reversi(TwoPlayerMDP[ReversiState, int]):
    """Reversi seen from ``player`` (DARK or LIGHT).

    Actions are square indices ``0..63`` in ascending order, or :data:`PASS`
    when the side to move has no flipping move.
    """

    def transition(self, state, action, rng: Optional[random.Random] = None):
        if state.terminal:
            raise IllegalActionError(state, action)
        p = state.to_move
        dark, light = state.discs
        if action == PASS:
            if state.moves:
                raise IllegalActionError(state, action)
            return make_state(dark, light, 1 - p, state.consecutive_passes + 1)
        if action.__class__ is not int or not 0 <= action < 64 or not (state.moves >> action) & 1:
            raise IllegalActionError(state, action)
        move = 1 << action
        if p:
            f = flips(light, dark, move)
            return make_state(dark ^ f, light | f | move, DARK)
        f = flips(dark, light, move)
        return make_state(dark | f | move, light ^ f, LIGHT)

    def reward(self, parent, action, state) -> float:
        if not state.terminal:
            return 0.0
        w = self.winner(state)
        if w is None:
            return 0.0
        return 1.0 if w == self.player else -1.0

    def initial_state(self) -> ReversiState:
        return initial_position()

    def is_terminal(self, state) -> bool:
        return state.terminal

    def actions(self, state):
        if state.terminal:
            return ()
        if not state.moves:
            return (PASS,)
        return tuple(_bits(state.moves))

    def action_label(self, action) -> str:
        if action == PASS:
            return "pass"
        x, y = coords(action)
        return f"{x},{y}"

    def to_move(self, state) -> int:
        return state.to_move

    def winner(self, state) -> Optional[int]:
        d, l_ = state.counts()
        if d == l_:
            return None
        return DARK if d > l_ else LIGHT

    def for_player(self, player: int) -> "Reversi":
        return Reversi(player)
