"""Push Your Luck: a single-player dice game with an unbounded horizon.

This is a reconstruction that keeps only the structural properties used for
benchmarking (two actions, stochastic, no depth bound); it is not a faithful
port of any published rule set.

Each turn the player either *stops*, banking the pot and ending the game, or
*rolls* a fair die. Rolling an unmarked face marks it; the pot is the product
of the marked faces (0 while nothing is marked). Rolling a face that is
already marked busts: all marks are cleared and the pot drops to 0, but the
game goes on.
"""

from __future__ import annotations

import random
from typing import FrozenSet, NamedTuple

from ..errors import IllegalActionError
from ..mdp import MDP

ROLL = "roll"
STOP = "stop"
ACTIONS = (ROLL, STOP)
FACES = (1, 2, 3, 4, 5, 6)


class PushYourLuckState(NamedTuple):
    marked_faces: FrozenSet[int] = frozenset()
    banked: float = 0.0
    stopped: bool = False

    @property
    def pot(self) -> int:
        if not self.marked_faces:
            return 0
        p = 1
        for f in self.marked_faces:
            p *= f
        return p


class PushYourLuck(MDP[PushYourLuckState, str]):
    def __init__(self, faces: int = 6):
        self.faces = tuple(range(1, faces + 1))

    def transition(self, state, action, rng: random.Random):
        if state.stopped:
            raise IllegalActionError(state, action)
        if action == STOP:
            return PushYourLuckState(state.marked_faces, float(state.pot), True)
        if action != ROLL:
            raise IllegalActionError(state, action)
        face = self.faces[int(rng.random() * len(self.faces))]
        if face in state.marked_faces:
            return PushYourLuckState(frozenset(), state.banked, False)
        return PushYourLuckState(state.marked_faces | {face}, state.banked, False)

    def reward(self, parent, action, state) -> float:
        return state.banked if state.stopped else 0.0

    def initial_state(self) -> PushYourLuckState:
        return PushYourLuckState()

    def is_terminal(self, state) -> bool:
        return state.stopped

    def actions(self, state):
        return () if state.stopped else ACTIONS
