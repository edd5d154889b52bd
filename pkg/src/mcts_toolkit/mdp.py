"""Generative Markov decision process contract.

Every domain implements five operations; solvers consume nothing else.
``transition`` samples a single successor using the random generator the
caller passes in, so a domain object never owns mutable random state and can
be shared freely between solvers and threads.
"""

from __future__ import annotations

import abc
import random
from typing import Generic, Hashable, Optional, Sequence, TypeVar

S = TypeVar("S", bound=Hashable)
A = TypeVar("A", bound=Hashable)


class MDP(abc.ABC, Generic[S, A]):
    """Abstract generative MDP over opaque, hashable ``State`` and ``Action`` types."""

    @abc.abstractmethod
    def transition(self, state: S, action: A, rng: random.Random) -> S:
        """Sample one successor of ``state`` under ``action``.

        Raises:
            IllegalActionError: if ``action`` is not in ``actions(state)``.
        """

    @abc.abstractmethod
    def reward(self, parent: Optional[S], action: Optional[A], state: S) -> float:
        """Reward for arriving in ``state``; ``parent``/``action`` are None at the root.

        Must be defined for non-terminal states as well (0 unless the domain says otherwise).
        """

    @abc.abstractmethod
    def initial_state(self) -> S:
        """Start state of the domain. Pure."""

    @abc.abstractmethod
    def is_terminal(self, state: S) -> bool:
        """Pure terminality predicate."""

    @abc.abstractmethod
    def actions(self, state: S) -> Sequence[A]:
        """Legal actions in a stable enumeration order. Pure.

        An empty result at a non-terminal state is treated as terminal by the solvers.
        """

    def action_label(self, action: A) -> str:
        """Short printable identifier for ``action`` used in exported files."""
        return str(action)


class TwoPlayerMDP(MDP[S, A]):
    """Turn-based two-player game seen from one player's side.

    Terminal rewards are +1 / -1 / 0 for a win / loss / tie of ``player``.
    """

    players: tuple = (0, 1)

    def __init__(self, player: int = 0):
        if player not in self.players:
            raise ValueError(f"player must be one of {self.players}, got {player!r}")
        self.player = player

    @abc.abstractmethod
    def to_move(self, state: S) -> int:
        """Index of the player whose turn it is."""

    @abc.abstractmethod
    def winner(self, state: S) -> Optional[int]:
        """Winning player of a terminal state, or None for a tie."""

    @abc.abstractmethod
    def for_player(self, player: int) -> "TwoPlayerMDP[S, A]":
        """The same game seen from ``player``'s side."""
