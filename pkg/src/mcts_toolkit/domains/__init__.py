"""Benchmark domains and the name registry used by the bench harness."""

from typing import Callable, Dict, NamedTuple

from ..errors import ConfigError
from ..mdp import MDP
from .connect4 import Connect4, Connect4State
from .game2048 import Game2048, Game2048State
from .gridworld import GridWorld, GridWorldConfig, GridWorldState, Move, load_layout
from .heuristic import HeuristicGenericSolver, HeuristicStatefulSolver, HeuristicWeightTable
from .push_your_luck import PushYourLuck, PushYourLuckState
from .reversi import Reversi, ReversiState


class DomainInfo(NamedTuple):
    factory: Callable[..., MDP]
    default_solver: str
    two_player: bool


DOMAINS: Dict[str, DomainInfo] = {
    "gridworld": DomainInfo(GridWorld, "generic", False),
    "pyl": DomainInfo(PushYourLuck, "generic", False),
    "2048": DomainInfo(Game2048, "generic", False),
    "connect4": DomainInfo(Connect4, "stateful", True),
    "reversi": DomainInfo(Reversi, "stateful", True),
}


def get_domain(name: str) -> DomainInfo:
    try:
        return DOMAINS[name]
    except KeyError:
        raise ConfigError(f"unknown domain {name!r}; choose from {', '.join(DOMAINS)}") from None


__all__ = [
    "DOMAINS",
    "Connect4",
    "Connect4State",
    "DomainInfo",
    "Game2048",
    "Game2048State",
    "GridWorld",
    "GridWorldConfig",
    "GridWorldState",
    "HeuristicGenericSolver",
    "HeuristicStatefulSolver",
    "HeuristicWeightTable",
    "Move",
    "PushYourLuck",
    "PushYourLuckState",
    "Reversi",
    "ReversiState",
    "get_domain",
    "load_layout",
]
