"""Extensible Monte Carlo tree search over generative MDPs."""

from .errors import (
    ConfigError,
    ContractViolation,
    DivergenceError,
    IllegalActionError,
    NoDecisionError,
    ReplayDivergence,
)
from .mdp import MDP, TwoPlayerMDP
from .solver import GenericSolver, SolverConfig, StatefulSolver, uct_score

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ContractViolation",
    "DivergenceError",
    "GenericSolver",
    "IllegalActionError",
    "MDP",
    "NoDecisionError",
    "ReplayDivergence",
    "SolverConfig",
    "StatefulSolver",
    "TwoPlayerMDP",
    "uct_score",
]
