from .base import (
    ActionStats,
    Node,
    RootChildStatistics,
    Solver,
    SolverConfig,
    exploration_term,
    uct_score,
)
from .generic import ActionNode, GenericSolver
from .stateful import StatefulSolver, StateNode

SOLVERS = {"generic": GenericSolver, "stateful": StatefulSolver}

__all__ = [
    "ActionNode",
    "ActionStats",
    "GenericSolver",
    "Node",
    "RootChildStatistics",
    "SOLVERS",
    "Solver",
    "SolverConfig",
    "StateNode",
    "StatefulSolver",
    "exploration_term",
    "uct_score",
]
