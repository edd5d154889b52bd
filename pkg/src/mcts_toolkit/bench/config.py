"""Benchmark configuration and construction of domains and solvers from names."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..domains import get_domain
from ..domains.gridworld import GridWorldConfig, load_layout
from ..domains.heuristic import HeuristicGenericSolver, HeuristicStatefulSolver, HeuristicWeightTable
from ..errors import ConfigError
from ..mdp import MDP
from ..solver import SOLVERS, Solver, SolverConfig

# Terminal-only rewards of the board games sit ~30-60 plies away; a 0.9
# discount would shrink them below the noise of the exploration term.
DOMAIN_DISCOUNT = {"gridworld": 0.9, "pyl": 0.9, "2048": 1.0, "connect4": 1.0, "reversi": 1.0}
# GridWorld rewards span [-1, 5]; with C = 1 the search locks onto whichever
# optimal move finds the +5 cell first and starves the other one.
DOMAIN_EXPLORATION = {"gridworld": 2.0, "pyl": 1.0, "2048": 1.0, "connect4": 1.0, "reversi": 1.0}


@dataclass
class BenchmarkConfig:
    domain: str = "gridworld"
    solver: Optional[str] = None  # None: the domain's default variant
    iterations: int = 500
    depth_limit: int = 1000
    exploration_c: Optional[float] = None  # None: per-domain default
    discount: Optional[float] = None  # None: per-domain default
    seed: int = 0
    trials: int = 100
    games: int = 200
    out: Optional[Path] = None
    workers: int = 1
    fixed_colors: bool = False
    heuristic_table: Optional[Path] = None
    noise: float = 0.2
    layout: Optional[Path] = None

    def __post_init__(self):
        info = get_domain(self.domain)
        if self.solver is None:
            self.solver = info.default_solver
        if self.solver not in SOLVERS:
            raise ConfigError(f"unknown solver {self.solver!r}; choose from {', '.join(SOLVERS)}")
        if self.exploration_c is None:
            self.exploration_c = DOMAIN_EXPLORATION[self.domain]
        if self.discount is None:
            self.discount = DOMAIN_DISCOUNT[self.domain]
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.games < 1:
            raise ConfigError(f"games must be >= 1, got {self.games}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        self.solver_config(0)  # validates the search hyper-parameters early

    def solver_config(self, seed: int) -> SolverConfig:
        return SolverConfig(exploration_constant=self.exploration_c, discount=self.discount,
                            depth_limit=self.depth_limit, iterations=self.iterations, seed=seed)

    def make_mdp(self, player: int = 0) -> MDP:
        info = get_domain(self.domain)
        if self.domain == "gridworld":
            if self.layout is not None:
                return info.factory(load_layout(self.layout, noise=self.noise))
            return info.factory(GridWorldConfig(noise=self.noise))
        if info.two_player:
            return info.factory(player)
        return info.factory()


def solver_class(variant: str, heuristic: bool = False):
    if variant not in SOLVERS:
        raise ConfigError(f"unknown solver {variant!r}; choose from {', '.join(SOLVERS)}")
    if not heuristic:
        return SOLVERS[variant]
    return HeuristicStatefulSolver if variant == "stateful" else HeuristicGenericSolver


def make_solver(variant: str, mdp: MDP, config: SolverConfig, root_state=None,
                table: Optional[HeuristicWeightTable] = None) -> Solver:
    cls = solver_class(variant, table is not None)
    if table is not None:
        return cls(mdp, config, root_state=root_state, table=table)
    return cls(mdp, config, root_state=root_state)
