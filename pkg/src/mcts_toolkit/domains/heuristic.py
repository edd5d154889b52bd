"""Weight-table rollout bias for Reversi.

During simulation each side plays uniformly among the legal moves whose
square carries the highest table weight, instead of uniformly among all legal
moves. Tree policy, expansion and backpropagation are unchanged.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence, Union

from ..errors import ConfigError
from ..solver import GenericSolver, StatefulSolver
from .reversi import PASS

DEFAULT_TABLE_RESOURCE = "reversi_weights.txt"


def _symmetries(grid: List[List[int]]):
    g = grid
    for _ in range(4):
        g = [list(r) for r in zip(*g[::-1])]  # rotate 90 degrees
        yield g
        yield [row[::-1] for row in g]


class HeuristicWeightTable:
    """8x8 integer weights indexed ``[y][x]``; must be invariant under the 8 board symmetries."""

    def __init__(self, weights: Sequence[Sequence[int]]):
        grid = [list(map(int, row)) for row in weights]
        if len(grid) != 8 or any(len(row) != 8 for row in grid):
            raise ConfigError("heuristic weight table must be 8x8")
        for variant in _symmetries(grid):
            if variant != grid:
                raise ConfigError("heuristic weight table is not symmetric under board rotations/reflections")
        self.weights = grid
        # flat lookup by square index; passes are never preferred
        self.by_square = [grid[sq // 8][sq % 8] for sq in range(64)] + [float("-inf")]

    def __getitem__(self, square: int):
        return self.by_square[square]

    @classmethod
    def parse(cls, text: str) -> "HeuristicWeightTable":
        rows = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                try:
                    rows.append([int(tok) for tok in line.split()])
                except ValueError as exc:
                    raise ConfigError(f"bad weight table line {line!r}: {exc}") from None
        return cls(rows)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "HeuristicWeightTable":
        return cls.parse(Path(path).read_text())

    @classmethod
    def default(cls) -> "HeuristicWeightTable":
        text = resources.files("mcts_toolkit.domains.data").joinpath(DEFAULT_TABLE_RESOURCE).read_text()
        return cls.parse(text)

    @classmethod
    def zeros(cls) -> "HeuristicWeightTable":
        return cls([[0] * 8 for _ in range(8)])


def best_weighted_actions(actions: Sequence[int], table: HeuristicWeightTable) -> List[int]:
    """Actions sharing the maximal table weight, in their original order."""
    lookup = table.by_square
    best_score = None
    best: List[int] = []
    for a in actions:
        score = lookup[a]
        if best_score is None or score > best_score:
            best_score = score
            best = [a]
        elif score == best_score:
            best.append(a)
    return best


class ReversiHeuristicMixin:
    """Replaces the uniform rollout policy with the weight-table argmax-set rule."""

    def __init__(self, *args, table: Optional[HeuristicWeightTable] = None, **kwargs):
        self.table = table or HeuristicWeightTable.default()
        super().__init__(*args, **kwargs)

    def rollout_action(self, state, actions):
        if len(actions) == 1:
            return actions[0]
        return self.rng.choice(best_weighted_actions(actions, self.table))


class HeuristicStatefulSolver(ReversiHeuristicMixin, StatefulSolver):
    pass


class HeuristicGenericSolver(ReversiHeuristicMixin, GenericSolver):
    pass


__all__ = [
    "HeuristicGenericSolver",
    "HeuristicStatefulSolver",
    "HeuristicWeightTable",
    "PASS",
    "ReversiHeuristicMixin",
    "best_weighted_actions",
]
