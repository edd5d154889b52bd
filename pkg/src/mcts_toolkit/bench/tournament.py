"""Two-player matches between differently configured solvers.

Every move is decided by a fresh solver for the side to move (no tree
reuse). Game ``i`` uses the seed ``seed + i``, so results do not depend on
how games are spread over worker processes.
"""

from __future__ import annotations

import csv
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, NamedTuple, Optional, Sequence

from ..domains import get_domain
from ..domains.heuristic import HeuristicWeightTable
from ..errors import ConfigError
from ..solver import SolverConfig
from .config import make_solver

TIE = "tie"
COLUMNS = ("game", "winner", "moves", "side_a_iterations", "side_a_depth",
           "side_b_iterations", "side_b_depth")


@dataclass(frozen=True)
class SideConfig:
    name: str
    iterations: int = 500
    depth_limit: int = 1000
    heuristic: bool = False
    solver: str = "stateful"
    exploration_c: float = 1.0
    discount: float = 1.0
    table: Optional[HeuristicWeightTable] = None

    def solver_config(self, seed: int) -> SolverConfig:
        return SolverConfig(exploration_constant=self.exploration_c, discount=self.discount,
                            depth_limit=self.depth_limit, iterations=self.iterations, seed=seed)

    def weight_table(self) -> Optional[HeuristicWeightTable]:
        if not self.heuristic:
            return None
        return self.table or HeuristicWeightTable.default()


class MatchRecord(NamedTuple):
    game: int
    winner: str
    moves: int
    side_a_iterations: int
    side_a_depth: int
    side_b_iterations: int
    side_b_depth: int


class TournamentResult(NamedTuple):
    records: List[MatchRecord]
    wins: int
    losses: int
    ties: int

    @property
    def games(self) -> int:
        return len(self.records)

    @property
    def win_rate(self) -> float:
        """Side A wins over all games; ties count as non-wins."""
        return self.wins / self.games


def side_a_player(game: int, fixed_colors: bool) -> int:
    """Player index side A controls in ``game``; colours alternate unless fixed."""
    return 0 if fixed_colors or game % 2 == 0 else 1


def play_game(game: int, side_a: SideConfig, side_b: SideConfig, seed: int,
              domain: str = "reversi", fixed_colors: bool = False) -> MatchRecord:
    info = get_domain(domain)
    a_player = side_a_player(game, fixed_colors)
    views = {p: info.factory(p) for p in (0, 1)}
    sides = {a_player: side_a, 1 - a_player: side_b}
    tables = {p: sides[p].weight_table() for p in (0, 1)}
    referee = views[0]
    rng = random.Random(seed + game)
    state = referee.initial_state()
    moves = 0
    while not referee.is_terminal(state) and referee.actions(state):
        p = referee.to_move(state)
        side = sides[p]
        solver = make_solver(side.solver, views[p], side.solver_config(rng.getrandbits(32)),
                             root_state=state, table=tables[p])
        action = solver.decide()
        state = referee.transition(state, action, rng)
        moves += 1
    w = referee.winner(state)
    if w is None:
        winner = TIE
    else:
        winner = side_a.name if w == a_player else side_b.name
    return MatchRecord(game, winner, moves, side_a.iterations, side_a.depth_limit,
                       side_b.iterations, side_b.depth_limit)


def _play(args):
    return play_game(*args)


def summarize(records: Sequence[MatchRecord], side_a: SideConfig) -> TournamentResult:
    records = sorted(records, key=lambda r: r.game)
    wins = sum(r.winner == side_a.name for r in records)
    ties = sum(r.winner == TIE for r in records)
    return TournamentResult(list(records), wins, len(records) - wins - ties, ties)


def run_tournament(games: int, side_a: SideConfig, side_b: SideConfig, seed: int,
                   domain: str = "reversi", workers: int = 1, fixed_colors: bool = False,
                   progress=None) -> TournamentResult:
    """Play ``games`` games; ``progress(record)`` is called as each one finishes."""
    if not get_domain(domain).two_player:
        raise ConfigError(f"domain {domain!r} is not a two-player game")
    if games < 1:
        raise ConfigError(f"games must be >= 1, got {games}")
    if side_a.name == side_b.name or TIE in (side_a.name, side_b.name):
        raise ConfigError("side names must differ and must not be 'tie'")
    jobs = [(g, side_a, side_b, seed, domain, fixed_colors) for g in range(games)]
    records = []
    if workers <= 1:
        for job in jobs:
            records.append(_play(job))
            if progress:
                progress(records[-1])
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rec in pool.map(_play, jobs):
                records.append(rec)
                if progress:
                    progress(rec)
    return summarize(records, side_a)


def write_matches(result: TournamentResult, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(COLUMNS)
        for r in result.records:
            writer.writerow(list(r))


def read_matches(path: Path) -> List[MatchRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        out = []
        for row in reader:
            out.append(MatchRecord(int(row["game"]), row["winner"], int(row["moves"]),
                                   int(row["side_a_iterations"]), int(row["side_a_depth"]),
                                   int(row["side_b_iterations"]), int(row["side_b_depth"])))
        return out
