"""Per-iteration export of root-child statistics."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional

from .config import BenchmarkConfig, make_solver

COLUMNS = ("iteration", "action", "exploration_term", "mean_reward", "visits")


class ConvergenceRecord(NamedTuple):
    iteration: int
    action: str
    exploration_term: float
    mean_reward: float
    visits: int


def collect_convergence(config: BenchmarkConfig) -> List[ConvergenceRecord]:
    """Run one seeded search, snapshotting every root child after each iteration."""
    mdp = config.make_mdp()
    solver = make_solver(config.solver, mdp, config.solver_config(config.seed))
    records: List[ConvergenceRecord] = []
    label = mdp.action_label

    def snapshot(s, i):
        for st in s.root_child_statistics():
            records.append(ConvergenceRecord(i, label(st.action), st.exploration_term, st.mean_reward, st.visits))

    solver.run_tree_search(config.iterations, callback=snapshot)
    return records


def write_convergence(records: Iterable[ConvergenceRecord], path: Path) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(COLUMNS)
            for r in records:
                writer.writerow([r.iteration, r.action, repr(r.exploration_term), repr(r.mean_reward), r.visits])
    except OSError as exc:
        raise OSError(f"cannot write convergence file {path}: {exc.strerror or exc}") from exc


def read_convergence(path: Path) -> List[ConvergenceRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != COLUMNS:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [ConvergenceRecord(int(r["iteration"]), r["action"], float(r["exploration_term"]),
                                  float(r["mean_reward"]), int(r["visits"])) for r in reader]


def export_convergence(config: BenchmarkConfig, path: Optional[Path] = None) -> List[ConvergenceRecord]:
    records = collect_convergence(config)
    path = path or config.out
    if path is not None:
        write_convergence(records, path)
    return records


def final_snapshot(records: List[ConvergenceRecord], iteration: Optional[int] = None):
    """``{action: record}`` at ``iteration`` (default: the last one)."""
    if iteration is None:
        iteration = max(r.iteration for r in records)
    return {r.action: r for r in records if r.iteration == iteration}
