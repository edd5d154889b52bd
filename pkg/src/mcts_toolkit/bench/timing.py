"""Runtime-per-decision measurement."""

from __future__ import annotations

import csv
import platform
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from .config import BenchmarkConfig, make_solver


@dataclass
class DecisionTimingResult:
    durations: List[float]
    mean: float
    std: float
    note: str = field(default="")

    @classmethod
    def from_durations(cls, durations: List[float], note: str = "") -> "DecisionTimingResult":
        return cls(list(durations), statistics.fmean(durations), statistics.pstdev(durations), note)


def hardware_note() -> str:
    return f"{platform.machine()} {platform.processor() or platform.platform()} python {platform.python_version()}"


def measure_decision_time(config: BenchmarkConfig) -> DecisionTimingResult:
    """Time ``config.trials`` fresh decisions from the domain's initial state.

    Each trial builds a new tree; only the search and the final action
    extraction are timed. One extra warm-up decision runs first and is
    discarded.
    """
    mdp = config.make_mdp()
    root = mdp.initial_state()
    durations = []
    for trial in range(-1, config.trials):
        solver = make_solver(config.solver, mdp, config.solver_config(config.seed + trial), root_state=root)
        start = time.perf_counter()
        solver.run_tree_search()
        solver.best_action()
        elapsed = time.perf_counter() - start
        if trial >= 0:
            durations.append(elapsed)
    note = (f"{config.domain}/{config.solver} iterations={config.iterations} depth={config.depth_limit}; "
            f"1 warm-up discarded; domain construction excluded; {hardware_note()}")
    return DecisionTimingResult.from_durations(durations, note)


def write_timings(result: DecisionTimingResult, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["trial", "seconds"])
        for i, d in enumerate(result.durations):
            writer.writerow([i, repr(d)])


def read_timings(path: Path) -> List[float]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [float(row["seconds"]) for row in reader]


def summary(result: DecisionTimingResult, out: Optional[Path] = None) -> str:
    lines = [
        f"trials: {len(result.durations)}",
        f"mean seconds per decision: {result.mean:.6f}",
        f"std: {result.std:.6f}",
        f"note: {result.note}",
    ]
    if out is not None:
        lines.append(f"per-trial timings: {out}")
    return "\n".join(lines)
