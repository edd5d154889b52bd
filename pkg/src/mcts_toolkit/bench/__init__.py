"""Benchmark harness: decision timing, convergence traces and tournaments."""

from .config import BenchmarkConfig, make_solver
from .convergence import ConvergenceRecord, export_convergence, read_convergence
from .timing import DecisionTimingResult, measure_decision_time
from .tournament import MatchRecord, SideConfig, TournamentResult, run_tournament

__all__ = [
    "BenchmarkConfig",
    "ConvergenceRecord",
    "DecisionTimingResult",
    "MatchRecord",
    "SideConfig",
    "TournamentResult",
    "export_convergence",
    "make_solver",
    "measure_decision_time",
    "read_convergence",
    "run_tournament",
]
