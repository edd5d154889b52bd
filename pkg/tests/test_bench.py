import subprocess
import sys
from collections import defaultdict

import pytest

from mcts_toolkit.bench import cli
from mcts_toolkit.bench.config import BenchmarkConfig, make_solver, solver_class
from mcts_toolkit.bench.convergence import (collect_convergence, export_convergence, final_snapshot,
                                            read_convergence, write_convergence)
from mcts_toolkit.bench.timing import DecisionTimingResult, measure_decision_time, read_timings, write_timings
from mcts_toolkit.bench.tournament import (SideConfig, read_matches, run_tournament, side_a_player,
                                           write_matches)
from mcts_toolkit.domains.heuristic import HeuristicStatefulSolver
from mcts_toolkit.errors import ConfigError
from mcts_toolkit.solver import GenericSolver, StatefulSolver

FAST_A = SideConfig("a", iterations=5, depth_limit=20)
FAST_B = SideConfig("b", iterations=5, depth_limit=20)


# -- configuration -------------------------------------------------------------

def test_config_defaults_per_domain():
    assert BenchmarkConfig().solver == "generic"
    assert BenchmarkConfig().exploration_c == 2.0
    c4 = BenchmarkConfig(domain="connect4")
    assert (c4.solver, c4.discount, c4.exploration_c) == ("stateful", 1.0, 1.0)
    assert BenchmarkConfig(domain="gridworld", exploration_c=0.5).exploration_c == 0.5


@pytest.mark.parametrize("kwargs", [
    {"domain": "chess"}, {"solver": "quantum"}, {"trials": 0}, {"games": 0}, {"workers": 0},
    {"discount": 0.0}, {"iterations": 0},
])
def test_config_errors(kwargs):
    with pytest.raises(ConfigError):
        BenchmarkConfig(**kwargs)


def test_solver_factory():
    assert solver_class("generic") is GenericSolver
    assert solver_class("stateful", heuristic=True) is HeuristicStatefulSolver
    cfg = BenchmarkConfig(domain="reversi")
    s = make_solver("stateful", cfg.make_mdp(), cfg.solver_config(0))
    assert isinstance(s, StatefulSolver)


# -- timing --------------------------------------------------------------------

def test_single_trial_has_zero_deviation():
    r = measure_decision_time(BenchmarkConfig(trials=1, iterations=20))
    assert len(r.durations) == 1 and r.mean == r.durations[0] and r.std == 0.0
    assert "warm-up" in r.note


def test_timing_statistics_and_roundtrip(tmp_path):
    r = DecisionTimingResult.from_durations([0.1, 0.3])
    assert r.mean == pytest.approx(0.2) and r.std == pytest.approx(0.1)
    path = tmp_path / "t.csv"
    write_timings(r, path)
    assert path.read_text().splitlines()[0] == "trial,seconds"
    assert read_timings(path) == [0.1, 0.3]


# -- convergence ---------------------------------------------------------------

def test_convergence_invariants():
    records = collect_convergence(BenchmarkConfig(iterations=200, seed=3))
    by_iter = defaultdict(list)
    last = {}
    for r in records:
        by_iter[r.iteration].append(r)
        if r.action in last:
            prev = last[r.action]
            assert r.iteration > prev.iteration and r.visits >= prev.visits
        last[r.action] = r
    assert len(by_iter[1]) == 1 and by_iter[1][0].exploration_term == 0.0
    for k, rows in by_iter.items():
        assert sum(r.visits for r in rows) == k
    assert sorted(by_iter) == list(range(1, 201))


def test_convergence_roundtrip_and_determinism(tmp_path):
    cfg = BenchmarkConfig(iterations=150, seed=9)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    records = export_convergence(cfg, a)
    export_convergence(cfg, b)
    assert a.read_bytes() == b.read_bytes()
    assert read_convergence(a) == records
    assert a.read_text().splitlines()[0] == "iteration,action,exploration_term,mean_reward,visits"


def test_convergence_trends_default_run():
    records = collect_convergence(BenchmarkConfig(seed=0))
    early, final = final_snapshot(records, 10), final_snapshot(records)
    for action, row in final.items():
        if action in early and early[action].visits >= 10:
            assert row.exploration_term < early[action].exploration_term
    assert min(final["left"].mean_reward, final["down"].mean_reward) > \
        max(final["up"].mean_reward, final["right"].mean_reward)


def test_read_convergence_rejects_bad_header(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_convergence(path)


def test_write_failure_names_path(tmp_path):
    target = tmp_path / "missing" / "out.csv"
    with pytest.raises(OSError, match="missing"):
        write_convergence([], target)


# -- tournament ----------------------------------------------------------------

def test_colour_alternation():
    assert [side_a_player(g, False) for g in range(4)] == [0, 1, 0, 1]
    assert [side_a_player(g, True) for g in range(4)] == [0, 0, 0, 0]


def test_tournament_aggregate_identity_and_roundtrip(tmp_path):
    result = run_tournament(6, FAST_A, FAST_B, seed=1, domain="connect4")
    assert result.wins + result.losses + result.ties == result.games == 6
    assert [r.game for r in result.records] == list(range(6))
    assert result.win_rate == result.wins / 6
    path = tmp_path / "m.csv"
    write_matches(result, path)
    assert read_matches(path) == result.records
    assert path.read_text().splitlines()[0] == \
        "game,winner,moves,side_a_iterations,side_a_depth,side_b_iterations,side_b_depth"


def test_tournament_is_seeded():
    a = run_tournament(4, FAST_A, FAST_B, seed=5, domain="reversi")
    b = run_tournament(4, FAST_A, FAST_B, seed=5, domain="reversi")
    assert a.records == b.records


def test_tournament_worker_count_does_not_change_records():
    serial = run_tournament(4, FAST_A, FAST_B, seed=2, domain="connect4")
    parallel = run_tournament(4, FAST_A, FAST_B, seed=2, domain="connect4", workers=2)
    assert serial.records == parallel.records


def test_tournament_rejects_single_player_domain():
    with pytest.raises(ConfigError):
        run_tournament(2, FAST_A, FAST_B, seed=0, domain="gridworld")


def test_self_play_symmetry():
    result = run_tournament(100, FAST_A, FAST_B, seed=11, domain="reversi")
    assert 0.35 <= result.win_rate <= 0.65


# -- command line --------------------------------------------------------------

def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "mcts_toolkit", *args], capture_output=True, text=True)


def test_cli_without_arguments_prints_usage():
    proc = run_cli()
    assert proc.returncode != 0 and "usage" in proc.stderr


def test_cli_unknown_flag():
    proc = run_cli("time", "--bogus")
    assert proc.returncode != 0 and "usage" in proc.stderr


def test_cli_converge_requires_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["converge"])
    assert exc.value.code != 0


def test_cli_converge_byte_identical(tmp_path):
    outs = [tmp_path / "c1.csv", tmp_path / "c2.csv"]
    for out in outs:
        assert cli.main(["converge", "--seed", "4", "--iterations", "120", "--out", str(out)]) == 0
    assert outs[0].read_bytes() == outs[1].read_bytes()


def test_cli_oracle_noise_zero(tmp_path, capsys):
    out = tmp_path / "v.csv"
    assert cli.main(["oracle", "--noise", "0", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    line = next(ln for ln in text.splitlines() if ln.startswith("start (3,2)"))
    assert "policy=←" in line or "policy=↓" in line
    assert "x,y,value,policy,optimal" == out.read_text().splitlines()[0]


def test_cli_time_and_tournament(tmp_path, capsys):
    assert cli.main(["time", "--domain", "connect4", "--iterations", "20", "--trials", "2",
                     "--out", str(tmp_path / "t.csv")]) == 0
    assert len(read_timings(tmp_path / "t.csv")) == 2
    assert cli.main(["tournament", "--seed", "0", "--games", "2", "--iterations", "5", "--depth-limit", "10",
                     "--out", str(tmp_path / "m.csv")]) == 0
    assert "games=2" in capsys.readouterr().out
    assert len(read_matches(tmp_path / "m.csv")) == 2


def test_cli_config_error_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["time", "--trials", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["tournament", "--seed", "1", "--domain", "gridworld", "--games", "1"])
