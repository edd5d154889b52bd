import random

import pytest

from mcts_toolkit.domains.gridworld import GridWorld, GridWorldConfig, GridWorldState, Move
from mcts_toolkit.errors import ConfigError, ContractViolation, DivergenceError
from mcts_toolkit.oracle import (TransitionModel, format_gridworld, gridworld_model, policy_rows,
                                 q_value, random_policy_value, value_iteration)
from mcts_toolkit.solver import GenericSolver, SolverConfig, StatefulSolver

S = GridWorldState
DET = GridWorldConfig(noise=0.0)


def corridor(length=5, left=-1.0, right=1.0):
    """Deterministic line of cells with terminal ends, as an explicit model."""
    states = list(range(length))
    ends = {0: left, length - 1: right}
    actions, outcomes = {}, {}
    for s in states:
        if s in ends:
            actions[s] = ()
            continue
        actions[s] = ("L", "R")
        for a, s2 in (("L", s - 1), ("R", s + 1)):
            outcomes[(s, a)] = [(s2, 1.0, ends.get(s2, 0.0))]
    return TransitionModel(states, actions, outcomes, frozenset(ends))


def test_model_validation():
    with pytest.raises(ContractViolation):
        TransitionModel([0, 1], {0: ("a",)}, {(0, "a"): [(1, 0.5, 0.0)]}, frozenset({1}))
    with pytest.raises(ContractViolation):
        TransitionModel([0], {0: ("a",)}, {(0, "a"): [(7, 1.0, 0.0)]})


def test_gridworld_model_rows_sum_to_one():
    model = gridworld_model(GridWorldConfig(noise=0.2))
    assert len(model.states) == 40 and len(model.terminal) == 3
    model.validate(tol=1e-12)


def test_gridworld_model_matches_sampled_dynamics():
    cfg = GridWorldConfig(noise=0.2)
    model = gridworld_model(cfg)
    gw = GridWorld(cfg)
    rng = random.Random(8)
    for s, a in [(S(3, 2), Move.LEFT), (S(0, 2), Move.UP), (S(7, 4), Move.RIGHT)]:
        n = 10_000
        counts = {}
        for _ in range(n):
            s2 = gw.transition(s, a, rng)
            counts[s2] = counts.get(s2, 0) + 1
        for s2, p, _ in model.outcomes[(s, a)]:
            assert counts.get(s2, 0) / n == pytest.approx(p, abs=0.02)


# -- Q values ------------------------------------------------------------------

def test_q_terminal_adjacent():
    model = gridworld_model(DET)
    values = {s: 0.0 for s in model.states}
    assert q_value(model, values, S(1, 0), Move.LEFT, 0.9) == 5.0


def test_q_gamma_zero_is_immediate_reward():
    model = gridworld_model(GridWorldConfig(noise=0.2))
    values = {s: 100.0 for s in model.states}
    for s in (S(1, 0), S(3, 2), S(6, 2)):
        for a in Move:
            assert q_value(model, values, s, a, 0.0) == pytest.approx(model.expected_reward(s, a))


def test_q_hand_enumeration():
    model = gridworld_model(GridWorldConfig(noise=0.2))
    values = {s: 0.0 for s in model.states}
    values[S(1, 1)] = 3.0
    values[S(1, 0)] = 2.0
    # 0.8 slides into (0,0) for +5; 0.1 slips up to (1,1); 0.1 slips down into the wall, staying at (1,0)
    expected = 0.8 * 5.0 + 0.1 * 3.0 + 0.1 * 2.0
    assert q_value(model, values, S(1, 0), Move.LEFT, 1.0) == pytest.approx(expected)


def test_q_rejects_unknown_action():
    model = corridor()
    with pytest.raises(ContractViolation):
        q_value(model, {s: 0.0 for s in model.states}, 0, "L", 1.0)


# -- value iteration -----------------------------------------------------------

def test_all_terminal_model():
    model = TransitionModel(["a", "b"], {}, {}, frozenset({"a", "b"}))
    vf = value_iteration(model, 0.9)
    assert vf.values == {"a": 0.0, "b": 0.0} and vf.sweeps == 1


@pytest.mark.parametrize("cell,value", [((1, 0), 5.0), ((2, 0), 4.5), ((0, 1), 5.0), ((1, 1), 4.5), ((3, 2), 5 * 0.9 ** 4)])
def test_shortest_path_values(cell, value):
    vf = value_iteration(gridworld_model(DET), 0.9)
    assert vf[S(*cell)] == pytest.approx(value, abs=1e-8)


def test_start_policy_left_or_down():
    vf = value_iteration(gridworld_model(DET), 0.9)
    assert set(vf.greedy[S(3, 2)]) == {Move.LEFT, Move.DOWN}
    assert vf.policy[S(3, 2)] in (Move.LEFT, Move.DOWN)


@pytest.mark.parametrize("noise,gamma", [(0.0, 0.9), (0.2, 0.9), (0.2, 0.5), (0.3, 0.99)])
def test_bellman_fixed_point(noise, gamma):
    model = gridworld_model(GridWorldConfig(noise=noise))
    vf = value_iteration(model, gamma, epsilon=1e-12)
    for s in model.states:
        if s in model.terminal:
            continue
        qs = {a: q_value(model, vf.values, s, a, gamma) for a in model.actions[s]}
        assert vf[s] == pytest.approx(max(qs.values()), abs=1e-9)
        assert qs[vf.policy[s]] == pytest.approx(vf[s], abs=1e-9)
        for a in vf.greedy[s]:
            assert qs[a] == pytest.approx(vf[s], abs=1e-8)


def test_values_bounded_by_reward_range():
    vf = value_iteration(gridworld_model(GridWorldConfig(noise=0.2)), 0.9)
    assert all(-1.0 <= v <= 5.0 for v in vf.values.values())


def test_divergence_cap():
    model = gridworld_model(GridWorldConfig(noise=0.2))
    with pytest.raises(DivergenceError):
        value_iteration(model, 0.999, epsilon=1e-12, max_iterations=5)


@pytest.mark.parametrize("gamma", [-0.1, 1.1])
def test_gamma_validated(gamma):
    with pytest.raises(ConfigError):
        value_iteration(corridor(), gamma)


# -- random-policy evaluation --------------------------------------------------

def test_random_value_single_adjacent_terminal():
    model = TransitionModel(["s", "t"], {"s": ("go",), "t": ()}, {("s", "go"): [("t", 1.0, 1.0)]},
                            frozenset({"t"}))
    assert random_policy_value(model, 1.0)["s"] == 1.0


def test_random_value_symmetric_corridor():
    assert random_policy_value(corridor(5), 1.0)[2] == pytest.approx(0.0, abs=1e-12)


def test_random_value_corridor_closed_form():
    # gambler's ruin: absorbing at the right end from cell k of 0..4 has probability k/4
    values = random_policy_value(corridor(5, left=0.0, right=1.0), 1.0)
    for k in (1, 2, 3):
        assert values[k] == pytest.approx(k / 4, abs=1e-9)


def _mc_random_walk(cfg, start, gamma, n, seed, depth_limit=1000):
    """Independent sampler of the uniform-random return, using the rollout's discount schedule."""
    rewards = {S(*c): r for c, r in cfg.terminals.items()}
    moves = [(-1, 0), (0, 1), (1, 0), (0, -1)]
    rng = random.Random(seed)
    total = 0.0
    for _ in range(n):
        x, y = start
        discount = gamma
        steps = 0
        while True:
            dx, dy = moves[int(rng.random() * 4)]
            if 0 <= x + dx < cfg.width and 0 <= y + dy < cfg.height:
                x, y = x + dx, y + dy
            r = rewards.get(S(x, y))
            if r is not None:
                total += discount * r
                break
            steps += 1
            if steps > depth_limit:
                break
            discount *= gamma
    return total / n


def test_random_value_matches_monte_carlo():
    values = random_policy_value(gridworld_model(DET), 1.0)
    assert values[S(3, 2)] == pytest.approx(_mc_random_walk(DET, (3, 2), 1.0, 100_000, 3), abs=0.02)


@pytest.mark.parametrize("cls", [GenericSolver, StatefulSolver])
def test_simulate_mean_matches_random_value(cls):
    values = random_policy_value(gridworld_model(DET), 1.0, depth_limit=1000)
    solver = cls(GridWorld(DET), SolverConfig(discount=1.0, depth_limit=1000, seed=21))
    solver.select(solver.root)
    mean = sum(solver.simulate(solver.root) for _ in range(10_000)) / 10_000
    assert mean == pytest.approx(values[S(3, 2)], abs=0.05)


def test_random_value_discounted_matches_monte_carlo():
    cfg = GridWorldConfig(noise=0.0)
    values = random_policy_value(gridworld_model(cfg), 0.9)
    assert values[S(1, 0)] == pytest.approx(_mc_random_walk(cfg, (1, 0), 0.9, 20_000, 4), abs=0.03)


# -- rendering -----------------------------------------------------------------

def test_format_and_rows():
    vf = value_iteration(gridworld_model(DET), 0.9)
    text = format_gridworld(DET, vf)
    assert len(text.splitlines()) == 5 and "[5]" in text
    rows = policy_rows(DET, vf)
    start = next(r for r in rows if r[:2] == (3, 2))
    assert set(start[4].split("|")) == {"left", "down"}
