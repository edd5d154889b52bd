import sys
import random

import pytest

from mcts_toolkit.domains.gridworld import GridWorld, GridWorldConfig
from mcts_toolkit.mdp import MDP


class Corridor(MDP):
    """Cells 0..length-1; both ends are terminal with rewards ``left``/``right``."""

    def __init__(self, length=5, start=None, left=-1.0, right=1.0):
        self.length = length
        self.start = length // 2 if start is None else start
        self.ends = {0: left, length - 1: right}

    def transition(self, state, action, rng):
        return state + (1 if action == "R" else -1)

    def reward(self, parent, action, state):
        return self.ends.get(state, 0.0)

    def initial_state(self):
        return self.start

    def is_terminal(self, state):
        return state in self.ends

    def actions(self, state):
        return () if state in self.ends else ("L", "R")


class Fork(MDP):
    """'go' from the root lands in 'x' or 'y' at random; each offers a different action set."""

    def transition(self, state, action, rng):
        if state == "root":
            return "x" if rng.random() < 0.5 else "y"
        return "end"

    def reward(self, parent, action, state):
        return 1.0 if state == "end" else 0.0

    def initial_state(self):
        return "root"

    def is_terminal(self, state):
        return state == "end"

    def actions(self, state):
        return {"root": ("go",), "x": ("a", "b"), "y": ("c",), "end": ()}[state]


class DeadEnd(MDP):
    """Non-terminal state 1 offers no actions."""

    def transition(self, state, action, rng):
        return 1

    def reward(self, parent, action, state):
        return 3.0 if state == 1 else 0.0

    def initial_state(self):
        return 0

    def is_terminal(self, state):
        return False

    def actions(self, state):
        return ("step",) if state == 0 else ()


@pytest.fixture
def gridworld():
    return GridWorld(GridWorldConfig(noise=0.2))


@pytest.fixture
def gridworld_det():
    return GridWorld(GridWorldConfig(noise=0.0))


@pytest.fixture
def rng():
    return random.Random(1234)


def tree_signature(node, label=repr):
    """Structural fingerprint of a subtree: actions, statistics and shape."""
    return (label(node.inducing_action), node.n, node.reward, node.max_reward,
            tuple(tree_signature(ch, label) for ch in node.iter_children()))


def check_tree_invariants(solver):
    root = solver.root
    assert root.parent is None
    seen = set()
    for node in root.walk():
        assert id(node) not in seen, "node reachable by two paths"
        seen.add(id(node))
        children = list(node.iter_children())
        for ch in children:
            assert ch.parent is node
        assert node.n >= sum(ch.n for ch in children)
        if node.n > 0:
            assert node.reward / node.n <= node.max_reward + 1e-12
        else:
            assert node.reward == 0.0
    assert root.n == solver.completed_iterations


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
