"""Solver base class: the four overridable phases and the iteration driver.

Expansion, simulation and backpropagation are shared by both tree
representations; only node creation and selection differ between the
action-replay (:class:`GenericSolver`) and explicit-state
(:class:`StatefulSolver`) variants.
"""

from __future__ import annotations

import abc
import logging
import math
import random
from dataclasses import dataclass
from typing import Any, Callable, Generic, Hashable, Iterable, List, NamedTuple, Optional, Sequence, TypeVar

from ..errors import ConfigError, ContractViolation, NoDecisionError, ReplayDivergence
from ..mdp import MDP

logger = logging.getLogger(__name__)

N = TypeVar("N", bound="Node")


@dataclass(frozen=True)
class SolverConfig:
    """Search hyper-parameters. Ranges are checked on construction."""

    exploration_constant: float = 1.0
    discount: float = 0.9
    depth_limit: int = 1000
    iterations: int = 500
    seed: int = 0
    verbose: bool = False
    # "mean" (highest empirical mean) or "visits" (most visited root child)
    final_selection: str = "mean"

    def __post_init__(self):
        if not self.exploration_constant >= 0:
            raise ConfigError(f"exploration_constant must be >= 0, got {self.exploration_constant}")
        if not 0 < self.discount <= 1:
            raise ConfigError(f"discount must lie in (0, 1], got {self.discount}")
        if int(self.depth_limit) != self.depth_limit or self.depth_limit < 1:
            raise ConfigError(f"depth_limit must be a positive integer, got {self.depth_limit}")
        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise ConfigError(f"iterations must be a positive integer, got {self.iterations}")
        if self.final_selection not in ("mean", "visits"):
            raise ConfigError(f"final_selection must be 'mean' or 'visits', got {self.final_selection!r}")


class Node:
    """Search statistics shared by both node types.

    ``reward`` is the sum of backpropagated (discounted) rewards and
    ``max_reward`` their running maximum; ``n`` counts backpropagation passes.
    """

    __slots__ = ("parent", "inducing_action", "n", "reward", "max_reward")

    def __init__(self, parent: Optional["Node"], inducing_action: Any):
        self.parent = parent
        self.inducing_action = inducing_action
        self.n = 0
        self.reward = 0.0
        self.max_reward = -math.inf

    @property
    def mean_reward(self) -> float:
        return self.reward / self.n if self.n else 0.0

    def iter_children(self) -> Iterable["Node"]:
        raise NotImplementedError

    def walk(self) -> Iterable["Node"]:
        """Pre-order traversal of the subtree rooted here."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.iter_children())))


class ActionStats(NamedTuple):
    """Statistics of one root action (aggregated over its children when several exist)."""

    action: Any
    n: int
    reward: float
    max_reward: float

    @property
    def mean_reward(self) -> float:
        return self.reward / self.n


class RootChildStatistics(NamedTuple):
    action: Any
    exploration_term: float
    mean_reward: float
    visits: int


def exploration_term(parent_visits: int, child_visits: int, c: float) -> float:
    """``c * sqrt(2 ln(parent_visits) / child_visits)``."""
    return c * math.sqrt(2.0 * math.log(parent_visits) / child_visits)


def uct_score(parent_visits: int, child, c: float) -> float:
    """UCT value of ``child``: empirical mean plus the exploration bonus.

    ``child`` is anything exposing ``n`` and ``reward`` (a node or an
    :class:`ActionStats`). Unvisited children are a caller bug: selection
    hands not-fully-explored nodes to expansion instead of scoring them.
    """
    if child.n < 1:
        raise ContractViolation("uct_score called on an unvisited child")
    if parent_visits < 1:
        raise ContractViolation(f"parent visit count must be positive, got {parent_visits}")
    return child.reward / child.n + c * math.sqrt(2.0 * math.log(parent_visits) / child.n)


def argmax_uct(parent_visits: int, candidates: Sequence, c: float):
    """First candidate (in the given order) with the maximal UCT score."""
    best = None
    best_score = -math.inf
    for cand in candidates:
        score = uct_score(parent_visits, cand, c)
        if score > best_score:
            best, best_score = cand, score
    return best


class Solver(abc.ABC, Generic[N]):
    """Monte Carlo tree search over an :class:`~mcts_toolkit.mdp.MDP`.

    Subclasses define the node type through :meth:`create_node` and
    :meth:`select`. Every phase and the driver :meth:`run_tree_search` can be
    overridden; :meth:`rollout_action` is the narrow hook for biased rollouts.

    Args:
        mdp: Domain to search.
        config: Hyper-parameters; defaults to :class:`SolverConfig()`.
        root_state: State to decide from. Defaults to ``mdp.initial_state()``.
        rng: Random stream. Defaults to ``random.Random(config.seed)``.
    """

    def __init__(self, mdp: MDP, config: Optional[SolverConfig] = None,
                 root_state: Any = None, rng: Optional[random.Random] = None):
        self.mdp = mdp
        self.config = config or SolverConfig()
        self.rng = rng if rng is not None else random.Random(self.config.seed)
        self.root_state = mdp.initial_state() if root_state is None else root_state
        self.C = self.config.exploration_constant
        self.discount = self.config.discount
        self.depth_limit = self.config.depth_limit
        self.verbose = self.config.verbose
        self.completed_iterations = 0
        self.replay_divergences = 0
        self.root: N = self.make_root()

    # -- node representation -------------------------------------------------

    @abc.abstractmethod
    def make_root(self) -> N:
        ...

    @abc.abstractmethod
    def create_node(self, parent: N, action: Any, state: Any = None) -> N:
        ...

    @abc.abstractmethod
    def node_is_terminal(self, node: N) -> bool:
        ...

    @abc.abstractmethod
    def unexplored_actions(self, node: N) -> List[Any]:
        ...

    @abc.abstractmethod
    def action_statistics(self, node: N) -> List[ActionStats]:
        """Per-action statistics of ``node``'s explored children, in enumeration order."""

    # -- the four phases -----------------------------------------------------

    @abc.abstractmethod
    def select(self, node: N) -> N:
        ...

    def expand(self, node: N) -> N:
        if self.node_is_terminal(node):
            return node
        unexplored = self.unexplored_actions(node)
        if not unexplored:
            raise ContractViolation("expand called on a fully explored node")
        action = self.rng.choice(unexplored)
        return self.create_node(node, action)

    def rollout_action(self, state: Any, actions: Sequence[Any]) -> Any:
        """Rollout policy: uniform over the legal actions."""
        return self.rng.choice(actions)

    def simulate(self, node: N) -> float:
        mdp = self.mdp
        state = node.state
        parent = node.parent
        if self.node_is_terminal(node):
            return mdp.reward(None if parent is None else parent.state, node.inducing_action, state)
        gamma = self.discount
        limit = self.depth_limit
        choose = self.rollout_action
        transition = mdp.transition
        is_terminal = mdp.is_terminal
        actions_of = mdp.actions
        rng = self.rng
        depth = 0
        discount = gamma
        actions = actions_of(state)
        while True:
            action = choose(state, actions)
            new_state = transition(state, action, rng)
            if is_terminal(new_state):
                return mdp.reward(state, action, new_state) * discount
            new_actions = actions_of(new_state)
            if not new_actions:
                # dead end: treat as terminal with its current reward
                return mdp.reward(state, action, new_state) * discount
            depth += 1
            discount *= gamma
            if depth > limit:
                return mdp.reward(state, action, new_state) * discount
            state, actions = new_state, new_actions

    def backpropagate(self, node: N, reward: float) -> None:
        gamma = self.discount
        current = node
        while current is not None:
            if reward > current.max_reward:
                current.max_reward = reward
            current.reward += reward
            current.n += 1
            current = current.parent
            reward *= gamma

    # -- driver --------------------------------------------------------------

    def iterate(self) -> bool:
        """One select/expand/simulate/backpropagate pass. False if aborted."""
        try:
            leaf = self.select(self.root)
            child = self.expand(leaf)
            reward = self.simulate(child)
        except ReplayDivergence as exc:
            self.replay_divergences += 1
            if self.verbose:
                logger.info("iteration aborted: %s", exc)
            return False
        self.backpropagate(child, reward)
        self.completed_iterations += 1
        return True

    def run_tree_search(self, iterations: Optional[int] = None,
                        callback: Optional[Callable[["Solver", int], None]] = None) -> None:
        """Run ``iterations`` passes (default: the configured budget).

        ``callback(solver, i)`` is invoked after pass ``i`` (1-based), aborted or not.
        """
        budget = self.config.iterations if iterations is None else iterations
        if budget < 0:
            raise ConfigError(f"iteration budget must be >= 0, got {budget}")
        for i in range(1, budget + 1):
            self.iterate()
            if callback is not None:
                callback(self, i)
        if self.verbose:
            logger.info("search done: root.n=%d aborted=%d", self.root.n, self.replay_divergences)

    # -- reading the tree ----------------------------------------------------

    def best_action(self, by: Optional[str] = None) -> Any:
        """Action of the best root child, ties to the earliest enumerated action."""
        by = by or self.config.final_selection
        stats = self.action_statistics(self.root)
        if not stats:
            raise NoDecisionError("root has no expanded children")
        if by == "mean":
            key = ActionStats.mean_reward.fget
        elif by == "visits":
            key = lambda s: s.n  # noqa: E731
        else:
            raise ConfigError(f"unknown final selection rule {by!r}")
        best = stats[0]
        best_key = key(best)
        for s in stats[1:]:
            k = key(s)
            if k > best_key:
                best, best_key = s, k
        return best.action

    def root_child_statistics(self) -> List[RootChildStatistics]:
        root_n = self.root.n
        if root_n < 1:
            return []
        return [
            RootChildStatistics(s.action, exploration_term(root_n, s.n, self.C), s.mean_reward, s.n)
            for s in self.action_statistics(self.root)
        ]

    def decide(self) -> Any:
        """Run the configured search budget and return the best action."""
        self.run_tree_search()
        return self.best_action()


def aggregate(action: Hashable, children: Sequence[Node]) -> ActionStats:
    n = 0
    reward = 0.0
    mx = -math.inf
    for ch in children:
        n += ch.n
        reward += ch.reward
        if ch.max_reward > mx:
            mx = ch.max_reward
    return ActionStats(action, n, reward, mx)
