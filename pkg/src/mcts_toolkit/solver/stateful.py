"""Explicit-state solver: nodes store their state, legal actions and terminality.

A (state, action) pair may lead to several children when transitions are
stochastic; selection scores each action on the statistics aggregated over
all of its children, then descends into the child matching a freshly sampled
successor.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Set

from .base import ActionStats, Node, Solver, aggregate, argmax_uct


class StateNode(Node):
    """Tree node of :class:`StatefulSolver`."""

    __slots__ = ("state", "valid_actions", "explored_actions", "is_terminal_flag", "children")

    def __init__(self, parent: Optional["StateNode"], inducing_action: Any, state: Any, mdp):
        super().__init__(parent, inducing_action)
        self.state = state
        if mdp.is_terminal(state):
            self.valid_actions = ()
        else:
            self.valid_actions = tuple(mdp.actions(state))
        self.is_terminal_flag = not self.valid_actions
        self.explored_actions: Set[Any] = set()
        self.children: Dict[Any, List[StateNode]] = {}

    def iter_children(self):
        for group in self.children.values():
            yield from group

    def is_fully_explored(self) -> bool:
        return len(self.explored_actions) == len(self.valid_actions)


class StatefulSolver(Solver[StateNode]):
    """MCTS that keeps every visited state in the tree."""

    def make_root(self) -> StateNode:
        return StateNode(None, None, self.root_state, self.mdp)

    def create_node(self, parent: StateNode, action: Any, state: Any = None) -> StateNode:
        if state is None:
            state = self.mdp.transition(parent.state, action, self.rng)
        child = StateNode(parent, action, state, self.mdp)
        parent.explored_actions.add(action)
        parent.children.setdefault(action, []).append(child)
        return child

    def node_is_terminal(self, node: StateNode) -> bool:
        return node.is_terminal_flag

    def unexplored_actions(self, node: StateNode) -> List[Any]:
        explored = node.explored_actions
        return [a for a in node.valid_actions if a not in explored]

    def select(self, node: StateNode) -> StateNode:
        transition = self.mdp.transition
        rng = self.rng
        c = self.C
        current = node
        while True:
            if current.is_terminal_flag:
                return current
            if len(current.valid_actions) > len(current.explored_actions):
                return current
            groups = current.children
            stats = [aggregate(a, groups[a]) for a in current.valid_actions]
            best = argmax_uct(current.n, stats, c).action
            new_state = transition(current.state, best, rng)
            for child in groups[best]:
                if child.state == new_state:
                    current = child
                    break
            else:
                return self.create_node(current, best, new_state)

    def action_statistics(self, node: StateNode) -> List[ActionStats]:
        out = []
        groups = node.children
        for a in node.valid_actions:
            group = groups.get(a)
            if group:
                s = aggregate(a, group)
                if s.n > 0:
                    out.append(s)
        return out
