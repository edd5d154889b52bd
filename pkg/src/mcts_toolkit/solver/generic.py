"""Action-replay solver: nodes keep only their inducing action.

States are re-derived on every selection pass by replaying transitions from
the root, so memory stays proportional to the number of expanded actions no
matter how many successor states a stochastic transition can produce.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from ..errors import ReplayDivergence
from .base import ActionStats, Node, Solver, argmax_uct


class ActionNode(Node):
    """Tree node of :class:`GenericSolver`.

    ``state`` and ``actions`` are transient: valid only right after the
    selection pass (or :meth:`GenericSolver.replay_to`) that went through
    this node.
    """

    __slots__ = ("children", "depth", "state", "actions", "terminal")

    def __init__(self, parent: Optional["ActionNode"], inducing_action: Any):
        super().__init__(parent, inducing_action)
        self.children: Dict[Any, ActionNode] = {}
        self.depth = 0 if parent is None else parent.depth + 1
        self.state = None
        self.actions = ()
        self.terminal = False

    @property
    def transient_state(self):
        return self.state

    def iter_children(self):
        return self.children.values()

    def is_fully_explored(self) -> bool:
        children = self.children
        return all(a in children for a in self.actions)


class GenericSolver(Solver[ActionNode]):
    """MCTS that stores actions only and replays the MDP to recover states."""

    def make_root(self) -> ActionNode:
        root = ActionNode(None, None)
        self._resolve(root, self.root_state)
        return root

    def _resolve(self, node: ActionNode, state) -> None:
        mdp = self.mdp
        node.state = state
        if mdp.is_terminal(state):
            node.actions = ()
            node.terminal = True
        else:
            node.actions = tuple(mdp.actions(state))
            node.terminal = not node.actions

    def _step(self, node: ActionNode) -> None:
        parent = node.parent
        action = node.inducing_action
        if action not in parent.actions:
            raise ReplayDivergence(
                f"action {action!r} at depth {node.depth} is illegal in replayed state {parent.state!r}")
        self._resolve(node, self.mdp.transition(parent.state, action, self.rng))

    def replay_to(self, node: ActionNode):
        """Re-sample the states along the root-to-``node`` chain; returns ``node``'s state."""
        path = []
        current = node
        while current.parent is not None:
            path.append(current)
            current = current.parent
        self._resolve(current, self.root_state)
        for n in reversed(path):
            self._step(n)
        return node.state

    def create_node(self, parent: ActionNode, action: Any, state: Any = None) -> ActionNode:
        child = ActionNode(parent, action)
        parent.children[action] = child
        return child

    def node_is_terminal(self, node: ActionNode) -> bool:
        return node.terminal

    def unexplored_actions(self, node: ActionNode) -> List[Any]:
        children = node.children
        return [a for a in node.actions if a not in children]

    def select(self, node: ActionNode) -> ActionNode:
        self.replay_to(node)
        current = node
        c = self.C
        while True:
            if current.terminal:
                return current
            children = current.children
            actions = current.actions
            if not all(a in children for a in actions):
                return current
            candidates = [children[a] for a in actions]
            if len(children) > len(actions):
                legal = set(actions)
                candidates.extend(ch for a, ch in children.items() if a not in legal)
            current = argmax_uct(current.n, candidates, c)
            self._step(current)

    def expand(self, node: ActionNode) -> ActionNode:
        child = super().expand(node)
        if child is not node:
            self._step(child)
        return child

    def action_statistics(self, node: ActionNode) -> List[ActionStats]:
        out = []
        children = node.children
        seen = set()
        for a in node.actions:
            ch = children.get(a)
            if ch is not None and ch.n > 0:
                out.append(ActionStats(a, ch.n, ch.reward, ch.max_reward))
                seen.add(a)
        for a, ch in children.items():
            if a not in seen and ch.n > 0:
                out.append(ActionStats(a, ch.n, ch.reward, ch.max_reward))
        return out
