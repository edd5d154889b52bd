"""Exact dynamic programming for small, explicitly enumerated MDPs.

Serves as ground truth for the sampling-based solvers: value iteration gives
the optimal values and greedy policy, and :func:`random_policy_value` gives
the expected return of the solvers' uniform random rollout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Mapping, Sequence, Tuple

from .errors import ConfigError, ContractViolation, DivergenceError
from .domains.gridworld import ACTIONS, GridWorldConfig, GridWorldState, Move, PERPENDICULAR

# (next_state, probability, reward of arriving in next_state)
Outcome = Tuple[Hashable, float, float]


@dataclass
class TransitionModel:
    """Explicit ``p(s' | s, a)`` with per-transition rewards.

    Terminal states have no actions and no outgoing mass.
    """

    states: List[Hashable]
    actions: Dict[Hashable, Tuple[Any, ...]]
    outcomes: Dict[Tuple[Hashable, Any], List[Outcome]]
    terminal: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        self.validate()

    def validate(self, tol: float = 1e-9) -> None:
        known = set(self.states)
        for s in self.states:
            acts = self.actions.get(s, ())
            if s in self.terminal and acts:
                raise ContractViolation(f"terminal state {s!r} has actions")
            for a in acts:
                outs = self.outcomes.get((s, a))
                if not outs:
                    raise ContractViolation(f"no outcomes for {(s, a)!r}")
                total = sum(p for _, p, _ in outs)
                if abs(total - 1.0) > tol:
                    raise ContractViolation(f"p(.|{s!r},{a!r}) sums to {total}")
                for s2, p, _ in outs:
                    if s2 not in known:
                        raise ContractViolation(f"unknown successor {s2!r}")
                    if not 0.0 <= p <= 1.0:
                        raise ContractViolation(f"probability {p} out of range")

    def expected_reward(self, s, a) -> float:
        """``r(s, a) = sum_s' p(s'|s,a) * reward(s, a, s')``."""
        return sum(p * r for _, p, r in self.outcomes[(s, a)])


@dataclass
class ValueFunction:
    values: Dict[Hashable, float]
    policy: Dict[Hashable, Any]
    # all actions within the tie tolerance of the best Q-value
    greedy: Dict[Hashable, Tuple[Any, ...]]
    sweeps: int

    def __getitem__(self, s):
        return self.values[s]


def q_value(model: TransitionModel, values: Mapping, s, a, gamma: float) -> float:
    """``r(s, a) + gamma * sum_s' p(s'|s,a) V(s')`` with ``V = 0`` on terminal states."""
    if a not in model.actions.get(s, ()):
        raise ContractViolation(f"action {a!r} not available in {s!r}")
    total = 0.0
    terminal = model.terminal
    for s2, p, r in model.outcomes[(s, a)]:
        total += p * r
        if s2 not in terminal:
            total += gamma * p * values[s2]
    return total


def _check_gamma(gamma: float) -> None:
    if not 0.0 <= gamma <= 1.0:
        raise ConfigError(f"discount must lie in [0, 1], got {gamma}")


def value_iteration(model: TransitionModel, gamma: float, epsilon: float = 1e-9,
                    max_iterations: int = 100_000, tie_tolerance: float = 1e-9) -> ValueFunction:
    """Synchronous value iteration until the max-norm update falls below ``epsilon``.

    Raises:
        DivergenceError: if ``max_iterations`` sweeps do not converge.
    """
    _check_gamma(gamma)
    if epsilon <= 0:
        raise ConfigError("epsilon must be positive")
    values = {s: 0.0 for s in model.states}
    active = [s for s in model.states if model.actions.get(s)]
    sweeps = 0
    while True:
        sweeps += 1
        if sweeps > max_iterations:
            raise DivergenceError(f"value iteration did not converge in {max_iterations} sweeps")
        new = dict(values)
        delta = 0.0
        for s in active:
            best = max(q_value(model, values, s, a, gamma) for a in model.actions[s])
            d = abs(best - values[s])
            if d > delta:
                delta = d
            new[s] = best
        values = new
        if delta < epsilon:
            break
    policy, greedy = {}, {}
    for s in active:
        qs = [(a, q_value(model, values, s, a, gamma)) for a in model.actions[s]]
        top = max(q for _, q in qs)
        tied = tuple(a for a, q in qs if q >= top - tie_tolerance * max(1.0, abs(top)))
        greedy[s] = tied
        policy[s] = tied[0]
    return ValueFunction(values, policy, greedy, sweeps)


def random_policy_value(model: TransitionModel, gamma: float, depth_limit: int = 1000,
                        epsilon: float = 1e-12) -> Dict[Hashable, float]:
    """Expected return of a uniform-random rollout started at each non-terminal state.

    Uses the rollout's own discounting: a terminal reached on step ``k`` is
    worth ``gamma**k * reward``, and a rollout still running after
    ``depth_limit + 1`` steps is cut off with the reward of the state it
    reached, discounted once more. Iterates the finite-horizon recursion,
    stopping early once the values stop changing.
    """
    _check_gamma(gamma)
    terminal = model.terminal
    active = [s for s in model.states if model.actions.get(s)]
    values = {s: 0.0 for s in model.states}

    def sweep(prev, truncate: bool) -> Dict[Hashable, float]:
        out = dict(prev)
        for s in active:
            acts = model.actions[s]
            total = 0.0
            for a in acts:
                for s2, p, r in model.outcomes[(s, a)]:
                    if s2 in terminal or not model.actions.get(s2):
                        total += p * gamma * r
                    elif truncate:
                        total += p * gamma * gamma * r
                    else:
                        total += p * gamma * prev[s2]
            out[s] = total / len(acts)
        return out

    values = sweep(values, truncate=True)
    for _ in range(depth_limit):
        new = sweep(values, truncate=False)
        delta = max((abs(new[s] - values[s]) for s in active), default=0.0)
        values = new
        if delta < epsilon:
            break
    return values


def gridworld_model(config: GridWorldConfig = None) -> TransitionModel:
    """Explicit transition model of a grid layout, built from its geometry and noise."""
    config = config or GridWorldConfig()
    w, h = config.width, config.height
    rewards = {GridWorldState(*c): float(r) for c, r in config.terminals.items()}
    states = [GridWorldState(x, y) for y in range(h) for x in range(w)]

    def move(s, m: Move):
        nx, ny = s.x + m.value[0], s.y + m.value[1]
        return GridWorldState(nx, ny) if 0 <= nx < w and 0 <= ny < h else s

    actions, outcomes = {}, {}
    for s in states:
        if s in rewards:
            actions[s] = ()
            continue
        actions[s] = ACTIONS
        for a in ACTIONS:
            dist: Dict[GridWorldState, float] = {}
            branches = [(a, 1.0 - config.noise)] + [(p, config.noise / 2) for p in PERPENDICULAR[a]]
            for m, p in branches:
                if p > 0:
                    s2 = move(s, m)
                    dist[s2] = dist.get(s2, 0.0) + p
            outcomes[(s, a)] = [(s2, p, rewards.get(s2, 0.0)) for s2, p in dist.items()]
    return TransitionModel(states, actions, outcomes, frozenset(rewards))


def format_gridworld(config: GridWorldConfig, vf: ValueFunction) -> str:
    """Render values and greedy actions as text, top row (highest y) first."""
    lines = []
    for y in reversed(range(config.height)):
        cells = []
        for x in range(config.width):
            s = GridWorldState(x, y)
            if s in vf.greedy:
                arrows = "".join(m.symbol for m in vf.greedy[s])
                cells.append(f"{vf.values[s]:8.4f} {arrows:<4}")
            else:
                cells.append(f"{'[' + format(config.terminals[(x, y)], 'g') + ']':>8} {'':<4}")
        lines.append(" ".join(cells))
    return "\n".join(lines)


def policy_rows(config: GridWorldConfig, vf: ValueFunction) -> Sequence[Tuple]:
    """One row per cell: x, y, value, greedy policy action, all tied actions."""
    rows = []
    for y in range(config.height):
        for x in range(config.width):
            s = GridWorldState(x, y)
            if s in vf.greedy:
                rows.append((x, y, vf.values[s], vf.policy[s].name.lower(),
                             "|".join(m.name.lower() for m in vf.greedy[s])))
            else:
                rows.append((x, y, config.terminals[(x, y)], "", ""))
    return rows
