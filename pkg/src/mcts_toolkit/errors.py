"""Exception hierarchy shared by the MDP contract, the solvers and the bench harness."""


class ContractViolation(Exception):
    """A caller broke a precondition of the MDP or solver contract."""


class IllegalActionError(ContractViolation):
    """``transition`` was asked to apply an action that is not legal in the state."""

    def __init__(self, state, action):
        super().__init__(f"action {action!r} is not legal in state {state!r}")
        self.state = state
        self.action = action


class ReplayDivergence(Exception):
    """Replaying a stored action chain hit an action that is illegal in the sampled state."""


class NoDecisionError(Exception):
    """``best_action`` was requested on a root without any expanded child."""


class ConfigError(ValueError):
    """Invalid solver, domain or benchmark configuration."""


class DivergenceError(RuntimeError):
    """Value iteration did not converge within its iteration cap."""
