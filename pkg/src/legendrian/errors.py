"""Exception hierarchy.  The CLI maps these to exit codes 2 and 3."""


class LegendrianError(Exception):
    pass


class PreconditionError(LegendrianError, ValueError):
    """An input violates an operation's precondition (exit code 2)."""


class ComputationError(LegendrianError, ArithmeticError):
    """An exact computation could not be completed or failed a check (exit code 3)."""
