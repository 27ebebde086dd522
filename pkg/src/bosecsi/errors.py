"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """A precondition on an argument does not hold."""


class InvariantViolation(ValueError):
    """A constructed value fails one of its type invariants.

    ``invariant`` names the failed check (e.g. ``"trace"``).
    """

    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class NumericalFailure(ArithmeticError):
    """An iterative routine did not converge or an internal identity check failed."""
