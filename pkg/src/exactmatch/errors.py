"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input (bad edge, non-perfect matching, ...)."""


class BudgetExceeded(RuntimeError):
    """An enumeration or search cap was hit before an answer was proven."""


class NegativeCycleError(InputError):
    """A reweighting precondition failed: the digraph has a negative cycle."""
