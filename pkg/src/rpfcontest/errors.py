"""Semantic exception hierarchy shared across the package."""


class ContestError(Exception):
    """Base error for this package."""


class DomainError(ContestError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class BudgetNotBindingError(ContestError):
    """The measure's total mass does not exceed the budget fraction k.

    Every participant can be awarded a prize, so no market-clearing cutoff
    exists.  Callers that want the degenerate "everyone wins" convention
    should use ``csf_eval`` instead of the cutoff solver.
    """


class UnsupportedOperationError(ContestError):
    """The distribution or family does not support the requested operation."""


class InputFormatError(ContestError, ValueError):
    """Malformed input file (CSV/JSON); message carries location info."""


class NumericalError(ContestError):
    """A numeric routine failed to converge (should be unreachable for
    inputs satisfying the documented preconditions)."""
