"""Exception hierarchy shared by all ipsupport modules."""


class IPSupportError(Exception):
    """Base class for every error raised by this package."""


class RankDeficient(IPSupportError, ValueError):
    """A matrix without full row rank reached an operation that requires it."""


class InconsistentSystem(IPSupportError, ValueError):
    """A linear system ``M x = rhs`` has no rational solution."""


class BudgetExceeded(IPSupportError, RuntimeError):
    """An exhaustive search would exceed its configured enumeration budget."""

    def __init__(self, message: str, size: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.size = size
        self.budget = budget


class NoNegativeEntry(IPSupportError, ValueError):
    """A lambda step was requested along a direction with no negative entry."""


class InfeasibleInput(IPSupportError, ValueError):
    """A supplied point violates ``A x = b`` or ``x >= 0``.

    ``row`` holds the first violated equality row, ``column`` the first
    negative coordinate; whichever does not apply is ``None``.
    """

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class DimensionError(IPSupportError, ValueError):
    """Inconsistent or invalid dimensions."""


class DomainError(IPSupportError, ValueError):
    """An argument lies outside the domain of a formula."""


class GenerationFailure(IPSupportError, RuntimeError):
    """A randomized generator gave up after its resampling limit."""


class ParseError(IPSupportError, ValueError):
    """An instance or solution file could not be parsed."""
