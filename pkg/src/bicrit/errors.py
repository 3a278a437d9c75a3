"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class UnsupportedParametersError(DomainError):
    """The requested (d, k) admits no index-divisor-free prime."""


class ResourceBudgetError(RuntimeError):
    """A symbolic computation exceeded its configured size budget."""
