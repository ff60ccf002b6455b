"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an argument violates an operation's preconditions."""


class CapacityError(RuntimeError):
    """Raised when an exhaustive search would exceed its safety cap."""


class ConsistencyError(RuntimeError):
    """Raised when a numeric cross-check fails on supposedly valid input."""
