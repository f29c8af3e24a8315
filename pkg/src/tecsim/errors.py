"""Shared exception types."""


class CapacityError(ValueError):
    """A requested object exceeds a configured size cap."""


class SelfCheckError(RuntimeError):
    """An internal invariant check failed during a self-checking run."""
