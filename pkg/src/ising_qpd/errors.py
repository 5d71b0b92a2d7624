class DomainError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class InternalConsistencyError(RuntimeError):
    """Two independent evaluation routes disagreed; indicates a bug, not bad input."""
