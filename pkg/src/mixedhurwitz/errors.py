"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: DomainError -> 2, ResourceLimitError -> 3,
verification failures -> 1.
"""


class DomainError(ValueError):
    """Input violates a documented precondition (bad spec, size mismatch, ...)."""


class ResourceLimitError(RuntimeError):
    """Request exceeds a configured resource bound (oracle degree, truncation, ...)."""


class WindowError(DomainError):
    """Coefficient requested outside the valid truncation window of a series."""
