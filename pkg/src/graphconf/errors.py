"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when user-supplied data is malformed or inconsistent."""


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed a configured size guard.

    Carries a human-readable description of the size that was requested
    and the cap that stopped it, so callers can decide whether to retry
    with a bigger guard.
    """

    def __init__(self, message, requested=None, limit=None):
        super().__init__(message)
        self.requested = requested
        self.limit = limit


class SplittingError(RuntimeError):
    """Raised when a complex fails to split into degree-homogeneous summands.

    The offending summand is attached so the caller can inspect it.
    """

    def __init__(self, message, summand=None):
        super().__init__(message)
        self.summand = summand
