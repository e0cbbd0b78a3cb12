"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class ResourceExhaustedError(RuntimeError):
    """Raised when a search hits its time budget.

    A timeout is never reported as "no embedding exists"; callers that
    want a three-valued outcome catch this exception.
    """
