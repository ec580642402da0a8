"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument violates a documented precondition."""


class AccuracyError(RuntimeError):
    """A numerical routine could not reach the requested tolerance.

    Carries the best available estimate and its error bound so callers can
    decide whether the degraded result is still usable.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(f"{message} (estimate={estimate!r}, error_bound={error_bound!r})")
        self.estimate = estimate
        self.error_bound = error_bound


class InternalError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


def require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)
