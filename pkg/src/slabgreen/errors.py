"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the physical or mathematical domain of an operation."""


class ConfigError(ValueError):
    """A run configuration failed validation. Carries the offending field path."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class QuadratureError(RuntimeError):
    """Adaptive integration could not reach the requested tolerance.

    The best available estimate and its error bound are attached so callers
    can still report a partial result.
    """

    def __init__(self, message, best_estimate, error_estimate):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
