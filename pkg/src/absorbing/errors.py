"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Matrix or grid shapes do not fit together."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class InvariantViolation(RuntimeError):
    """A result contradicts a proven property (signals a solver bug)."""


class NotCertified(RuntimeError):
    """A limit value could not be certified; carries the partial result."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
