"""Exception types shared across the library."""


class AlgebraError(Exception):
    """Base class for all library errors."""


class DomainError(AlgebraError):
    """An argument lies outside an operation's domain (zero polynomial, bad modulus, ...)."""


class DimensionError(AlgebraError):
    """Objects from incompatible ambient rings were mixed."""


class PreconditionError(AlgebraError):
    """A stated hypothesis of the requested computation does not hold."""


class InconsistencyError(AlgebraError):
    """An internal cross-check failed: the inputs contradict each other."""


class CapExceeded(AlgebraError):
    """A configured resource cap was reached before the computation finished.

    Carries whatever partial counters were available at the point of failure.
    """

    def __init__(self, message, *, stats=None, details=None):
        super().__init__(message)
        self.stats = stats
        self.details = details if details is not None else {}


class GenerationError(AlgebraError):
    """Rejection sampling exhausted its retry budget."""


class ParseError(AlgebraError):
    """System text could not be parsed; carries the offending position."""

    def __init__(self, message, line, col):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
