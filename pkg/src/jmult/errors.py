"""Exception types shared across the package."""


class JMultError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(JMultError, ValueError):
    """Malformed polynomial text. ``position`` is a 0-based column."""

    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class RingMismatchError(JMultError, ValueError):
    pass


class ExponentOverflowError(JMultError, OverflowError):
    pass


class NotEquigeneratedError(JMultError, ValueError):
    """Generators are not homogeneous of one common degree."""


class NonGenericError(JMultError, RuntimeError):
    """A random choice of general elements behaved non-generically.

    Carries the seed so the caller can resample.
    """

    def __init__(self, message, seed=None):
        self.seed = seed
        if seed is not None:
            message = f"{message} (seed={seed}; resample with another seed)"
        super().__init__(message)


class VerdictError(JMultError, ArithmeticError):
    """An identity that must hold exactly did not."""
