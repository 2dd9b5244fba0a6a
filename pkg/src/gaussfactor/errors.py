class GaussFactorError(Exception):
    """Base class for all errors raised by gaussfactor."""


class InvalidArgumentError(GaussFactorError, ValueError):
    """An argument violates an operation's precondition."""


class RangeError(GaussFactorError, ValueError):
    """An operand exceeds the supported exact-arithmetic range."""
