"""Exception hierarchy.

``ValidationError`` covers bad inputs (CLI exit code 2); ``NumericalError``
covers solver failures on valid inputs (CLI exit code 1).
"""


class WeakChanError(Exception):
    pass


class ValidationError(WeakChanError, ValueError):
    pass


class NumericalError(WeakChanError, RuntimeError):
    pass


class NotHermitian(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidSpec(ValidationError):
    pass


class InvalidTolerance(ValidationError):
    pass


class InvalidArgs(ValidationError):
    pass


class InvalidDimension(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class RateTooLowForTwoCodewords(ValidationError):
    pass


class NoConvergence(NumericalError):
    pass


class QuadratureNoConvergence(NumericalError):
    def __init__(self, message, previous=None, last=None):
        super().__init__(message)
        self.previous = previous
        self.last = last


class ZeroDensity(NumericalError):
    pass
