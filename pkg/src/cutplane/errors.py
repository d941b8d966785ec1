"""Exception hierarchy for cutplane."""


class CutplaneError(Exception):
    """Base class for all errors raised by this package."""


class DegreeCapError(CutplaneError, OverflowError):
    """A polynomial degree exceeds the cap, or a value overflowed at some degree."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class EnvelopeUndefinedError(CutplaneError, ValueError):
    """The highest Taylor coefficient is zero, so the growth envelope is undefined."""


class NoPlateauError(CutplaneError):
    """No plateau of sufficient length was found below the asymptotic onset."""

    def __init__(self, message, k_a=None):
        super().__init__(message)
        self.k_a = k_a


class BelowFirstTermError(CutplaneError, ValueError):
    """The energy bound is already exceeded by the first partial sum."""


class QuadratureError(CutplaneError):
    """An adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class DomainError(CutplaneError, ValueError):
    """An argument lies outside the domain of the operation."""
