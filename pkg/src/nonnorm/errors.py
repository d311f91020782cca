"""Exception hierarchy shared by every module."""


class NonNormError(Exception):
    """Base class for all package errors."""


class ArgumentError(NonNormError, ValueError):
    pass


class RamifiedPrimeError(ArgumentError):
    """The prime ramifies in the base ring, so the unramified machinery does not apply."""


class BaseOverlapError(ArgumentError):
    """The modulus shares ramification with the base field."""


class BudgetError(ArgumentError):
    pass


class NoCertificate(NonNormError):
    """A verification route did not produce a certificate.

    This is an expected, negative outcome; ``reason`` is human readable.
    """

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class NoSubextension(NoCertificate):
    """The requested degree does not occur as a cyclic subextension."""


class SearchExhaustedError(NonNormError):
    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


class UncertifiedError(NonNormError):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class DegeneratePeriodError(NonNormError):
    """Orbit values collide, so the period is not a primitive element."""


class ConsistencyError(NonNormError, ArithmeticError):
    """An exact computation contradicted the underlying theory."""
