"""Exception types raised by the engine."""


class SunHomError(Exception):
    """Base class for all engine errors."""


class InvalidOrderError(SunHomError, ValueError):
    """Ring order N must be a positive integer."""


class OrderMismatchError(SunHomError, ValueError):
    """Binary operation on elements of different orders."""


class TransitionError(SunHomError, ValueError):
    """Malformed transition (length mismatch, negative occupations, unequal totals, n = 0)."""


class NotCoincidentError(SunHomError, ValueError):
    """The output is not the coincident state |n/N>^N."""


class ResourceGuardError(SunHomError, RuntimeError):
    """A configured size limit would be exceeded."""


class BudgetExceededError(SunHomError, RuntimeError):
    """An enumeration budget was exhausted."""


class DegenerateEstimateError(SunHomError, ValueError):
    """The JKN shape parameter is undefined for these margins."""


class VerificationError(SunHomError, AssertionError):
    """Two independent routes disagree."""
