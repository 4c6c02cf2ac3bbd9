"""Exception hierarchy.

Errors fall into three families that the CLI maps to exit codes:
``InputError`` (exit 2), ``BoundError`` (exit 3) and everything else,
including ``InvariantError`` (exit 1).
"""


class GroupRingError(Exception):
    """Base class for all library errors."""


class InputError(GroupRingError, ValueError):
    pass


class BoundError(GroupRingError):
    pass


class InvariantError(GroupRingError, AssertionError):
    """An internal consistency check failed. Never expected; always loud."""


# group construction
class NotLatinSquare(InputError):
    pass


class NotAssociative(InputError):
    pass


class NoIdentity(InputError):
    pass


class UnknownName(InputError):
    pass


class ClosureTooLarge(BoundError):
    pass


class OrderBoundExceeded(BoundError):
    pass


# subgroup structure
class NotASubgroup(InputError):
    pass


class NotNormal(InputError):
    pass


class NotNormalInH(NotNormal):
    pass


class NotAbelian(InputError):
    pass


# arithmetic
class DivisionByZero(GroupRingError, ZeroDivisionError):
    pass


class BadGaloisIndex(InputError):
    pass


class BadIndex(InputError):
    pass


class RingMismatch(InputError, TypeError):
    pass


class NotIdempotent(InputError):
    pass


class NotAUnit(InputError):
    pass


# idempotents / components
class NotStrongPair(InputError):
    pass


class IncompletePCI(GroupRingError):
    pass


# units
class BadParameters(InputError):
    pass


class EvenOrder(InputError):
    pass


class NotSquareZero(InputError):
    pass


class TrivialBicyclic(InputError):
    pass


class PreconditionViolation(InputError):
    pass


class InvalidSeries(InputError):
    pass


class NotEligible(InputError):
    pass
