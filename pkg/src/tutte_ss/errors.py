"""Exception types raised across the package."""


class TutteError(Exception):
    """Base class for all package errors."""


class NotDivisible(TutteError, ArithmeticError):
    pass


class NotLaurent(TutteError, ArithmeticError):
    pass


class DomainError(TutteError, ValueError):
    pass


class InvalidAlphabet(TutteError, ValueError):
    pass


class LevelOutOfRange(TutteError, ValueError):
    pass


class ResourceCap(TutteError):
    """A symbolic computation would exceed the configured term budget."""


class TooManyEdges(TutteError, ValueError):
    pass


class TooLarge(TutteError, ValueError):
    pass


class DisconnectedInput(TutteError, ValueError):
    pass


class InvariantViolation(TutteError, AssertionError):
    """Two independent computations of the same quantity disagree."""
