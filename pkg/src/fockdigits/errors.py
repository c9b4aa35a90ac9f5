"""Exception types shared by every module of the package."""


class FockError(Exception):
    """Base class for all errors raised by fockdigits."""


class OutOfRange(FockError, ValueError):
    pass


class InvalidDigit(FockError, ValueError):
    pass


class Overflow(FockError, OverflowError):
    pass


class DimMismatch(FockError, ValueError):
    pass


class DimTooLarge(FockError, ValueError):
    pass


class BadK(FockError, ValueError):
    pass


class NumericalDrift(FockError, ArithmeticError):
    """A residue-formula evaluation landed too far from an integer (or real)."""


class SlotOutOfRange(FockError, IndexError):
    pass


class GuardViolation(FockError, RuntimeError):
    """A truncated-infinite register produced a nonzero digit in a guard slot."""


class ShiftOutOfRange(FockError, ValueError):
    pass


class QuadratureUnderResolved(FockError, ValueError):
    pass


class AllSummandsVanish(FockError, AssertionError):
    """No borrow-chain summand acts on a state it should act on (bug signal)."""


class MultipleSummands(FockError, AssertionError):
    pass


BadDigit = InvalidDigit
