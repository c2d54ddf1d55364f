"""Exception types raised across the package."""


class CardGameError(Exception):
    """Base class for every error raised by :mod:`qcardgame`."""


class InvalidArity(CardGameError, ValueError):
    pass


class InvalidBit(CardGameError, ValueError):
    pass


class QubitIndexOutOfRange(CardGameError, IndexError):
    pass


class NonUnitaryGate(CardGameError, ValueError):
    pass


class UnnormalizedState(CardGameError, ValueError):
    pass


class DimensionMismatch(CardGameError, ValueError):
    pass


class OracleAlreadyConsumed(CardGameError, RuntimeError):
    """The oracle's single query has already been spent."""


class InvalidDensityMatrix(CardGameError, ValueError):
    pass


class AmbiguousRow(CardGameError, ValueError):
    """Row with all bits equal: no minority pattern to refuse on."""


class SlotOutOfRange(CardGameError, IndexError):
    pass


class EmptyRun(CardGameError, ValueError):
    pass
