"""Exception types shared across the package."""


class AltPathError(Exception):
    """Base class for all package errors."""


class LoopEdge(AltPathError):
    pass


class TwoCycle(AltPathError):
    pass


class DuplicateEdge(AltPathError):
    pass


class BadParams(AltPathError):
    pass


class TooLarge(AltPathError):
    pass


class EmptyGraph(AltPathError):
    pass


class FormatError(AltPathError):
    pass


class OddOrder(AltPathError):
    pass


class TooShort(AltPathError):
    pass


class BadPivot(AltPathError):
    pass


class BudgetExceeded(AltPathError):
    pass


class NoRespectablePath(AltPathError):
    pass


class BadParts(AltPathError):
    pass


class NotOnCycle(AltPathError):
    pass


class VacuousParams(AltPathError):
    pass


class IoFailure(AltPathError):
    pass


class DebugCheckFailure(AltPathError):
    """A debug-mode soundness assertion failed; always a bug, never an input error."""
