"""Exception hierarchy shared by every module."""


class MeshPatternError(ValueError):
    pass


class NotAPermutation(MeshPatternError):
    pass


class BoxOutOfGrid(MeshPatternError):
    pass


class BoxNotShaded(MeshPatternError):
    pass


class EmptyPattern(MeshPatternError):
    pass


class CornerShaded(MeshPatternError):
    pass


class ParseError(MeshPatternError):
    pass


class InvalidOccurrence(MeshPatternError):
    pass


class NotAnOccurrence(MeshPatternError):
    pass


class NotComparable(MeshPatternError):
    pass


class NotACover(MeshPatternError):
    pass


class PreconditionFailed(MeshPatternError):
    pass


class BudgetExceeded(MeshPatternError):
    """Raised when an exhaustive computation would exceed its configured cap."""


class NotInGamma(MeshPatternError):
    pass


class NoZero(MeshPatternError):
    pass


class NotContained(MeshPatternError):
    pass


class TooLarge(MeshPatternError):
    pass
