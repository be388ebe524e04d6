"""Exception hierarchy shared by every module of the package."""


class SunadaError(Exception):
    """Base class for all errors raised by this package."""


# permutations and parsing

class MalformedCycle(SunadaError, ValueError):
    pass


class PointOutOfRange(SunadaError, ValueError):
    pass


class RepeatedPoint(SunadaError, ValueError):
    pass


class DegreeMismatch(SunadaError, ValueError):
    pass


# groups

class CapExceeded(SunadaError):
    pass


class IndexOutOfRange(SunadaError, IndexError):
    pass


class NotASubgroup(SunadaError, ValueError):
    pass


class SearchBudgetExceeded(SunadaError):
    pass


# transplantation

class NoInvertibleFound(SunadaError):
    pass


class NotInvariant(SunadaError, ValueError):
    pass


class RankDeficient(SunadaError):
    pass


class DeltaNotEquivariant(SunadaError, ValueError):
    pass


class NoConvergence(SunadaError):
    pass


# graphs

class IdentityInGeneratingSet(SunadaError, ValueError):
    pass


class NotSymmetric(SunadaError, ValueError):
    pass


class RegularityMismatch(SunadaError, ValueError):
    pass


class BasisMismatch(SunadaError, ValueError):
    pass


class TooLarge(SunadaError):
    pass
