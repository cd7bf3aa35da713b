"""Error taxonomy shared by every module of the package."""


class KLRError(ValueError):
    """Base class of all domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# datum validation
class MalformedDatum(KLRError):
    pass


class OddDiagonal(KLRError):
    pass


class PositiveOffDiagonal(KLRError):
    pass


class NotSymmetrizable(KLRError):
    pass


class BadOrientation(KLRError):
    pass


# arithmetic
class InvalidArg(KLRError):
    pass


class NotInvertibleLeading(KLRError):
    pass


class NotDivisible(KLRError):
    pass


class WeightMismatch(KLRError):
    pass


class InternalDivisionFailure(KLRError):
    """A divided difference left a remainder. Always an implementation bug."""


# algebra
class PositionOutOfRange(KLRError):
    pass


class ImaginaryDividedPower(KLRError):
    pass


class NotIdempotent(KLRError):
    """A divided idempotent failed e*e == e. Always an implementation bug."""


# modules
class RealIndex(KLRError):
    """An imaginary index was required."""


class ImaginaryIndex(KLRError):
    """A real index was required."""


class GuardExceeded(KLRError):
    pass


class ModuleRelationFailure(KLRError):
    pass


# quantum group
class RealIndexRequired(KLRError):
    pass


class BadPair(KLRError):
    pass


# command line
class UnknownSuite(KLRError):
    pass


class ConfigError(KLRError):
    pass
