"""Exception types raised across the package."""


class MubPolyError(ValueError):
    """Base class for all package errors."""


class NotPrime(MubPolyError):
    pass


class UnsupportedSize(MubPolyError):
    pass


class ZeroInverse(MubPolyError, ZeroDivisionError):
    pass


class EvenCharacteristic(MubPolyError):
    pass


class UnsupportedDimension(MubPolyError):
    pass


class ShapeMismatch(MubPolyError):
    pass


class BadDimension(MubPolyError):
    pass


class NonZeroRowSum(MubPolyError):
    pass


class BadDistribution(MubPolyError):
    pass


class BadExponent(MubPolyError):
    pass


class TooManyBases(MubPolyError):
    pass


class OutsidePolytope(MubPolyError):
    pass


class OffSpan(MubPolyError):
    pass


class RejectionBudgetExceeded(MubPolyError, RuntimeError):
    pass


class BadRadius(MubPolyError):
    pass


class BadRegion(MubPolyError):
    pass
