"""Exception hierarchy.

Every error raised for invalid user input derives from :class:`QCohError`
(itself a :class:`ValueError`), and its message names the violated
invariant together with the offending magnitude.
"""


class QCohError(ValueError):
    """Base class for all invariant violations."""


class NotHermitian(QCohError):
    pass


class NotUnitTrace(QCohError):
    pass


class NotPositive(QCohError):
    pass


class NotSquare(QCohError):
    pass


class BlochNormExceeded(QCohError):
    pass


class DimensionMismatch(QCohError):
    pass


class LengthMismatch(DimensionMismatch):
    pass


class RankOutOfRange(QCohError):
    pass


class InvalidDistribution(QCohError):
    pass


class OutOfRange(QCohError):
    pass


class ProbabilityOutOfRange(OutOfRange):
    pass


class NotOrthonormal(QCohError):
    pass


class NotNormalized(QCohError):
    pass


class EmptyChain(QCohError):
    pass


class MaximallyMixedInput(QCohError):
    pass


class NotPure(QCohError):
    pass


class IncompleteChannel(QCohError):
    pass


class NonpositiveTemperature(QCohError):
    pass


class MalformedInput(QCohError):
    """Raised when a JSON document does not follow the shared matrix layout."""
