"""Exception types raised across witnesskit."""


class WitnessKitError(Exception):
    """Base class for every error raised by this package."""


class ConvergenceFailure(WitnessKitError, RuntimeError):
    pass


class DimensionMismatch(WitnessKitError, ValueError):
    pass


class NotHermitian(WitnessKitError, ValueError):
    pass


class RankDeficient(WitnessKitError, ValueError):
    pass


class NotOrthonormal(WitnessKitError, ValueError):
    pass


class NotNormalized(WitnessKitError, ValueError):
    pass


class InvalidRank(WitnessKitError, ValueError):
    pass


class NonRealExpectation(WitnessKitError, ValueError):
    pass


class NotAState(WitnessKitError, ValueError):
    pass


class InvalidParams(WitnessKitError, ValueError):
    pass
