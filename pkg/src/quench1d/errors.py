"""Exception types shared across the package."""


class QuenchToolkitError(Exception):
    """Base class for all toolkit errors."""


class InvalidGridError(QuenchToolkitError, ValueError):
    """Grid bounds or point count are unusable."""


class InvalidParamsError(QuenchToolkitError, ValueError):
    """Physical parameters violate a precondition."""


class InvalidTimeError(QuenchToolkitError, ValueError):
    """Operation is not defined at the requested time."""


class UnsupportedLevelError(QuenchToolkitError, ValueError):
    """Initial level not supported by this operation."""


class UnsupportedEnsembleError(QuenchToolkitError, ValueError):
    """Classical ensemble lacks the structure this operation needs."""


class CutoffTooSmallError(QuenchToolkitError, RuntimeError):
    """Momentum cutoff cannot certify the requested accuracy."""


class QuadratureError(QuenchToolkitError, RuntimeError):
    """Adaptive quadrature exhausted its budget before converging."""
