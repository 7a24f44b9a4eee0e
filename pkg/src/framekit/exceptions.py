"""Exception types raised by framekit."""


class FramekitError(Exception):
    """Base class for all framekit-specific errors."""


class FrameParseError(FramekitError, ValueError):
    """A frame or measurement file could not be parsed or failed validation."""


class InsufficientVectors(FramekitError, ValueError):
    """An operation needs more vectors than the frame provides (e.g. n < m)."""


class EnumerationCapExceeded(FramekitError, ValueError):
    """A combinatorial scan would exceed the configured enumeration cap."""


class SingularOperator(FramekitError, ValueError):
    """The frame operator is singular; the rows do not span the space."""


class InconsistentMeasurements(FramekitError, ValueError):
    """A measurement vector is not consistent with the range of the lifted map.

    Carries the least-squares residual that triggered the rejection.
    """

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class InconsistentSigns(FramekitError, ValueError):
    """Recovered products contradict each other (no real signal realizes them)."""


class BudgetExhausted(FramekitError, RuntimeError):
    """A randomized search ran out of trials before meeting its goal."""
