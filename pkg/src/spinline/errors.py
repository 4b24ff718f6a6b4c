"""Exception types raised by the spinline package."""


class SpinlineError(Exception):
    """Base class for all spinline-specific errors."""


class ChainLengthError(SpinlineError, ValueError):
    """Chain too short for the requested basis or coupling profile."""


class SizeMismatchError(SpinlineError, ValueError):
    """Inconsistent dimensions between chain, basis, state or amplitudes."""


class NormalizationError(SpinlineError, ValueError):
    """Sender state violates the unit-norm constraint.

    The offending deviation |norm - 1| is stored in ``deviation``.
    """

    def __init__(self, deviation, message=None):
        self.deviation = float(deviation)
        super().__init__(message or f"state norm deviates from 1 by {deviation:.3e}")


class NoArrivalError(SpinlineError):
    """No transfer maximum above the detection floor within the scanned window."""


class ConditioningError(SpinlineError):
    """An extraction step would divide by a vanishing amplitude."""


class ExtractionError(SpinlineError):
    """Probe outputs are insufficient to determine the full parameter set.

    ``undetermined`` lists the parameter parts that cannot be recovered,
    as tuples ``(kind, indices, part)`` with part in {"re", "im", "full"}.
    """

    def __init__(self, undetermined, message=None):
        self.undetermined = list(undetermined)
        super().__init__(
            message
            or f"incomplete probe set: {len(self.undetermined)} parameter parts undetermined"
        )


class InfeasibleTargetError(SpinlineError):
    """No control parameters reproduce the requested target state.

    Carries the best residual reached (``best_residual``) and the
    corresponding control vector (``best_controls``).
    """

    def __init__(self, best_residual, best_controls=None, message=None):
        self.best_residual = float(best_residual)
        self.best_controls = best_controls
        super().__init__(
            message or f"target infeasible: best residual {best_residual:.3e}"
        )
