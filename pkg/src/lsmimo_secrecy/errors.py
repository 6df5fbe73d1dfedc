"""Exception types raised by the library.

All of them derive from ``ValueError`` or ``RuntimeError`` so callers that
only care about the broad category can catch those instead.
"""


class ParameterError(ValueError):
    """A scenario parameter violates its domain.

    The offending field name is kept on ``field`` so the CLI can report it.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class InfeasibleSecrecyError(ValueError):
    """Raised when r_l >= 1, i.e. no relay power gives positive capacity."""

    def __init__(self, r_l, threshold=None):
        msg = f"secrecy infeasible: relative path loss r_l = {r_l:.6g} >= 1"
        if threshold is not None:
            msg += f" (relay antenna count must exceed {threshold:.3f})"
        super().__init__(msg)
        self.r_l = r_l
        self.threshold = threshold


class DegenerateSourceError(ValueError):
    """Source power is zero, so the capacity is identically zero."""


class DimensionMismatchError(ValueError):
    pass


class InsufficientSamplesError(ValueError):
    pass


class NoPositiveValueError(RuntimeError):
    """The objective was never positive at any probed point."""


class MaxIterationsError(RuntimeError):
    pass
