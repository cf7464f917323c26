"""Exception types raised by ctcsim."""


class CTCError(Exception):
    """Base class for simulation failures that are not plain argument errors."""


class InfeasibleFixedPointError(CTCError):
    """The consistency condition has no solution inside the Bloch ball.

    Cannot happen for a CPTP map; seeing it means the map was built wrong.
    """


class ConvergenceError(CTCError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class UnsupportedAmbiguityError(CTCError):
    """Solution family of dimension two or more; no selection rule applies."""


class ZeroPostselectionError(CTCError):
    """The post-selected Bell outcome has (numerically) zero probability."""
