"""Exception types shared across the library.

Unwritable output paths are reported with the builtin OSError; everything
algorithm- or contract-level lives here.
"""


class NavsimError(Exception):
    """Base class for all library-specific failures."""


class InvalidInput(NavsimError, ValueError):
    """A precondition on an argument was violated."""


class NotPositiveDefinite(NavsimError):
    """Cholesky pivot failed even after the one-shot jitter retry."""


class NoConvergence(NavsimError):
    """An iterative solver hit its iteration cap before its tolerance.

    ``best`` carries the last iterate reached, when one exists.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class SingularObservation(NavsimError):
    """Sensor model evaluated at a geometrically degenerate configuration."""


class SingularGeometry(NavsimError):
    """Control law evaluated at a singular path geometry (1 - kappa*e ~ 0)."""


class NumericalFailure(NavsimError):
    """A matrix that must be invertible for the update is numerically singular."""


class DegenerateBelief(NavsimError):
    """All probability mass vanished (weights or grid collapsed to zero)."""


class OutOfBounds(NavsimError):
    """A cell index or pose fell outside the grid."""


class NoPath(NavsimError):
    """The planner exhausted its search without connecting to the goal."""


class LocalMinimum(NavsimError):
    """Potential-field descent stalled or oscillated before the goal."""


class UnknownDemo(NavsimError):
    """Requested demo name is not in the registry."""


class EmptyTrace(NavsimError):
    """A plot or trace operation received no data."""
