"""Exception types shared across the package.

UsageError covers bad arguments and malformed inputs (CLI exit 1);
ConvergenceError covers iteration caps in the iterative solvers
(CLI exit 2).
"""


class UsageError(ValueError):
    """Bad parameters, dimension mismatches, malformed files."""


class DegenerateInputError(UsageError):
    """Input is structurally unusable, e.g. a zero column where a
    direction is required. Message names the offending index."""


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap before converging.

    The best iterate reached is attached when available.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class MembershipError(ValueError):
    """A point was on the wrong side of a cone membership requirement
    (inside when outside was required, or vice versa)."""


class GenerationError(RuntimeError):
    """Instance generation exhausted its resampling budget."""


class CalibrationError(RuntimeError):
    """No admissible constant fits the Monte Carlo estimates."""
