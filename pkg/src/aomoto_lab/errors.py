"""Exception types shared across the package.

Domain failures raise one of these; the CLI maps them to exit code 1,
while malformed configuration raises ConfigError and maps to exit code 2.
"""


class AomotoLabError(Exception):
    """Base class for all domain errors raised by this package."""


class ZeroKappa(AomotoLabError):
    """Specialization at kappa = 0 was requested."""


class PoleAtKappa(AomotoLabError):
    """A rational function in kappa was evaluated at a pole."""


class ExhaustedRetries(AomotoLabError):
    """Random sampling failed to find an admissible point within the retry budget."""


class MissingColoring(AomotoLabError):
    """An operation needing a variable coloring got an arrangement without one."""


class OnHyperplane(AomotoLabError):
    """A point to be used for evaluation lies on one of the arrangement hyperplanes."""


class OnDiagonalSlice(AomotoLabError):
    """A paired point (x, y) satisfies F_q(x) = F_q(y) for a compared coordinate q."""


class NotInSpan(AomotoLabError):
    """A top form could not be written in the logarithmic monomial basis."""


class BasisMismatch(AomotoLabError):
    """Vector coordinates do not match the expected basis ordering or length."""


class UnsupportedAlgebra(AomotoLabError):
    """The requested operation is only implemented for sl2."""


class LevelViolation(AomotoLabError):
    """A highest weight violates the level bound of the requested fusion level."""


class DuplicatePoints(AomotoLabError):
    """Marked points on the line must be pairwise distinct."""


# the same failure seen from the ODE side keeps its older name as an alias
CollidingPoints = DuplicatePoints


class WeightMismatch(AomotoLabError):
    """The simple-root decomposition does not match the prescribed weights."""


class StepUnderflow(AomotoLabError):
    """Path transport would need steps below the keep-out radius near a puncture."""


class BranchCut(AomotoLabError):
    """A sample point lies on the branch cut of a chosen principal power."""


class PrecisionLoss(AomotoLabError):
    """A numeric result lost too much precision to be trusted at the working tolerance."""


class ConfigError(AomotoLabError):
    """A job configuration failed validation; message points at the offending field."""
