"""Exception hierarchy.

Everything a caller can provoke with physically meaningless input derives
from :class:`PhysicsDomainError`; the CLI maps that branch to exit code 3.
"""


class PhysicsDomainError(ValueError):
    """Base class for failures rooted in the physics, not in the caller's code."""


class DegenerateState(PhysicsDomainError):
    """Bloch radius (or an overlap the phase depends on) is numerically zero."""


class DegeneratePath(DegenerateState):
    """Eigenvalues of a sampled path cross, so eigenvector labels are ambiguous."""


class OverlapVanishes(DegenerateState):
    """<phi(0)|phi(t)> = 0 at some sample; the reference phase is undefined."""


class PathTooCoarse(PhysicsDomainError):
    """Adjacent samples are too far apart to track eigenvectors continuously."""


class StepSizeUnderflow(PhysicsDomainError):
    """Step halving did not reach the requested tolerance."""


class NotMonotone(PhysicsDomainError):
    """A bracket handed to an inversion is not monotone."""


class OutOfRange(PhysicsDomainError):
    """Target value is outside what the bracket can produce."""

    def __init__(self, message, attainable=None):
        super().__init__(message)
        self.attainable = attainable


class QuadratureMismatch(RuntimeError):
    """Analytic and numerical evaluations of the same integral disagree."""


class UnknownLine(KeyError):
    """Requested atomic line id is not in the catalog."""


class CatalogFormatError(ValueError):
    """Malformed catalog file; message carries the offending line number."""
