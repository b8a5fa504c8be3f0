"""Exception types shared across the package."""


class ChshlabError(ValueError):
    """Base class for all input-validation failures raised by this package."""


class DomainError(ChshlabError):
    """A scalar argument lies outside its documented domain."""


class NotHermitianError(ChshlabError):
    """Matrix fails the Hermitian symmetry tolerance."""


class NotSymmetricError(ChshlabError):
    """Real matrix fails the symmetry tolerance."""


class NotUnitError(ChshlabError):
    """Vector is not unit-norm within tolerance."""


class StateError(ChshlabError):
    """State object violates its invariants (normalization, PSD, trace)."""


class NoConvergenceError(RuntimeError):
    """An iterative kernel exhausted its iteration budget."""
