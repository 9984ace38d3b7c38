"""Exception types shared across the package."""


class PhasewaveError(Exception):
    """Base class for all library-specific failures."""


class ParameterError(PhasewaveError, ValueError):
    """A scalar parameter is out of range (nonpositive coefficient, bad shape, ...)."""


class DegeneracyError(PhasewaveError, ValueError):
    """A quantity that must stay nonzero vanished (zero jump, zero wavevector, ...)."""


class InconsistencyError(PhasewaveError, ValueError):
    """Jump conditions or internal cross-checks are violated beyond tolerance."""


class DomainError(PhasewaveError, ValueError):
    """Evaluation requested outside the admissible (elliptic, subsonic) domain."""


class NoRootError(PhasewaveError, RuntimeError):
    """No root of the Lopatinskii determinant was bracketed."""


class NoSolutionError(PhasewaveError, RuntimeError):
    """A nonlinear solve found no admissible solution inside the given brackets."""
