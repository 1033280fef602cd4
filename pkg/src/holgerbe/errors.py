"""Exception and warning types."""


class GerbeError(Exception):
    """Base class for all errors raised by holgerbe."""


class DomainError(GerbeError, ValueError):
    """Input outside the domain of an operation (zero ray, cut point, bad shape)."""


class SingularMatrixError(DomainError):
    pass


class ConditioningError(GerbeError):
    """Spectrum too close to an integration contour or to a sector boundary."""


class BoundaryEigenvalueError(ConditioningError):
    pass


class QuadratureError(GerbeError):
    """Contour quadrature did not converge or did not round to an integer."""


class SpanMismatchError(GerbeError, ValueError):
    """Two top wedges do not live over the same subspace."""


class FiberMismatchError(GerbeError, ValueError):
    pass


class CertificationError(GerbeError):
    """A sampled certificate (cover, neighborhood, section, frame) failed."""


class SamplingError(GerbeError):
    """Phase continuation saw a jump larger than the step guard."""


class DataIntegrityError(GerbeError):
    """Loaded or supplied data violates a structural invariant."""


class ConditioningWarning(UserWarning):
    pass


class RoundingError(GerbeError):
    """An integer cochain value is too far from an integer."""


class InputError(GerbeError, ValueError):
    """A file or argument could not be parsed into the expected schema."""
