"""Exception types shared across the package."""


class ConprodError(Exception):
    """Base class for numerical failures raised by this package."""


class StripViolation(ConprodError):
    pass


class PoleProximity(ConprodError):
    pass


class QuadratureFailure(ConprodError):
    pass


class NonConvergence(QuadratureFailure):
    pass


class EnvelopeViolation(QuadratureFailure):
    pass


class DomainViolation(ConprodError):
    pass


class NegativeWeight(ConprodError):
    pass


class SeriesDivergence(ConprodError):
    pass


class GridMismatch(ConprodError):
    pass


class SizeOverflow(ConprodError):
    pass
