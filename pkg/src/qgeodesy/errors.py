"""Exception hierarchy shared by every module of the package."""


class GeometryError(ValueError):
    """Base class for all domain errors raised by qgeodesy."""


class ZeroVector(GeometryError):
    pass


class DimensionTooSmall(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


class NotNormalized(GeometryError):
    pass


class AntipodalStates(GeometryError):
    """Endpoints are orthogonal; the connecting geodesic is not unique."""


class IdenticalRays(GeometryError):
    """Endpoints describe the same physical state."""


class ParamOutOfRange(GeometryError):
    pass


class IndexOutOfRange(GeometryError):
    pass


class CurveTooCoarse(GeometryError):
    pass


class CurveTooShort(GeometryError):
    pass


class SamplesTooFew(CurveTooShort):
    pass


class NonPositiveEnergy(GeometryError):
    pass


class NotHermitian(GeometryError):
    pass


class GeneratorMismatch(GeometryError):
    """The supplied Hamiltonian does not appear to generate the curve."""


class DegenerateCurve(GeometryError):
    """The curve does not move in ray space, so ratios are undefined."""


class OrthogonalEndpoints(GeometryError):
    pass
