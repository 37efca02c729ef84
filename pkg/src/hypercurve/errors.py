"""Exception hierarchy shared by all hypercurve modules."""


class HypercurveError(Exception):
    """Base class for every error raised by this package."""


class NonInvertibleError(HypercurveError):
    """Division or inversion attempted on a zero divisor (or zero)."""


class NotComparableError(HypercurveError):
    """Two hyperbolic numbers are incomparable under the partial order."""


class ReversedBoundsError(HypercurveError):
    """Interval endpoints given in decreasing order."""


class EndpointMismatchError(HypercurveError):
    """Partition or reparametrization endpoints do not match the interval."""


class NotChainError(HypercurveError):
    """Consecutive partition points are not strictly increasing."""


class StepDegenerateError(HypercurveError):
    """A partition step lies on the zero-divisor boundary of the cone."""


class OutOfDomainError(HypercurveError):
    """Parameter outside the interval a path or function is defined on."""


class NotDifferentiableError(HypercurveError):
    """Finite-difference derivative estimates failed to stabilize."""


class QuadratureFailureError(HypercurveError):
    """Adaptive quadrature could not reach the requested tolerance."""


class NotMonotoneError(HypercurveError):
    """A reparametrization map is not componentwise nondecreasing."""


class ZeroDivisorValueError(HypercurveError):
    """A reparametrization takes zero-divisor values on its domain."""


class PrimitiveMismatchError(HypercurveError):
    """Claimed primitive fails the finite-difference derivative check."""


class UnboundVariableError(HypercurveError):
    """Expression evaluation hit a variable with no binding."""


class UnknownSuiteError(HypercurveError):
    """Requested property-check suite name is not registered."""


class JobError(HypercurveError):
    """Job file is malformed: schema violation or undefined reference."""
