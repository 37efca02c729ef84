"""Bicomplex/hyperbolic calculus: idempotent arithmetic, the cone partial
order, bounded variation of product-type paths, and Riemann-Stieltjes
integration along rectifiable hyperbolic curves."""

from .errors import (
    EndpointMismatchError,
    HypercurveError,
    JobError,
    NonInvertibleError,
    NotChainError,
    NotComparableError,
    NotDifferentiableError,
    NotMonotoneError,
    OutOfDomainError,
    PrimitiveMismatchError,
    QuadratureFailureError,
    ReversedBoundsError,
    StepDegenerateError,
    UnboundVariableError,
    UnknownSuiteError,
    ZeroDivisorValueError,
)
from .expr import ParseError, differentiate, parse, to_string
from .expr import evaluate as evaluate_expr
from .expr import evaluate_component
from .integrate import (
    Integrand,
    IntegralResult,
    IntegrationConfig,
    Tag,
    ftc_eval,
    line_integral,
    line_integral_arclength,
    line_integral_smooth,
    ml_bound,
    reparametrize,
    rs_integral,
    rs_integral_componentwise,
)
from .intervals import DInterval, DPartition
from .numbers import (
    DEFAULT_TOL,
    E1,
    E2,
    H_ONE,
    H_ZERO,
    I1,
    I2,
    J,
    ONE,
    ZERO,
    BiComplex,
    Classification,
    DOrdering,
    Hyperbolic,
    classify,
    d_compare,
    d_leq,
    d_modulus,
    format_cartesian,
    format_idempotent,
    sup_d,
)
from .paths import (
    ComponentPath,
    DPath,
    VariationReport,
    arc_length,
    combine,
    sample_trace,
    smooth_length,
    total_variation,
    trace_csv,
    variation_sum,
)

__version__ = "0.1.0"
