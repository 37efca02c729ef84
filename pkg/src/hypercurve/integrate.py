"""Riemann-Stieltjes integration of product-type functions along paths.

The direct integrator forms sums f(tau_k) * (G(p_k) - G(p_{k-1})) over a
partition of the hyperbolic interval and refines dyadically until two
successive sums agree within tolerance in both idempotent components at
once.  The componentwise integrator runs two independent scalar complex
Riemann-Stieltjes refinements (each converging on its own) and recombines;
it is the cross-check for the direct route.

When the interval is degenerate (one component of its length vanishes) the
flat component contributes a single-point integral of zero and only the
live component is integrated.

Also here: line integrals over the trace, the smooth reduction through
f(tau) * G'(tau) quadrature, arc-length integrals against the running
length, monotone reparametrization, primitive-based evaluation of line
integrals, and the length-times-sup bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from . import expr as _expr
from .errors import (
    EndpointMismatchError,
    NotMonotoneError,
    PrimitiveMismatchError,
    QuadratureFailureError,
    ZeroDivisorValueError,
)
from .intervals import DPartition
from .numbers import DEFAULT_TOL, BiComplex, Hyperbolic
from .paths import ComponentPath, DPath, total_variation

_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(8)


class Tag(Enum):
    """Where the evaluation point sits inside each partition step."""

    LEFT = "left"
    MIDPOINT = "midpoint"
    RIGHT = "right"


class Integrand:
    """A product-type function f1*e1 + f2*e2 acting on idempotent components."""

    __slots__ = ("_f1", "_f2", "source", "text1", "text2")

    def __init__(self, f1: Callable, f2: Callable, source: str = "callback",
                 text1: str = "", text2: str = ""):
        self._f1 = f1
        self._f2 = f2
        self.source = source
        self.text1 = text1
        self.text2 = text2

    @staticmethod
    def from_callables(f1: Callable, f2: Callable, vectorized: bool = False) -> "Integrand":
        def vec(f):
            def run(ws):
                if isinstance(ws, np.ndarray):
                    return np.array([complex(f(complex(w))) for w in ws], dtype=complex)
                return complex(f(complex(ws)))

            return run

        if vectorized:
            return Integrand(f1, f2)
        return Integrand(vec(f1), vec(f2))

    @staticmethod
    def from_expressions(src1: str | _expr.Expr, src2: str | _expr.Expr | None = None,
                         var: str = "z") -> "Integrand":
        """Component functions from expressions in one variable (default both equal)."""
        ast1 = _expr.parse(src1) if isinstance(src1, str) else src1
        ast2 = ast1 if src2 is None else (_expr.parse(src2) if isinstance(src2, str) else src2)
        for ast in (ast1, ast2):
            extra = _expr.free_variables(ast) - {var}
            if extra:
                raise ValueError(f"expression uses unbound variables {sorted(extra)}")

        def make(ast):
            def run(ws):
                out = _expr.evaluate_component(ast, {var: ws})
                if isinstance(ws, np.ndarray) and not isinstance(out, np.ndarray):
                    out = np.full(ws.shape, complex(out))
                return out

            return run

        return Integrand(
            make(ast1), make(ast2), source="expression",
            text1=_expr.to_string(ast1), text2=_expr.to_string(ast2),
        )

    @staticmethod
    def constant(c: BiComplex) -> "Integrand":
        c = BiComplex._coerce(c)
        return Integrand.from_callables(lambda w: c.w1, lambda w: c.w2)

    @staticmethod
    def identity() -> "Integrand":
        return Integrand(lambda w: w, lambda w: w)

    def eval1(self, w):
        return self._f1(w)

    def eval2(self, w):
        return self._f2(w)

    def __call__(self, z: BiComplex) -> BiComplex:
        z = BiComplex._coerce(z)
        return BiComplex(complex(self.eval1(z.w1)), complex(self.eval2(z.w2)))


@dataclass(frozen=True)
class IntegrationConfig:
    """Refinement tolerances and evaluation-point choice."""

    tol: Hyperbolic = field(default_factory=lambda: Hyperbolic(1e-9, 1e-9))
    max_levels: int = 24
    tag: Tag = Tag.MIDPOINT
    initial_partition: Optional[DPartition] = None

    def __post_init__(self) -> None:
        tol = self.tol
        if isinstance(tol, (int, float)):
            tol = Hyperbolic.from_real(float(tol))
        object.__setattr__(self, "tol", tol)
        if tol.v1 <= 0 or tol.v2 <= 0 or self.max_levels < 1:
            raise ValueError("tolerances must be positive and max_levels >= 1")


@dataclass(frozen=True)
class IntegralResult:
    value: BiComplex
    est_error: Hyperbolic
    levels_used: int
    converged: bool
    method: str


def _refine(grid: np.ndarray) -> np.ndarray:
    out = np.empty(2 * grid.size - 1, dtype=float)
    out[0::2] = grid
    out[1::2] = 0.5 * (grid[:-1] + grid[1:])
    return out


def _tag_points(grid: np.ndarray, tag: Tag) -> np.ndarray:
    if tag is Tag.LEFT:
        return grid[:-1]
    if tag is Tag.RIGHT:
        return grid[1:]
    return 0.5 * (grid[:-1] + grid[1:])


def _rs_scalar(
    fvals: Callable[[np.ndarray], np.ndarray],
    gvals: Callable[[np.ndarray], np.ndarray],
    grid: np.ndarray,
    tol: float,
    tag: Tag,
    max_levels: int,
) -> tuple[complex, float, int, bool]:
    """One scalar complex Riemann-Stieltjes integral by dyadic refinement."""
    if grid[-1] - grid[0] <= 0:
        return 0j, 0.0, 0, True

    def partial_sum(g: np.ndarray) -> complex:
        return complex(np.sum(np.asarray(fvals(_tag_points(g, tag))) * np.diff(np.asarray(gvals(g)))))

    prev = partial_sum(grid)
    err = math.inf
    streak = 0  # two consecutive agreements guard against one-level plateaus
    for level in range(1, max_levels + 1):
        grid = _refine(grid)
        s = partial_sum(grid)
        err = abs(s - prev)
        streak = streak + 1 if err < tol else 0
        if streak >= 2:
            return s, err, level, True
        prev = s
    return prev, err, max_levels, False


def _initial_grids(g: DPath, cfg: IntegrationConfig) -> tuple[np.ndarray, np.ndarray]:
    if cfg.initial_partition is not None:
        return cfg.initial_partition.project()
    return (
        np.array([g.gamma1.a, g.gamma1.b], dtype=float),
        np.array([g.gamma2.a, g.gamma2.b], dtype=float),
    )


def _drive_direct(
    f1vals: Callable,
    f2vals: Callable,
    g1vals: Callable,
    g2vals: Callable,
    g: DPath,
    cfg: IntegrationConfig,
    method: str,
) -> IntegralResult:
    """Joint refinement of the hyperbolic partition, converging both components at once."""
    grid1, grid2 = _initial_grids(g, cfg)
    alive1 = grid1[-1] - grid1[0] > DEFAULT_TOL
    alive2 = grid2[-1] - grid2[0] > DEFAULT_TOL

    if not (alive1 and alive2):
        # Degenerate interval: the flat component is a single point and
        # contributes zero; integrate the live component alone.
        s1 = e1 = s2 = e2 = 0.0
        levels, converged = 0, True
        if alive1:
            s1, e1, levels, converged = _rs_scalar(
                f1vals, g1vals, grid1, cfg.tol.v1, cfg.tag, cfg.max_levels
            )
        elif alive2:
            s2, e2, levels, converged = _rs_scalar(
                f2vals, g2vals, grid2, cfg.tol.v2, cfg.tag, cfg.max_levels
            )
        return IntegralResult(
            BiComplex(s1, s2), Hyperbolic(float(e1), float(e2)), levels, converged, method
        )

    def partial_sums(t: np.ndarray, s: np.ndarray) -> tuple[complex, complex]:
        w1 = np.asarray(g1vals(t))
        w2 = np.asarray(g2vals(s))
        s1 = complex(np.sum(np.asarray(f1vals(_tag_points(t, cfg.tag))) * np.diff(w1)))
        s2 = complex(np.sum(np.asarray(f2vals(_tag_points(s, cfg.tag))) * np.diff(w2)))
        return s1, s2

    prev1, prev2 = partial_sums(grid1, grid2)
    err1 = err2 = math.inf
    streak = 0  # two consecutive agreements guard against one-level plateaus
    for level in range(1, cfg.max_levels + 1):
        grid1, grid2 = _refine(grid1), _refine(grid2)
        s1, s2 = partial_sums(grid1, grid2)
        err1, err2 = abs(s1 - prev1), abs(s2 - prev2)
        streak = streak + 1 if (err1 < cfg.tol.v1 and err2 < cfg.tol.v2) else 0
        if streak >= 2:
            return IntegralResult(
                BiComplex(s1, s2), Hyperbolic(err1, err2), level, True, method
            )
        prev1, prev2 = s1, s2
    return IntegralResult(
        BiComplex(prev1, prev2), Hyperbolic(err1, err2), cfg.max_levels, False, method
    )


def _drive_componentwise(
    f1vals: Callable,
    f2vals: Callable,
    g1vals: Callable,
    g2vals: Callable,
    g: DPath,
    cfg: IntegrationConfig,
) -> IntegralResult:
    """Two independent scalar refinements, recombined."""
    grid1, grid2 = _initial_grids(g, cfg)
    s1, e1, l1, c1 = _rs_scalar(f1vals, g1vals, grid1, cfg.tol.v1, cfg.tag, cfg.max_levels)
    s2, e2, l2, c2 = _rs_scalar(f2vals, g2vals, grid2, cfg.tol.v2, cfg.tag, cfg.max_levels)
    return IntegralResult(
        BiComplex(s1, s2),
        Hyperbolic(float(e1), float(e2)),
        max(l1, l2),
        c1 and c2,
        "componentwise",
    )


def _param_fvals(f: Integrand) -> tuple[Callable, Callable]:
    """Integrand components applied to real parameter grids."""
    return (
        lambda t: f.eval1(np.asarray(t, dtype=complex)),
        lambda s: f.eval2(np.asarray(s, dtype=complex)),
    )


def _trace_fvals(f: Integrand, g: DPath) -> tuple[Callable, Callable]:
    """Integrand components composed with the path components."""
    return (
        lambda t: f.eval1(g.gamma1.eval_many(t)),
        lambda s: f.eval2(g.gamma2.eval_many(s)),
    )


def rs_integral(f: Integrand, g: DPath, cfg: IntegrationConfig | None = None) -> IntegralResult:
    """Integral of f(tau) dG(tau) over the path's interval, direct refinement."""
    cfg = cfg or IntegrationConfig()
    f1v, f2v = _param_fvals(f)
    return _drive_direct(
        f1v, f2v, g.gamma1.eval_many, g.gamma2.eval_many, g, cfg, "direct-rs"
    )


def rs_integral_componentwise(
    f: Integrand, g: DPath, cfg: IntegrationConfig | None = None
) -> IntegralResult:
    """Componentwise oracle for `rs_integral`: two scalar complex integrals."""
    cfg = cfg or IntegrationConfig()
    f1v, f2v = _param_fvals(f)
    return _drive_componentwise(
        f1v, f2v, g.gamma1.eval_many, g.gamma2.eval_many, g, cfg
    )


def line_integral(
    f: Integrand,
    g: DPath,
    cfg: IntegrationConfig | None = None,
    componentwise: bool = False,
) -> IntegralResult:
    """Integral of f along the trace of g (f composed with the path)."""
    cfg = cfg or IntegrationConfig()
    f1v, f2v = _trace_fvals(f, g)
    if componentwise:
        return _drive_componentwise(
            f1v, f2v, g.gamma1.eval_many, g.gamma2.eval_many, g, cfg
        )
    return _drive_direct(
        f1v, f2v, g.gamma1.eval_many, g.gamma2.eval_many, g, cfg, "direct-rs"
    )


def _quad_complex(fn: Callable[[float], complex], a: float, b: float, quad_tol: float) -> tuple[complex, float]:
    re, re_err = quad(lambda x: fn(x).real, a, b, epsabs=quad_tol, limit=200)
    im, im_err = quad(lambda x: fn(x).imag, a, b, epsabs=quad_tol, limit=200)
    err = re_err + im_err
    if err > max(100 * quad_tol, 1e-8 * (1.0 + abs(complex(re, im)))):
        raise QuadratureFailureError(f"quadrature error {err:.3e} exceeds budget")
    return complex(re, im), err


def line_integral_smooth(
    f: Integrand, g: DPath, quad_tol: float = 1e-10
) -> IntegralResult:
    """Line integral of f along a piecewise-smooth path via f(G(x)) * G'(x) quadrature."""

    def component(comp: ComponentPath, feval: Callable) -> tuple[complex, float]:
        if comp.is_point:
            return 0j, 0.0

        def fn(x: float) -> complex:
            xs = np.array([x])
            return complex(np.asarray(feval(comp.eval_many(xs)))[0] * comp.deriv_many(xs)[0])

        return _quad_complex(fn, comp.a, comp.b, quad_tol)

    v1, e1 = component(g.gamma1, f.eval1)
    v2, e2 = component(g.gamma2, f.eval2)
    return IntegralResult(BiComplex(v1, v2), Hyperbolic(e1, e2), 0, True, "smooth-reduction")


def _cumulative_arclength(comp: ComponentPath, grid: np.ndarray) -> np.ndarray:
    """Arc length accumulated from grid[0] to each grid point."""
    if grid.size < 2 or grid[-1] - grid[0] <= 0:
        return np.zeros(grid.size)
    if comp.kind == "polyline":
        knots, cum = comp._polyline_cumulative()
        vals = np.interp(grid, knots, cum)
        return vals - vals[0]
    mid = 0.5 * (grid[:-1] + grid[1:])
    half = 0.5 * np.diff(grid)
    nodes = mid[:, None] + half[:, None] * _GAUSS_X[None, :]
    speeds = np.abs(comp.deriv_many(nodes.ravel())).reshape(nodes.shape)
    cells = half * (speeds @ _GAUSS_W)
    return np.concatenate(([0.0], np.cumsum(cells)))


def line_integral_arclength(
    f: Integrand, g: DPath, cfg: IntegrationConfig | None = None
) -> IntegralResult:
    """Integral of f against the running arc length of g."""
    cfg = cfg or IntegrationConfig()
    f1v, f2v = _trace_fvals(f, g)
    return _drive_direct(
        f1v,
        f2v,
        lambda t: _cumulative_arclength(g.gamma1, t).astype(complex),
        lambda s: _cumulative_arclength(g.gamma2, s).astype(complex),
        g,
        cfg,
        "direct-rs",
    )


def reparametrize(
    g: DPath, phi: DPath, tol: float = 1e-9, samples: int = 257
) -> DPath:
    """Compose g with a monotone-increasing product-type parameter map.

    `phi` must map its interval onto g's interval: endpoints must match,
    sampled values must be real and componentwise nondecreasing, and no
    sampled value may be a (nonzero) zero divisor.
    """
    (a1, b1), (a2, b2) = g.interval.project()

    def check_component(pc: ComponentPath, lo: float, hi: float) -> None:
        xs = np.linspace(pc.a, pc.b, samples)
        vals = pc.eval_many(xs)
        if np.max(np.abs(vals.imag)) > 1e-9:
            raise ValueError("reparametrization values must be real")
        re = vals.real
        scale = 1.0 + max(abs(lo), abs(hi))
        # monotonicity first: a decreasing onto-map also has swapped
        # endpoints, and the more specific report wins
        if np.any(np.diff(re) < -tol * scale):
            raise NotMonotoneError("sampled values decrease")
        if abs(re[0] - lo) > tol * scale or abs(re[-1] - hi) > tol * scale:
            raise EndpointMismatchError(
                f"map spans [{re[0]}, {re[-1]}], path interval is [{lo}, {hi}]"
            )

    check_component(phi.gamma1, a1, b1)
    check_component(phi.gamma2, a2, b2)

    xs1 = np.linspace(phi.gamma1.a, phi.gamma1.b, samples)
    xs2 = np.linspace(phi.gamma2.a, phi.gamma2.b, samples)
    v1 = phi.gamma1.eval_many(xs1).real
    v2 = phi.gamma2.eval_many(xs2).real
    zd1 = (np.abs(v1) <= tol) & (np.abs(v2) > tol)
    zd2 = (np.abs(v2) <= tol) & (np.abs(v1) > tol)
    if np.any(zd1 | zd2):
        raise ZeroDivisorValueError("map takes zero-divisor values on its domain")

    def composed(comp: ComponentPath, pc: ComponentPath) -> ComponentPath:
        def ev(ts: np.ndarray) -> np.ndarray:
            inner = np.clip(pc.eval_many(ts).real, comp.a, comp.b)
            return comp.eval_many(inner)

        dv = None
        if comp.has_derivative and pc.has_derivative:
            def dv(ts: np.ndarray) -> np.ndarray:
                inner = np.clip(pc.eval_many(ts).real, comp.a, comp.b)
                return comp.deriv_many(inner) * pc.deriv_many(ts)

        return ComponentPath("callback", pc.domain, ev, dv)

    return DPath(composed(g.gamma1, phi.gamma1), composed(g.gamma2, phi.gamma2))


def ftc_eval(
    primitive: Integrand,
    g: DPath,
    integrand: Integrand | None = None,
    guard_tol: float = 1e-4,
    samples: int = 16,
) -> BiComplex:
    """Evaluate a line integral as primitive(end) - primitive(start).

    When the integrand is supplied, the primitive's derivative is spot
    checked against it by finite differences at sampled trace points; a
    mismatch beyond `guard_tol` raises PrimitiveMismatchError.
    """
    if integrand is not None:
        def check(comp: ComponentPath, feval: Callable, peval: Callable) -> None:
            xs = np.linspace(comp.a, comp.b, samples)
            zs = comp.eval_many(xs)
            h = 1e-5 * (1.0 + np.abs(zs))
            deriv = (np.asarray(peval(zs + h)) - np.asarray(peval(zs - h))) / (2 * h)
            gap = np.max(np.abs(deriv - np.asarray(feval(zs))))
            if gap > guard_tol:
                raise PrimitiveMismatchError(
                    f"finite-difference derivative differs from integrand by {gap:.3e}"
                )

        check(g.gamma1, integrand.eval1, primitive.eval1)
        check(g.gamma2, integrand.eval2, primitive.eval2)

    return primitive(g.end()) - primitive(g.start())


def ml_bound(f: Integrand, g: DPath, samples: int = 4096) -> Hyperbolic:
    """Upper bound for |integral| as V(g) times the sampled sup of |f| on the trace."""
    t = np.linspace(g.gamma1.a, g.gamma1.b, samples + 1)
    s = np.linspace(g.gamma2.a, g.gamma2.b, samples + 1)
    m1 = float(np.max(np.abs(np.asarray(f.eval1(g.gamma1.eval_many(t))))))
    m2 = float(np.max(np.abs(np.asarray(f.eval2(g.gamma2.eval_many(s))))))
    return total_variation(g).total * Hyperbolic(m1, m2)
