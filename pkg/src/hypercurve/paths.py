"""Product-type paths over hyperbolic intervals.

A path pairs two complex component curves, one per idempotent direction;
evaluating at tau = t*e1 + s*e2 gives gamma1(t)*e1 + gamma2(s)*e2.  The
module computes variation sums over partitions, total variation by dyadic
refinement, arc length of smooth paths by quadrature of the speed, the
running arc-length function, and the usual path algebra (reversal,
translation, linear combination).

Component curves come in five kinds: straight segments, circular arcs,
polylines (linear interpolation between samples, variation computed
exactly), parsed expressions in one real variable (differentiated
symbolically when possible), and raw callables.  Evaluation is vectorized
over numpy arrays throughout; partition sums are reduced with numpy's
deterministic pairwise summation.

Paths are immutable after construction and evaluation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import quad

from . import expr as _expr
from .errors import (
    NotDifferentiableError,
    OutOfDomainError,
    QuadratureFailureError,
)
from .intervals import DInterval, DPartition
from .numbers import BiComplex, Hyperbolic

_FD_EPS = float(np.finfo(float).eps) ** (1.0 / 3.0)  # ~6.1e-6


def _as_complex_array(value, shape) -> np.ndarray:
    arr = np.asarray(value, dtype=complex)
    if arr.shape != shape:
        arr = np.broadcast_to(arr, shape).copy()
    return arr


class ComponentPath:
    """One complex component curve gamma: [a, b] -> C."""

    __slots__ = ("kind", "a", "b", "_eval_vec", "_deriv_vec", "_knots", "_values", "source")

    def __init__(
        self,
        kind: str,
        domain: tuple[float, float],
        eval_vec: Callable[[np.ndarray], np.ndarray],
        deriv_vec: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        knots: Optional[np.ndarray] = None,
        values: Optional[np.ndarray] = None,
        source: str = "",
    ):
        a, b = float(domain[0]), float(domain[1])
        if not (math.isfinite(a) and math.isfinite(b)) or b < a:
            raise ValueError(f"bad domain [{a}, {b}]")
        self.kind = kind
        self.a, self.b = a, b
        self._eval_vec = eval_vec
        self._deriv_vec = deriv_vec
        self._knots = knots
        self._values = values
        self.source = source

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def from_callable(
        fn: Callable,
        domain: tuple[float, float],
        deriv: Optional[Callable] = None,
        vectorized: bool = False,
    ) -> "ComponentPath":
        def vec(f):
            def run(ts: np.ndarray) -> np.ndarray:
                return np.array([complex(f(float(t))) for t in ts], dtype=complex)

            return run

        ev = fn if vectorized else vec(fn)
        dv = None if deriv is None else (deriv if vectorized else vec(deriv))
        return ComponentPath("callback", domain, ev, dv)

    @staticmethod
    def segment(
        z_start: complex, z_end: complex, domain: tuple[float, float] = (0.0, 1.0)
    ) -> "ComponentPath":
        z0, z1 = complex(z_start), complex(z_end)
        a, b = float(domain[0]), float(domain[1])
        slope = (z1 - z0) / (b - a) if b > a else 0j

        def ev(ts: np.ndarray) -> np.ndarray:
            return z0 + (np.asarray(ts, dtype=float) - a) * slope

        def dv(ts: np.ndarray) -> np.ndarray:
            return np.full(np.asarray(ts).shape, slope, dtype=complex)

        return ComponentPath("segment", (a, b), ev, dv)

    @staticmethod
    def arc(
        center: complex, radius: float, angles: tuple[float, float] = (0.0, 2 * math.pi)
    ) -> "ComponentPath":
        c, r = complex(center), float(radius)

        def ev(ts: np.ndarray) -> np.ndarray:
            return c + r * np.exp(1j * np.asarray(ts, dtype=float))

        def dv(ts: np.ndarray) -> np.ndarray:
            return 1j * r * np.exp(1j * np.asarray(ts, dtype=float))

        return ComponentPath("arc", angles, ev, dv)

    @staticmethod
    def polyline(params: Sequence[float], values: Sequence[complex]) -> "ComponentPath":
        ks = np.asarray(params, dtype=float)
        vs = np.asarray(values, dtype=complex)
        if ks.ndim != 1 or ks.size < 2 or ks.shape != vs.shape:
            raise ValueError("polyline needs matching params/values, length >= 2")
        if np.any(np.diff(ks) <= 0):
            raise ValueError("polyline params must be strictly increasing")

        def ev(ts: np.ndarray) -> np.ndarray:
            ts = np.asarray(ts, dtype=float)
            return np.interp(ts, ks, vs.real) + 1j * np.interp(ts, ks, vs.imag)

        return ComponentPath(
            "polyline", (float(ks[0]), float(ks[-1])), ev, None, knots=ks, values=vs
        )

    @staticmethod
    def from_expression(
        source: str | _expr.Expr, var: str, domain: tuple[float, float]
    ) -> "ComponentPath":
        ast = _expr.parse(source) if isinstance(source, str) else source
        extra = _expr.free_variables(ast) - {var}
        if extra:
            raise ValueError(f"expression uses unbound variables {sorted(extra)}")

        def ev(ts: np.ndarray) -> np.ndarray:
            ts = np.asarray(ts, dtype=float)
            return _as_complex_array(
                _expr.evaluate_component(ast, {var: ts.astype(complex)}), ts.shape
            )

        dv = None
        try:
            dast = _expr.differentiate(ast, var)
        except _expr.NonDifferentiableExpr:
            dast = None
        if dast is not None:
            def dv(ts: np.ndarray) -> np.ndarray:
                ts = np.asarray(ts, dtype=float)
                return _as_complex_array(
                    _expr.evaluate_component(dast, {var: ts.astype(complex)}), ts.shape
                )

        text = source if isinstance(source, str) else _expr.to_string(ast)
        return ComponentPath("expression", domain, ev, dv, source=text)

    # -- evaluation --------------------------------------------------------------

    @property
    def domain(self) -> tuple[float, float]:
        return (self.a, self.b)

    @property
    def is_point(self) -> bool:
        return self.b == self.a

    @property
    def has_derivative(self) -> bool:
        return self._deriv_vec is not None

    def eval_many(self, ts: np.ndarray) -> np.ndarray:
        return np.asarray(self._eval_vec(np.asarray(ts, dtype=float)), dtype=complex)

    def eval(self, t: float) -> complex:
        return complex(self.eval_many(np.array([float(t)]))[0])

    def deriv_many(self, ts: np.ndarray) -> np.ndarray:
        """Derivative on interior points: analytic, else clamped central FD."""
        ts = np.asarray(ts, dtype=float)
        if self._deriv_vec is not None:
            return np.asarray(self._deriv_vec(ts), dtype=complex)
        h = _FD_EPS * max(1.0, self.b - self.a)
        hi = np.minimum(ts + h, self.b)
        lo = np.maximum(ts - h, self.a)
        return (self.eval_many(hi) - self.eval_many(lo)) / (hi - lo)

    def derivative(self, t: float, stab_tol: float = 1e-6) -> complex:
        """Derivative at one parameter; finite differences must stabilize."""
        t = float(t)
        if self._deriv_vec is not None:
            return complex(self._deriv_vec(np.array([t]))[0])
        if self.is_point:
            raise NotDifferentiableError("single-point component domain")
        h0 = _FD_EPS * max(1.0, self.b - self.a, abs(t))

        def estimate(h: float) -> complex:
            if t - h >= self.a and t + h <= self.b:
                va, vb = self.eval_many(np.array([t - h, t + h]))
                return (vb - va) / (2 * h)
            if t + 2 * h <= self.b:  # forward, second order
                v0, v1, v2 = self.eval_many(np.array([t, t + h, t + 2 * h]))
                return (-3 * v0 + 4 * v1 - v2) / (2 * h)
            v0, v1, v2 = self.eval_many(np.array([t, t - h, t - 2 * h]))
            return (3 * v0 - 4 * v1 + v2) / (2 * h)

        d1, d2 = estimate(h0), estimate(h0 / 2)
        if abs(d1 - d2) > stab_tol:
            raise NotDifferentiableError(
                f"finite differences do not stabilize at t={t}: {d1} vs {d2}"
            )
        return d2

    # -- polyline exact machinery ---------------------------------------------------

    def _polyline_cumulative(self) -> tuple[np.ndarray, np.ndarray]:
        seg = np.abs(np.diff(self._values))
        return self._knots, np.concatenate(([0.0], np.cumsum(seg)))

    def variation_between(self, x0: float, x1: float) -> float:
        """Exact variation of a polyline between two parameters."""
        if self.kind != "polyline":
            raise ValueError("exact variation is only defined for polylines")
        knots, cum = self._polyline_cumulative()
        c0 = float(np.interp(x0, knots, cum))
        c1 = float(np.interp(x1, knots, cum))
        return c1 - c0

    # -- algebra ----------------------------------------------------------------------

    def reversed(self) -> "ComponentPath":
        """The curve x -> gamma(-x) on [-b, -a]."""
        if self.kind == "polyline":
            return ComponentPath.polyline(-self._knots[::-1], self._values[::-1])
        ev, dv = self._eval_vec, self._deriv_vec

        def rev_ev(ts: np.ndarray) -> np.ndarray:
            return np.asarray(ev(-np.asarray(ts, dtype=float)), dtype=complex)

        rev_dv = None
        if dv is not None:
            def rev_dv(ts: np.ndarray) -> np.ndarray:
                return -np.asarray(dv(-np.asarray(ts, dtype=float)), dtype=complex)

        # an expression source would no longer describe the wrapped curve
        return ComponentPath("callback", (-self.b, -self.a), rev_ev, rev_dv)

    def translated(self, c: complex) -> "ComponentPath":
        c = complex(c)
        if self.kind == "polyline":
            return ComponentPath.polyline(self._knots, self._values + c)
        ev = self._eval_vec

        def sh_ev(ts: np.ndarray) -> np.ndarray:
            return np.asarray(ev(np.asarray(ts, dtype=float)), dtype=complex) + c

        # an expression source would no longer describe the shifted curve
        return ComponentPath("callback", (self.a, self.b), sh_ev, self._deriv_vec)

    def restricted(self, lo: float, hi: float) -> "ComponentPath":
        """The same curve on a sub-domain [lo, hi]."""
        lo, hi = float(lo), float(hi)
        if lo < self.a - 1e-12 or hi > self.b + 1e-12 or hi < lo:
            raise ValueError(f"[{lo}, {hi}] is not inside [{self.a}, {self.b}]")
        return ComponentPath(
            self.kind,
            (lo, hi),
            self._eval_vec,
            self._deriv_vec,
            knots=self._knots,
            values=self._values,
            source=self.source,
        )


def combine_components(
    a: complex, p: ComponentPath, b: complex, q: ComponentPath
) -> ComponentPath:
    """The curve a*p + b*q on their common domain."""
    if p.domain != q.domain:
        raise ValueError("component domains differ")
    a, b = complex(a), complex(b)

    def ev(ts: np.ndarray) -> np.ndarray:
        return a * p.eval_many(ts) + b * q.eval_many(ts)

    dv = None
    if p.has_derivative and q.has_derivative:
        def dv(ts: np.ndarray) -> np.ndarray:
            return a * p.deriv_many(ts) + b * q.deriv_many(ts)

    return ComponentPath("callback", p.domain, ev, dv)


class DPath:
    """A product-type path: two component curves over a hyperbolic interval."""

    __slots__ = ("gamma1", "gamma2", "interval")

    def __init__(self, gamma1: ComponentPath, gamma2: ComponentPath):
        self.gamma1 = gamma1
        self.gamma2 = gamma2
        self.interval = DInterval(
            Hyperbolic(gamma1.a, gamma2.a), Hyperbolic(gamma1.b, gamma2.b)
        )

    # -- constructors ------------------------------------------------------------

    @staticmethod
    def identity(interval: DInterval) -> "DPath":
        """The path tau -> tau (each component is t -> t)."""

        def comp(a: float, b: float) -> ComponentPath:
            return ComponentPath(
                "callback",
                (a, b),
                lambda ts: np.asarray(ts, dtype=complex),
                lambda ts: np.ones(np.asarray(ts).shape, dtype=complex),
            )

        (a1, b1), (a2, b2) = interval.project()
        return DPath(comp(a1, b1), comp(a2, b2))

    @staticmethod
    def segment(z_start: BiComplex, z_end: BiComplex) -> "DPath":
        """Straight path from one bicomplex point to another on [0, 1]."""
        return DPath(
            ComponentPath.segment(z_start.w1, z_end.w1),
            ComponentPath.segment(z_start.w2, z_end.w2),
        )

    @staticmethod
    def bicircle(
        center: BiComplex = BiComplex(0, 0), radius: float = 1.0, turns: float = 1.0
    ) -> "DPath":
        """Both components trace a circle of the given radius and turn count."""
        angles = (0.0, 2 * math.pi * float(turns))
        return DPath(
            ComponentPath.arc(center.w1, radius, angles),
            ComponentPath.arc(center.w2, radius, angles),
        )

    # -- evaluation ----------------------------------------------------------------

    def _check_domain(self, tau: Hyperbolic) -> tuple[float, float]:
        if tau is None:
            raise TypeError("parameter must be a hyperbolic value")
        scale = 1.0 + max(
            abs(self.interval.lo.v1),
            abs(self.interval.hi.v1),
            abs(self.interval.lo.v2),
            abs(self.interval.hi.v2),
        )
        if not self.interval.contains(tau, 1e-9 * scale):
            raise OutOfDomainError(f"{tau} outside {self.interval}")
        t = min(max(tau.v1, self.gamma1.a), self.gamma1.b)
        s = min(max(tau.v2, self.gamma2.a), self.gamma2.b)
        return t, s

    def eval(self, tau: Hyperbolic) -> BiComplex:
        t, s = self._check_domain(Hyperbolic._coerce(tau))
        return BiComplex(self.gamma1.eval(t), self.gamma2.eval(s))

    def derivative(self, tau: Hyperbolic, stab_tol: float = 1e-6) -> BiComplex:
        t, s = self._check_domain(Hyperbolic._coerce(tau))
        return BiComplex(
            self.gamma1.derivative(t, stab_tol), self.gamma2.derivative(s, stab_tol)
        )

    def start(self) -> BiComplex:
        return self.eval(self.interval.lo)

    def end(self) -> BiComplex:
        return self.eval(self.interval.hi)

    def is_closed(self, tol: float = 1e-9) -> bool:
        d = (self.end() - self.start()).d_modulus()
        return d.v1 < tol and d.v2 < tol

    # -- algebra ----------------------------------------------------------------------

    def reverse(self) -> "DPath":
        """The path tau -> original(-tau) on the negated interval."""
        return DPath(self.gamma1.reversed(), self.gamma2.reversed())

    def translate(self, c: BiComplex) -> "DPath":
        c = BiComplex._coerce(c)
        return DPath(self.gamma1.translated(c.w1), self.gamma2.translated(c.w2))

    def restrict(self, sub: DInterval) -> "DPath":
        """The same path over a sub-interval of its interval."""
        return DPath(
            self.gamma1.restricted(sub.lo.v1, sub.hi.v1),
            self.gamma2.restricted(sub.lo.v2, sub.hi.v2),
        )

    def __repr__(self) -> str:
        return f"DPath({self.gamma1.kind}, {self.gamma2.kind}, {self.interval})"


def combine(a: BiComplex, g: DPath, b: BiComplex, l: DPath) -> DPath:
    """The path a*g + b*l over a common interval."""
    a, b = BiComplex._coerce(a), BiComplex._coerce(b)
    return DPath(
        combine_components(a.w1, g.gamma1, b.w1, l.gamma1),
        combine_components(a.w2, g.gamma2, b.w2, l.gamma2),
    )


@dataclass(frozen=True)
class VariationReport:
    """Total variation with the refinement evidence behind it."""

    total: Hyperbolic
    per_component: tuple[float, float]
    partition_used: Optional[DPartition]
    converged: bool
    levels: int


def variation_sum(g: DPath, partition: DPartition) -> Hyperbolic:
    """Sum of hyperbolic moduli of path increments over the partition."""
    t, s = partition.project()
    w1 = g.gamma1.eval_many(t)
    w2 = g.gamma2.eval_many(s)
    return Hyperbolic(
        float(np.sum(np.abs(np.diff(w1)))), float(np.sum(np.abs(np.diff(w2))))
    )


def _component_variation(
    comp: ComponentPath, tol: float, max_levels: int, hi: float | None = None
) -> tuple[float, int, bool]:
    """Scalar variation of one component by dyadic refinement (polylines exact)."""
    b = comp.b if hi is None else float(hi)
    if b <= comp.a:
        return 0.0, 0, True
    if comp.kind == "polyline":
        return comp.variation_between(comp.a, b), 0, True
    grid = np.array([comp.a, b])
    prev = float(np.sum(np.abs(np.diff(comp.eval_many(grid)))))
    for level in range(1, max_levels + 1):
        refined = np.empty(2 * grid.size - 1)
        refined[0::2] = grid
        refined[1::2] = 0.5 * (grid[:-1] + grid[1:])
        grid = refined
        vals = comp.eval_many(grid)
        v = float(np.sum(np.abs(np.diff(vals))))
        # The chord sums can stall across levels when the new points keep
        # missing an extremum of a component, so a small successive
        # difference alone is not evidence of convergence.  The largest
        # second difference ~ max|gamma''| h^2 controls both the stall error
        # and the chord-vs-arc deficit (the latter with a log factor, hence
        # the safety margin); require it small as well.
        curvature = float(np.max(np.abs(np.diff(vals, n=2)))) if vals.size > 2 else 0.0
        if abs(v - prev) < tol and curvature < tol / 16.0:
            return v, level, True
        prev = v
    return prev, max_levels, False


def total_variation(
    g: DPath, tol: float = 1e-9, max_levels: int = 22
) -> VariationReport:
    """Total variation via dyadic refinement until the sums stabilize.

    By refinement monotonicity the sums increase to the total variation; a
    path of unbounded variation shows up as converged=False at the level
    cap, not as an exception.
    """
    v1, l1, c1 = _component_variation(g.gamma1, tol, max_levels)
    v2, l2, c2 = _component_variation(g.gamma2, tol, max_levels)
    levels = max(l1, l2)
    partition = None
    if not g.interval.is_degenerate():
        trivial = DPartition.trivial(g.interval)
        partition = trivial.refine_dyadic(levels) if levels > 0 else trivial
    return VariationReport(
        total=Hyperbolic(v1, v2),
        per_component=(v1, v2),
        partition_used=partition,
        converged=c1 and c2,
        levels=levels,
    )


def _component_speed(comp: ComponentPath) -> Callable[[float], float]:
    if comp.has_derivative:
        return lambda x: abs(complex(comp.deriv_many(np.array([x]))[0]))
    h = _FD_EPS * max(1.0, comp.b - comp.a)

    def speed(x: float) -> float:
        hi, lo = min(x + h, comp.b), max(x - h, comp.a)
        va, vb = comp.eval_many(np.array([lo, hi]))
        return abs((vb - va) / (hi - lo))

    return speed


def _speed_breakpoints(comp: ComponentPath, a: float, b: float) -> list[float]:
    """Parameters where the speed dips toward zero (kinks of |gamma'|).

    The adaptive quadrature can step right over a kink that sits close to
    an endpoint; feeding these as breakpoints makes it split there.
    """
    xs = np.linspace(a, b, 513)
    sv = np.abs(comp.deriv_many(xs))
    peak = float(np.max(sv))
    if peak <= 0.0:
        return []
    dips = [float(x) for x, s in zip(xs[1:-1], sv[1:-1]) if s < 0.05 * peak]
    return dips[:: max(1, len(dips) // 40)]


def _component_length(comp: ComponentPath, quad_tol: float, hi: float | None = None) -> float:
    b = comp.b if hi is None else float(hi)
    if b <= comp.a:
        return 0.0
    if comp.kind == "polyline":
        return comp.variation_between(comp.a, b)
    points = _speed_breakpoints(comp, comp.a, b)
    value, err = quad(
        _component_speed(comp), comp.a, b, epsabs=quad_tol, limit=400, points=points or None
    )
    # quad's estimate is conservative for speeds with |.| kinks; only treat
    # clearly unmet accuracy as failure
    if err > max(1e-6, 1e-6 * abs(value)):
        raise QuadratureFailureError(
            f"speed quadrature error {err:.3e} exceeds budget on [{comp.a}, {b}]"
        )
    return float(value)


def smooth_length(g: DPath, quad_tol: float = 1e-10) -> Hyperbolic:
    """Length of a piecewise-smooth path: componentwise quadrature of the speed."""
    return Hyperbolic(
        _component_length(g.gamma1, quad_tol), _component_length(g.gamma2, quad_tol)
    )


def arc_length(g: DPath, tau: Hyperbolic, tol: float = 1e-9) -> Hyperbolic:
    """Running arc length from the interval start up to tau.

    Polylines accumulate exactly; components with a usable derivative go
    through quadrature of the speed; anything else falls back to dyadic
    refinement of the variation sums at the given tolerance.
    """
    tau = Hyperbolic._coerce(tau)
    t, s = g._check_domain(tau)

    def one(comp: ComponentPath, x: float) -> float:
        if x <= comp.a:
            return 0.0
        if comp.kind == "polyline":
            return comp.variation_between(comp.a, x)
        if comp.has_derivative:
            return _component_length(comp, 1e-10, hi=x)
        v, _, _ = _component_variation(comp, tol, 22, hi=x)
        return v

    return Hyperbolic(one(g.gamma1, t), one(g.gamma2, s))


def sample_trace(g: DPath, n: int = 64) -> list[tuple[float, float, complex, complex]]:
    """n+1 trace samples along the componentwise-uniform parameter chain."""
    t = np.linspace(g.gamma1.a, g.gamma1.b, n + 1)
    s = np.linspace(g.gamma2.a, g.gamma2.b, n + 1)
    w1 = g.gamma1.eval_many(t)
    w2 = g.gamma2.eval_many(s)
    return [
        (float(a), float(b), complex(u), complex(v))
        for a, b, u, v in zip(t, s, w1, w2)
    ]


def trace_csv(g: DPath, n: int = 64) -> str:
    """Trace samples as CSV text with one row per parameter."""
    lines = ["tau_v1,tau_v2,w1_re,w1_im,w2_re,w2_im"]
    for t, s, u, v in sample_trace(g, n):
        lines.append(f"{t!r},{s!r},{u.real!r},{u.imag!r},{v.real!r},{v.imag!r}")
    return "\n".join(lines) + "\n"
