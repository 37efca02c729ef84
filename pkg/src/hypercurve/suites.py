"""Seeded property-check suites.

Each suite draws deterministic random instances and verifies one of the
library's structural identities: algebraic laws of the idempotent
arithmetic, variation decomposition, length identity, tag independence of
the Riemann-Stieltjes sums, linearity/additivity/orientation/translation/
reparametrization of the integral, the length-times-sup bound, evaluation
through primitives, and vanishing on closed curves.

Failures carry the offending instance serialized as a job-file fragment so
a counterexample can be replayed through the CLI.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import UnknownSuiteError
from .expr import differentiate, evaluate_component, free_variables, parse
from .integrate import (
    Integrand,
    IntegrationConfig,
    Tag,
    ftc_eval,
    line_integral,
    ml_bound,
    reparametrize,
    rs_integral,
)
from .intervals import DInterval, DPartition
from .numbers import (
    BiComplex,
    DOrdering,
    Hyperbolic,
    _fmt_complex,
    d_compare,
    d_leq,
    d_modulus,
    sup_d,
)
from .paths import ComponentPath, DPath, combine, smooth_length, total_variation, variation_sum


@dataclass
class SuiteResult:
    name: str
    seed: int
    n: int
    passed: bool
    failures: list[dict] = field(default_factory=list)

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.failures)} instances)"
        return f"{self.name}: {status} [n={self.n}, seed={self.seed}]"


# -- random instance generators ---------------------------------------------------


def _rand_complex(rng: random.Random, scale: float = 1.0) -> complex:
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def _rand_bicomplex(rng: random.Random, scale: float = 1.0) -> BiComplex:
    return BiComplex(_rand_complex(rng, scale), _rand_complex(rng, scale))


def _rand_hyperbolic(rng: random.Random, scale: float = 1.0) -> Hyperbolic:
    return Hyperbolic(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def _poly_expr(rng: random.Random, var: str, degree: int, scale: float) -> str:
    terms = []
    for k in range(degree + 1):
        lit = f"({_fmt_complex(_rand_complex(rng, scale))})"
        if k == 0:
            terms.append(lit)
        elif k == 1:
            terms.append(f"{lit}*{var}")
        else:
            terms.append(f"{lit}*{var}^{k}")
    return " + ".join(terms)


def _rand_domain(rng: random.Random, lo_min=-1.0, lo_max=0.4, len_min=0.4, len_max=1.0):
    a = rng.uniform(lo_min, lo_max)
    return (a, a + rng.uniform(len_min, len_max))


def _rand_expr_path(
    rng: random.Random, degree: int = 3, scale: float = 0.8, **domain_kw
) -> tuple[DPath, dict]:
    d1 = _rand_domain(rng, **domain_kw)
    d2 = _rand_domain(rng, **domain_kw)
    e1 = _poly_expr(rng, "t", rng.randint(1, degree), scale)
    e2 = _poly_expr(rng, "s", rng.randint(1, degree), scale)
    path = DPath(
        ComponentPath.from_expression(e1, "t", d1),
        ComponentPath.from_expression(e2, "s", d2),
    )
    frag = {
        "kind": "expr",
        "gamma1": e1,
        "gamma2": e2,
        "domain1": list(d1),
        "domain2": list(d2),
    }
    return path, frag


def _rand_polyline_component(rng: random.Random) -> ComponentPath:
    a, b = _rand_domain(rng)
    n = rng.randint(3, 8)
    gaps = np.array([rng.uniform(0.2, 1.0) for _ in range(n)])
    knots = a + (b - a) * np.concatenate(([0.0], np.cumsum(gaps) / gaps.sum()))
    values = np.array([_rand_complex(rng, 1.0) for _ in range(n + 1)])
    return ComponentPath.polyline(knots, values)


def _rand_piecewise_path(rng: random.Random) -> tuple[DPath, dict]:
    comps, frag = [], {"kind": "mixed"}
    for var in ("t", "s"):
        if rng.random() < 0.35:
            pc = _rand_polyline_component(rng)
            frag[f"gamma_{var}"] = {
                "kind": "polyline",
                "params": [float(x) for x in pc._knots],
                "values": [[v.real, v.imag] for v in pc._values],
            }
        else:
            d = _rand_domain(rng)
            e = _poly_expr(rng, var, rng.randint(1, 3), 0.8)
            pc = ComponentPath.from_expression(e, var, d)
            frag[f"gamma_{var}"] = {"kind": "expr", "expr": e, "domain": list(d)}
        comps.append(pc)
    return DPath(comps[0], comps[1]), frag


def _rand_poly_integrand(
    rng: random.Random, degree: int = 3, scale: float = 0.7, with_primitive: bool = False
):
    """Random polynomial integrand; optionally also its term-by-term primitive."""
    deg1, deg2 = rng.randint(0, degree), rng.randint(0, degree)
    c1 = [_rand_complex(rng, scale) for _ in range(deg1 + 1)]
    c2 = [_rand_complex(rng, scale) for _ in range(deg2 + 1)]

    def text(coeffs) -> str:
        parts = []
        for k, c in enumerate(coeffs):
            lit = f"({_fmt_complex(c)})"
            parts.append(lit if k == 0 else (f"{lit}*z" if k == 1 else f"{lit}*z^{k}"))
        return " + ".join(parts)

    f = Integrand.from_expressions(text(c1), text(c2))
    frag = {"f1": f.text1, "f2": f.text2}
    if not with_primitive:
        return f, frag
    p1 = [0j] + [c / (k + 1) for k, c in enumerate(c1)]
    p2 = [0j] + [c / (k + 1) for k, c in enumerate(c2)]
    big = Integrand.from_expressions(text(p1), text(p2))
    frag.update({"F1": big.text1, "F2": big.text2})
    return f, big, frag


# -- individual suites ---------------------------------------------------------------


def _suite_algebra(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("algebra", seed, n, True)
    for i in range(n):
        a, b, c = (_rand_bicomplex(rng, 10.0) for _ in range(3))

        def close(u: BiComplex, v: BiComplex, tol: float) -> bool:
            return abs(u.w1 - v.w1) <= tol and abs(u.w2 - v.w2) <= tol

        checks = {
            "add-assoc": close((a + b) + c, a + (b + c), 1e-12),
            "mul-assoc": close((a * b) * c, a * (b * c), 1e-12),
            "mul-comm": close(a * b, b * a, 1e-12),
            "distrib": close(a * (b + c), a * b + a * c, 1e-12),
            "mod-mult": d_modulus(a * b).isclose(
                d_modulus(a) * d_modulus(b), 1e-10
            ),
            "mod-triangle": d_compare(
                d_modulus(a + b), d_modulus(a) + d_modulus(b)
            )
            in (DOrdering.LESS, DOrdering.EQUAL),
        }
        z1, z2 = a.to_cartesian()
        rt = BiComplex.from_cartesian(z1, z2)
        checks["cart-roundtrip"] = all(
            abs(u - v) <= 2 * math.ulp(max(abs(u), 1.0))
            for u, v in (
                (rt.w1.real, a.w1.real),
                (rt.w1.imag, a.w1.imag),
                (rt.w2.real, a.w2.real),
                (rt.w2.imag, a.w2.imag),
            )
        )

        x, y = _rand_hyperbolic(rng, 10.0), _rand_hyperbolic(rng, 10.0)
        t = _rand_hyperbolic(rng, 10.0)
        cxy = d_compare(x, y)
        checks["order-reflexive"] = d_compare(x, x) is DOrdering.EQUAL
        checks["order-antisym"] = not (
            cxy is DOrdering.LESS and d_compare(y, x) is DOrdering.LESS
        )
        if d_leq(x, y):
            checks["order-translate"] = d_leq(x + t, y + t, 1e-9)
        sup = sup_d([x, y, t])
        checks["sup-upper"] = all(d_leq(v, sup, 1e-12) for v in (x, y, t))
        checks["sup-attained"] = sup.v1 in (x.v1, y.v1, t.v1) and sup.v2 in (
            x.v2,
            y.v2,
            t.v2,
        )

        bad = [k for k, ok in checks.items() if not ok]
        if bad:
            res.passed = False
            res.failures.append(
                {"instance": i, "failed": bad, "a": str(a), "b": str(b), "c": str(c)}
            )
    return res


def _scalar_variation_oracle(pc: ComponentPath) -> float:
    """Independent scalar bounded-variation value for suite components.

    Polylines sum their chord lengths directly; expression components go
    through quadrature of the symbolic speed, never through the package's
    refinement machinery.  Near-zero dips of the speed are passed to quad
    as breakpoints so a kink close to an endpoint is not stepped over.
    """
    if pc.kind == "polyline":
        return float(sum(abs(v - u) for u, v in zip(pc._values[:-1], pc._values[1:])))
    ast = parse(pc.source)
    names = free_variables(ast)
    var = next(iter(names)) if names else "t"
    dast = differentiate(ast, var)

    def speed(x: float) -> float:
        return abs(complex(evaluate_component(dast, {var: complex(x)})))

    xs = np.linspace(pc.a, pc.b, 1025)
    sv = np.abs(evaluate_component(dast, {var: xs.astype(complex)}))
    sv = np.broadcast_to(np.asarray(sv), xs.shape)
    peak = float(np.max(sv))
    dips = [float(x) for x, s in zip(xs[1:-1], sv[1:-1]) if peak > 0 and s < 0.05 * peak]
    val, _ = quad(speed, pc.a, pc.b, epsabs=1e-11, limit=400, points=dips[:40] or None)
    return float(val)


def _suite_variation_decomposition(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("variation-decomposition", seed, n, True)
    for i in range(n):
        path, frag = _rand_piecewise_path(rng)
        report = total_variation(path, tol=1e-9)
        o1 = _scalar_variation_oracle(path.gamma1)
        o2 = _scalar_variation_oracle(path.gamma2)
        ok = (
            report.converged
            and abs(report.total.v1 - o1) < 1e-8
            and abs(report.total.v2 - o2) < 1e-8
        )
        if not ok:
            res.passed = False
            res.failures.append(
                {
                    "instance": i,
                    "path": frag,
                    "got": [report.total.v1, report.total.v2],
                    "oracle": [o1, o2],
                }
            )
    return res


def _suite_smooth_length(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("smooth-length", seed, n, True)
    circle = DPath.bicircle()
    length = smooth_length(circle)
    if abs(length.v1 - 2 * math.pi) > 1e-8 or abs(length.v2 - 2 * math.pi) > 1e-8:
        res.passed = False
        res.failures.append({"instance": "bicircle", "got": [length.v1, length.v2]})
    for i in range(n):
        path, frag = _rand_expr_path(rng)
        v = total_variation(path, tol=1e-9).total
        ln = smooth_length(path)
        if abs(v.v1 - ln.v1) > 1e-6 or abs(v.v2 - ln.v2) > 1e-6:
            res.passed = False
            res.failures.append(
                {"instance": i, "path": frag, "variation": [v.v1, v.v2], "length": [ln.v1, ln.v2]}
            )
    return res


def _suite_tag_independence(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("tag-independence", seed, n, True)
    tol = 1e-5
    for i in range(n):
        path, pfrag = _rand_expr_path(
            rng, degree=2, scale=0.5, lo_min=-0.5, lo_max=0.1, len_min=0.3, len_max=0.8
        )
        f, ffrag = _rand_poly_integrand(rng, degree=2, scale=0.5)
        values = {}
        ok = True
        for tag in (Tag.LEFT, Tag.MIDPOINT, Tag.RIGHT):
            cfg = IntegrationConfig(tol=Hyperbolic(tol, tol), max_levels=22, tag=tag)
            r = line_integral(f, path, cfg)
            values[tag.value] = r
            ok = ok and r.converged
        oracle = line_integral(
            f, path, IntegrationConfig(tol=Hyperbolic(tol, tol), max_levels=22), componentwise=True
        )
        ok = ok and oracle.converged
        if ok:
            tags = list(values.values())
            for a in range(3):
                for b in range(a + 1, 3):
                    gap = d_modulus(tags[a].value - tags[b].value)
                    ok = ok and gap.v1 < 3 * tol and gap.v2 < 3 * tol
            for r in tags:
                gap = d_modulus(r.value - oracle.value)
                ok = ok and gap.v1 < 2 * tol and gap.v2 < 2 * tol
        if not ok:
            res.passed = False
            res.failures.append(
                {
                    "instance": i,
                    "path": pfrag,
                    "f": ffrag,
                    "values": {k: str(v.value) for k, v in values.items()},
                    "oracle": str(oracle.value),
                }
            )
    return res


_SUITE_CFG = IntegrationConfig(tol=Hyperbolic(1e-8, 1e-8), max_levels=22)


def _suite_linearity(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("linearity", seed, n, True)
    for i in range(n):
        path, pfrag = _rand_expr_path(rng, degree=2)
        other, _ = _rand_expr_path(rng, degree=2)
        # put the second path over the same interval so the integrators combine
        other = DPath(
            ComponentPath.from_expression(other.gamma1.source, "t", path.gamma1.domain),
            ComponentPath.from_expression(other.gamma2.source, "s", path.gamma2.domain),
        )
        f, ffrag = _rand_poly_integrand(rng, degree=2)
        g, gfrag = _rand_poly_integrand(rng, degree=2)
        a, b = _rand_bicomplex(rng), _rand_bicomplex(rng)

        combo = Integrand(
            lambda w, a=a, b=b, f=f, g=g: a.w1 * np.asarray(f.eval1(w)) + b.w1 * np.asarray(g.eval1(w)),
            lambda w, a=a, b=b, f=f, g=g: a.w2 * np.asarray(f.eval2(w)) + b.w2 * np.asarray(g.eval2(w)),
        )
        lhs = rs_integral(combo, path, _SUITE_CFG).value
        rhs = a * rs_integral(f, path, _SUITE_CFG).value + b * rs_integral(g, path, _SUITE_CFG).value
        gap1 = d_modulus(lhs - rhs)

        mixed = combine(a, path, b, other)
        lhs2 = rs_integral(f, mixed, _SUITE_CFG).value
        rhs2 = a * rs_integral(f, path, _SUITE_CFG).value + b * rs_integral(f, other, _SUITE_CFG).value
        gap2 = d_modulus(lhs2 - rhs2)

        if max(gap1.v1, gap1.v2, gap2.v1, gap2.v2) > 1e-7:
            res.passed = False
            res.failures.append(
                {"instance": i, "path": pfrag, "f": ffrag, "g": gfrag,
                 "gap_integrand": [gap1.v1, gap1.v2], "gap_integrator": [gap2.v1, gap2.v2]}
            )
    return res


def _suite_additivity(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("additivity", seed, n, True)
    for i in range(n):
        path, pfrag = _rand_expr_path(rng, degree=2)
        f, ffrag = _rand_poly_integrand(rng, degree=2)
        (a1, b1), (a2, b2) = path.interval.project()
        cuts = sorted(rng.uniform(0.15, 0.85) for _ in range(rng.randint(1, 3)))
        points = [path.interval.lo]
        for u in cuts:
            points.append(Hyperbolic(a1 + u * (b1 - a1), a2 + u * (b2 - a2)))
        points.append(path.interval.hi)

        whole = rs_integral(f, path, _SUITE_CFG).value
        total = BiComplex(0, 0)
        for lo, hi in zip(points[:-1], points[1:]):
            piece = path.restrict(DInterval(lo, hi))
            total = total + rs_integral(f, piece, _SUITE_CFG).value
        gap = d_modulus(whole - total)
        if gap.v1 > 1e-7 or gap.v2 > 1e-7:
            res.passed = False
            res.failures.append(
                {"instance": i, "path": pfrag, "f": ffrag, "cuts": cuts, "gap": [gap.v1, gap.v2]}
            )
    return res


def _suite_orientation(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("orientation", seed, n, True)
    for i in range(n):
        path, pfrag = _rand_expr_path(rng, degree=2)
        f, ffrag = _rand_poly_integrand(rng, degree=2)
        fwd = line_integral(f, path, _SUITE_CFG).value
        bwd = line_integral(f, path.reverse(), _SUITE_CFG).value
        gap = d_modulus(fwd + bwd)
        if gap.v1 > 1e-7 or gap.v2 > 1e-7:
            res.passed = False
            res.failures.append({"instance": i, "path": pfrag, "f": ffrag, "gap": [gap.v1, gap.v2]})
    return res


def _suite_translation(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("translation", seed, n, True)
    for i in range(n):
        path, pfrag = _rand_expr_path(rng, degree=2)
        f, ffrag = _rand_poly_integrand(rng, degree=2)
        c = _rand_bicomplex(rng)
        shifted = Integrand(
            lambda w, f=f, c=c: f.eval1(np.asarray(w) - c.w1),
            lambda w, f=f, c=c: f.eval2(np.asarray(w) - c.w2),
        )
        lhs = line_integral(f, path, _SUITE_CFG).value
        rhs = line_integral(shifted, path.translate(c), _SUITE_CFG).value
        gap = d_modulus(lhs - rhs)
        if gap.v1 > 1e-7 or gap.v2 > 1e-7:
            res.passed = False
            res.failures.append(
                {"instance": i, "path": pfrag, "f": ffrag,
                 "c": str(c), "gap": [gap.v1, gap.v2]}
            )
    return res


def _suite_reparametrization(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("reparametrization", seed, n, True)
    for i in range(n):
        # strictly positive intervals keep the map's values out of the
        # zero-divisor set
        path, pfrag = _rand_expr_path(rng, degree=2, lo_min=0.1, lo_max=0.5)
        f, ffrag = _rand_poly_integrand(rng, degree=2)
        (a1, b1), (a2, b2) = path.interval.project()

        def phi_expr(lo: float, hi: float, var: str) -> str:
            c = rng.uniform(0.0, 1.5)
            return f"{lo!r} + {hi - lo!r}*({var} + {c!r}*{var}^2)/{1 + c!r}"

        e1 = phi_expr(a1, b1, "t")
        e2 = phi_expr(a2, b2, "s")
        phi = DPath(
            ComponentPath.from_expression(e1, "t", (0.0, 1.0)),
            ComponentPath.from_expression(e2, "s", (0.0, 1.0)),
        )
        composed = reparametrize(path, phi)
        lhs = line_integral(f, path, _SUITE_CFG).value
        rhs = line_integral(f, composed, _SUITE_CFG).value
        gap = d_modulus(lhs - rhs)
        if gap.v1 > 2e-8 or gap.v2 > 2e-8:
            res.passed = False
            res.failures.append(
                {"instance": i, "path": pfrag, "f": ffrag,
                 "phi1": e1, "phi2": e2, "gap": [gap.v1, gap.v2]}
            )
    return res


def _suite_ml_bound(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("ml-bound", seed, n, True)
    for i in range(n):
        path, pfrag = _rand_expr_path(rng, degree=2)
        f, ffrag = _rand_poly_integrand(rng, degree=2)
        value = d_modulus(line_integral(f, path, _SUITE_CFG).value)
        bound = ml_bound(f, path)
        ok = d_compare(value, bound + Hyperbolic(1e-7, 1e-7)) in (
            DOrdering.LESS,
            DOrdering.EQUAL,
        )
        if not ok:
            res.passed = False
            res.failures.append(
                {"instance": i, "path": pfrag, "f": ffrag,
                 "value": [value.v1, value.v2], "bound": [bound.v1, bound.v2]}
            )
    return res


def _suite_ftc(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("ftc", seed, n, True)
    for i in range(n):
        path, pfrag = _rand_expr_path(rng, degree=2)
        f, big, ffrag = _rand_poly_integrand(rng, degree=3, with_primitive=True)
        numeric = line_integral(f, path, _SUITE_CFG).value
        exact = ftc_eval(big, path, f)
        gap = d_modulus(numeric - exact)
        if gap.v1 > 1e-6 or gap.v2 > 1e-6:
            res.passed = False
            res.failures.append(
                {"instance": i, "path": pfrag, "f": ffrag, "gap": [gap.v1, gap.v2]}
            )
    return res


def _suite_closed_curve(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("closed-curve", seed, n, True)
    circle = DPath.bicircle()
    for i in range(n):
        f, ffrag = _rand_poly_integrand(rng, degree=3)
        value = d_modulus(line_integral(f, circle, _SUITE_CFG).value)
        if value.v1 > 1e-6 or value.v2 > 1e-6:
            res.passed = False
            res.failures.append({"instance": i, "f": ffrag, "value": [value.v1, value.v2]})
    # contrast witness: 1/z has no primitive on the circle, so the loop
    # integral must come out as 2*pi*i1 instead of 0
    witness = line_integral(Integrand.from_expressions("1/z"), circle, _SUITE_CFG).value
    expected = BiComplex(2j * math.pi, 2j * math.pi)
    gap = d_modulus(witness - expected)
    if gap.v1 > 1e-6 or gap.v2 > 1e-6:
        res.passed = False
        res.failures.append({"instance": "1/z-witness", "got": str(witness)})
    return res


def _suite_variation_monotonicity(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("variation-monotonicity", seed, n, True)
    for i in range(n):
        path, pfrag = _rand_expr_path(rng, degree=3)
        part = DPartition.trivial(path.interval).refine_dyadic(rng.randint(1, 3))
        finer = part.refine_dyadic(rng.randint(1, 2))
        coarse, fine = variation_sum(path, part), variation_sum(path, finer)
        ok = d_compare(coarse, fine, 1e-12) in (DOrdering.LESS, DOrdering.EQUAL)
        if not ok:
            res.passed = False
            res.failures.append(
                {"instance": i, "path": pfrag,
                 "coarse": [coarse.v1, coarse.v2], "fine": [fine.v1, fine.v2]}
            )
    return res


def _suite_subadditivity(seed: int, n: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("subadditivity", seed, n, True)
    for i in range(n):
        path, pfrag = _rand_expr_path(rng, degree=2)
        other = DPath(
            ComponentPath.from_expression(
                _poly_expr(rng, "t", 2, 0.8), "t", path.gamma1.domain
            ),
            ComponentPath.from_expression(
                _poly_expr(rng, "s", 2, 0.8), "s", path.gamma2.domain
            ),
        )
        a, b = _rand_bicomplex(rng), _rand_bicomplex(rng)
        mixed = combine(a, path, b, other)
        lhs = total_variation(mixed, tol=1e-9).total
        rhs = (
            d_modulus(a) * total_variation(path, tol=1e-9).total
            + d_modulus(b) * total_variation(other, tol=1e-9).total
        )
        ok = d_compare(lhs, rhs + Hyperbolic(1e-8, 1e-8)) in (
            DOrdering.LESS,
            DOrdering.EQUAL,
        )
        if not ok:
            res.passed = False
            res.failures.append(
                {"instance": i, "path": pfrag, "lhs": [lhs.v1, lhs.v2], "rhs": [rhs.v1, rhs.v2]}
            )
    return res


SUITES: dict[str, Callable[[int, int], SuiteResult]] = {
    "algebra": _suite_algebra,
    "variation-decomposition": _suite_variation_decomposition,
    "smooth-length": _suite_smooth_length,
    "tag-independence": _suite_tag_independence,
    "linearity": _suite_linearity,
    "additivity": _suite_additivity,
    "orientation": _suite_orientation,
    "translation": _suite_translation,
    "reparametrization": _suite_reparametrization,
    "ml-bound": _suite_ml_bound,
    "ftc": _suite_ftc,
    "closed-curve": _suite_closed_curve,
    "variation-monotonicity": _suite_variation_monotonicity,
    "subadditivity": _suite_subadditivity,
}


def available_suites() -> list[str]:
    return sorted(SUITES)


def run_suite(name: str, seed: int = 0, n: int = 100) -> SuiteResult:
    """Run one named suite on n seeded instances."""
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuiteError(
            f"unknown suite {name!r}; available: {', '.join(available_suites())}"
        ) from None
    return fn(seed, n)
