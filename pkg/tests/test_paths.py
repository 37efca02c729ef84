import cmath
import math
import random

import numpy as np
import pytest
from scipy.integrate import quad

from hypercurve import (
    BiComplex,
    ComponentPath,
    DInterval,
    DPartition,
    DOrdering,
    DPath,
    Hyperbolic,
    J,
    NotDifferentiableError,
    OutOfDomainError,
    ZERO,
    arc_length,
    combine,
    d_compare,
    d_leq,
    d_modulus,
    sample_trace,
    smooth_length,
    total_variation,
    trace_csv,
    variation_sum,
)

H = Hyperbolic
UNIT = DInterval(H(0, 0), H(1, 1))
IDENT = DPath.identity(UNIT)


def expr_path(e1, d1, e2, d2):
    return DPath(
        ComponentPath.from_expression(e1, "t", d1),
        ComponentPath.from_expression(e2, "s", d2),
    )


class TestEval:
    def test_identity_midpoint(self):
        assert IDENT.eval(H(0.5, 0.5)) == BiComplex(0.5, 0.5)

    def test_componentwise_powers(self):
        g = expr_path("t^2", (0, 3), "s^3", (0, 4))
        assert g.eval(H(2, 3)).isclose(BiComplex(4, 27), 1e-12)

    def test_endpoints(self):
        g = expr_path("t^2", (0, 3), "s^3", (0, 4))
        assert g.eval(g.interval.lo) == g.start()
        assert g.eval(g.interval.hi) == g.end()

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomainError):
            IDENT.eval(H(1.5, 0.5))
        with pytest.raises(OutOfDomainError):
            IDENT.eval(H(-0.1, 0.5))

    def test_product_type_decomposition(self):
        # G(t e1 + s e2) always splits as gamma1(t) e1 + gamma2(s) e2
        g = expr_path("exp(i1*t)", (0, 2), "s^2 - s", (0, 2))
        rng = random.Random(1)
        for _ in range(20):
            t, s = rng.uniform(0, 2), rng.uniform(0, 2)
            v = g.eval(H(t, s))
            assert abs(v.w1 - cmath.exp(1j * t)) < 1e-12
            assert abs(v.w2 - (s * s - s)) < 1e-12


class TestDerivative:
    def test_square_path_analytic(self):
        g = expr_path("t^2", (0, 3), "s^2", (0, 3))
        assert g.derivative(H(1, 2)).isclose(BiComplex(2, 4), 1e-12)

    def test_square_path_finite_difference(self):
        g = DPath(
            ComponentPath.from_callable(lambda t: t * t, (0, 3)),
            ComponentPath.from_callable(lambda s: s * s, (0, 3)),
        )
        assert g.derivative(H(1, 2)).isclose(BiComplex(2, 4), 1e-7)

    def test_constant_path(self):
        g = DPath(
            ComponentPath.from_callable(lambda t: 2 + 1j, (0, 1)),
            ComponentPath.from_callable(lambda s: -1 + 0j, (0, 1)),
        )
        assert g.derivative(H(0.5, 0.5)).isclose(ZERO, 1e-12)

    def test_identity_path(self):
        assert IDENT.derivative(H(0.25, 0.75)) == BiComplex(1, 1)

    def test_endpoints_use_one_sided_stencils(self):
        g = DPath(
            ComponentPath.from_callable(lambda t: t**3, (0, 1)),
            ComponentPath.from_callable(lambda s: s**3, (0, 1)),
        )
        assert g.derivative(H(0, 0)).isclose(ZERO, 1e-6)
        assert g.derivative(H(1, 1)).isclose(BiComplex(3, 3), 1e-5)

    def test_unstable_difference_raises(self):
        g = DPath(
            ComponentPath.from_callable(lambda t: math.sqrt(t), (0, 1)),
            ComponentPath.from_callable(lambda s: s, (0, 1)),
        )
        with pytest.raises(NotDifferentiableError):
            g.derivative(H(0, 0))


class TestVariationSum:
    def test_identity_telescopes(self):
        p = DPartition.from_points(UNIT, [H(0, 0), H(0.5, 0.5), H(1, 1)])
        assert variation_sum(IDENT, p) == H(1, 1)

    def test_monotone_square_telescopes(self):
        g = expr_path("t^2", (0, 1), "s^2", (0, 1))
        p = DPartition.from_points(UNIT, [H(0, 0), H(0.5, 0.5), H(1, 1)])
        assert variation_sum(g, p).isclose(H(1, 1), 1e-15)

    def test_constant_path_zero(self):
        g = DPath(
            ComponentPath.from_callable(lambda t: 1j, (0, 1)),
            ComponentPath.from_callable(lambda s: 1j, (0, 1)),
        )
        p = DPartition.trivial(UNIT).refine_dyadic(3)
        assert variation_sum(g, p) == H(0, 0)

    def test_decomposes_into_component_sums(self):
        g = expr_path("exp(i1*t)", (0, 2), "s^2 - s", (0, 1))
        p = DPartition.trivial(g.interval).refine_dyadic(3)
        t, s = p.project()
        v1 = sum(
            abs(cmath.exp(1j * b) - cmath.exp(1j * a)) for a, b in zip(t[:-1], t[1:])
        )
        v2 = sum(abs((b * b - b) - (a * a - a)) for a, b in zip(s[:-1], s[1:]))
        got = variation_sum(g, p)
        assert abs(got.v1 - v1) < 1e-12 and abs(got.v2 - v2) < 1e-12

    def test_refinement_monotonicity(self):
        rng = random.Random(23)
        for _ in range(30):
            g = expr_path(
                f"({rng.uniform(-1, 1)!r})*t^3 + ({rng.uniform(-1, 1)!r})*t",
                (0, 1),
                f"({rng.uniform(-1, 1)!r})*s^2",
                (0, 1),
            )
            p = DPartition.trivial(UNIT).refine_dyadic(rng.randint(1, 3))
            q = p.refine_dyadic(rng.randint(1, 3))
            assert d_compare(variation_sum(g, p), variation_sum(g, q), 1e-12) in (
                DOrdering.LESS,
                DOrdering.EQUAL,
            )


class TestTotalVariation:
    def test_identity_on_rectangle(self):
        g = DPath.identity(DInterval(H(0, 0), H(2, 3)))
        r = total_variation(g)
        assert r.converged
        assert r.total.isclose(H(2, 3), 1e-12)
        assert r.per_component == (r.total.v1, r.total.v2)

    def test_squares_against_speed_integrals(self):
        # integral of |2t| over [0,1] is 1; over [0,2] it is 4
        g = expr_path("t^2", (0, 1), "s^2", (0, 2))
        r = total_variation(g, tol=1e-9)
        assert r.converged
        assert r.total.isclose(H(1, 4), 1e-6)

    def test_constant_path(self):
        g = DPath(
            ComponentPath.from_callable(lambda t: 5j, (0, 1)),
            ComponentPath.from_callable(lambda s: 5j, (0, 1)),
        )
        r = total_variation(g)
        assert r.converged and r.total == H(0, 0)

    def test_polyline_is_exact_without_refinement(self):
        g = DPath(
            ComponentPath.polyline([0, 1, 2], [0j, 1 + 1j, 2j]),
            ComponentPath.polyline([0, 1, 2], [0j, 3j, 0j]),
        )
        r = total_variation(g)
        assert r.converged and r.levels == 0
        assert r.total.isclose(H(2 * math.sqrt(2), 6.0), 1e-15)

    def test_report_partition_matches_levels(self):
        g = expr_path("t^2", (0, 1), "s^2", (0, 2))
        r = total_variation(g, tol=1e-6)
        assert r.partition_used is not None
        assert r.partition_used.n_steps == 2**r.levels

    def test_degenerate_interval_has_no_partition(self):
        g = DPath.identity(DInterval(H(0, 0), H(2, 0)))
        r = total_variation(g)
        assert r.partition_used is None
        assert r.total.isclose(H(2, 0), 1e-12)

    def test_unbounded_variation_reports_nonconvergence(self):
        def wiggle(t: float) -> complex:
            return complex(t * math.sin(1 / t) if t > 0 else 0.0)

        g = DPath(
            ComponentPath.from_callable(wiggle, (0, 0.5)),
            ComponentPath.from_callable(lambda s: s, (0, 0.5)),
        )
        r = total_variation(g, tol=1e-10, max_levels=12)
        assert not r.converged

    def test_decomposition_against_scalar_oracle(self):
        rng = random.Random(31)
        for _ in range(20):
            c3, c1 = rng.uniform(-1, 1), rng.uniform(-1, 1)
            d2 = rng.uniform(-1, 1)
            g = expr_path(
                f"({c3!r})*t^3 + ({c1!r})*t", (0, 1), f"({d2!r})*s^2 + s*i1", (0, 1)
            )
            r = total_variation(g, tol=1e-9)
            o1 = quad(lambda x: abs(3 * c3 * x * x + c1), 0, 1, epsabs=1e-12)[0]
            o2 = quad(lambda x: abs(complex(2 * d2 * x, 1)), 0, 1, epsabs=1e-12)[0]
            assert abs(r.total.v1 - o1) < 1e-8
            assert abs(r.total.v2 - o2) < 1e-8


class TestSmoothLength:
    def test_identity(self):
        assert smooth_length(IDENT).isclose(H(1, 1), 1e-12)

    def test_bicircle(self):
        ln = smooth_length(DPath.bicircle())
        assert abs(ln.v1 - 2 * math.pi) < 1e-8
        assert abs(ln.v2 - 2 * math.pi) < 1e-8

    def test_squares(self):
        g = expr_path("t^2", (0, 1), "s^2", (0, 1))
        assert smooth_length(g).isclose(H(1, 1), 1e-10)

    def test_agrees_with_variation(self):
        g = expr_path("t^3 - t", (0, 1.5), "exp(i1*s)", (0, 2))
        v = total_variation(g, tol=1e-9).total
        ln = smooth_length(g)
        assert abs(v.v1 - ln.v1) < 1e-6 and abs(v.v2 - ln.v2) < 1e-6


class TestArcLength:
    def test_identity_midpoint(self):
        assert arc_length(IDENT, H(0.5, 0.5)).isclose(H(0.5, 0.5), 1e-12)

    def test_at_start_is_zero(self):
        assert arc_length(IDENT, H(0, 0)) == H(0, 0)

    def test_bicircle_half_turn(self):
        g = DPath.bicircle()
        got = arc_length(g, H(math.pi, math.pi))
        assert got.isclose(H(math.pi, math.pi), 1e-9)

    def test_total_matches_variation(self):
        g = expr_path("t^2 + t*i1", (0, 1), "s^3", (0, 1))
        got = arc_length(g, g.interval.hi)
        want = total_variation(g, tol=1e-9).total
        assert abs(got.v1 - want.v1) < 1e-8 and abs(got.v2 - want.v2) < 1e-8

    def test_nondecreasing_in_tau(self):
        g = expr_path("exp(i1*t)", (0, 2), "s^2 - s", (0, 2))
        prev = H(0, 0)
        for u in np.linspace(0.2, 2.0, 7):
            cur = arc_length(g, H(u, u))
            assert d_leq(prev, cur, 1e-12)
            prev = cur

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomainError):
            arc_length(IDENT, H(2, 2))


class TestReverseTranslate:
    def test_reverse_identity_evaluation(self):
        rev = IDENT.reverse()
        assert rev.eval(H(-1, -1)) == BiComplex(1, 1)
        assert rev.interval.project() == ((-1.0, 0.0), (-1.0, 0.0))

    def test_reverse_is_involution(self):
        g = expr_path("t^2 + t*i1", (0, 2), "exp(i1*s)", (0, 1))
        back = g.reverse().reverse()
        rng = random.Random(3)
        for _ in range(10):
            tau = H(rng.uniform(0, 2), rng.uniform(0, 1))
            assert g.eval(tau) == back.eval(tau)

    def test_reverse_swaps_endpoints(self):
        g = DPath.bicircle(radius=2.0, turns=0.5)
        rev = g.reverse()
        assert rev.start() == g.end()
        assert rev.end() == g.start()

    def test_reverse_preserves_variation(self):
        g = expr_path("t^2 + t*i1", (0, 1), "s^3 - s", (0, 1))
        v, vr = total_variation(g).total, total_variation(g.reverse()).total
        assert v.isclose(vr, 1e-9)

    def test_polyline_reverse_stays_exact(self):
        pl = ComponentPath.polyline([0, 0.3, 1], [0j, 1j, 1 + 1j])
        rev = pl.reversed()
        assert rev.kind == "polyline"
        assert rev.eval(-1.0) == pl.eval(1.0)
        assert rev.variation_between(-1, 0) == pl.variation_between(0, 1)

    def test_translate_examples(self):
        shifted = IDENT.translate(BiComplex(1, 1))
        assert shifted.eval(H(0, 0)) == BiComplex(1, 1)
        same = IDENT.translate(ZERO)
        assert same.eval(H(0.3, 0.7)) == IDENT.eval(H(0.3, 0.7))

    def test_translate_bicircle_by_j(self):
        g = DPath.bicircle().translate(J)
        v = g.eval(H(math.pi / 2, math.pi / 2))
        want = BiComplex(1j, 1j) + J
        assert v.isclose(want, 1e-12)

    def test_translate_preserves_variation(self):
        g = expr_path("t^2", (0, 1), "s^3", (0, 1))
        c = BiComplex(2 - 1j, 0.5j)
        assert total_variation(g).total.isclose(total_variation(g.translate(c)).total, 1e-9)


class TestClosedAndCombine:
    def test_bicircle_closed(self):
        assert DPath.bicircle().is_closed()

    def test_identity_not_closed(self):
        assert not IDENT.is_closed()

    def test_constant_closed(self):
        g = DPath(
            ComponentPath.from_callable(lambda t: 1j, (0, 1)),
            ComponentPath.from_callable(lambda s: 2j, (0, 1)),
        )
        assert g.is_closed()

    def test_combine_evaluates_linearly(self):
        g = expr_path("t^2", (0, 1), "s", (0, 1))
        l = expr_path("t", (0, 1), "s^3", (0, 1))
        a, b = BiComplex(2, -1j), BiComplex(0.5, 1 + 1j)
        mixed = combine(a, g, b, l)
        tau = H(0.4, 0.9)
        want = a * g.eval(tau) + b * l.eval(tau)
        assert mixed.eval(tau).isclose(want, 1e-12)

    def test_subadditivity_of_variation(self):
        rng = random.Random(47)
        for _ in range(15):
            g = expr_path(
                f"({rng.uniform(-1, 1)!r})*t^2", (0, 1), f"({rng.uniform(-1, 1)!r})*s^3", (0, 1)
            )
            l = expr_path(
                f"({rng.uniform(-1, 1)!r})*t", (0, 1), f"({rng.uniform(-1, 1)!r})*s^2", (0, 1)
            )
            a = BiComplex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            b = BiComplex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            lhs = total_variation(combine(a, g, b, l), tol=1e-10).total
            rhs = (
                d_modulus(a) * total_variation(g, tol=1e-10).total
                + d_modulus(b) * total_variation(l, tol=1e-10).total
            )
            assert d_compare(lhs, rhs + H(1e-8, 1e-8)) in (DOrdering.LESS, DOrdering.EQUAL)


class TestRestrictAndTrace:
    def test_restricted_eval_agrees(self):
        g = expr_path("t^2", (0, 2), "s^3", (0, 2))
        sub = g.restrict(DInterval(H(0.5, 0.25), H(1.5, 1.75)))
        tau = H(1.0, 1.0)
        assert sub.eval(tau) == g.eval(tau)
        with pytest.raises(OutOfDomainError):
            sub.eval(H(0.1, 0.1))

    def test_trace_decomposes_componentwise(self):
        g = expr_path("exp(i1*t)", (0, 2), "s^2", (0, 1))
        rows = sample_trace(g, 16)
        assert len(rows) == 17
        for t, s, w1, w2 in rows:
            assert abs(w1 - cmath.exp(1j * t)) < 1e-12
            assert abs(w2 - s * s) < 1e-12

    def test_trace_csv_shape(self):
        text = trace_csv(IDENT, 4)
        lines = text.strip().split("\n")
        assert lines[0] == "tau_v1,tau_v2,w1_re,w1_im,w2_re,w2_im"
        assert len(lines) == 6
        assert lines[1].startswith("0.0,0.0,")
