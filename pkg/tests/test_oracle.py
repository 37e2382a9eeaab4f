import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulersum.oracle import (
    DivergentSum,
    Factor,
    Kernel,
    OracleConfig,
    Power,
    Shift,
    SumDescriptor,
    H,
    L,
    W,
    Y,
    Z,
    euler_sum,
    evaluate,
    exact_term,
    inner,
    integral_identity_check,
    integral_sides,
    kernel_partial_fraction,
    nested_inner,
    plan,
    term_values,
)

z = lambda s: float(mpmath.zeta(s))
LN2 = math.log(2)
LI4_HALF = float(mpmath.polylog(4, 0.5))

# sum zeta_n(2)/n^6, computed with mpmath.nsum at 30 digits
S206 = 1.021897096614780327741345


class TestEvaluate:
    def test_s206(self):
        r = evaluate(SumDescriptor((Z(2),), Power(6)))
        assert abs(r.value - S206) < 1e-14

    def test_harmonic_kernel_is_zeta2(self):
        r = evaluate(SumDescriptor((H(),), Kernel(0, 1)))
        assert abs(r.value - z(2)) < 1e-8

    def test_alternating_closed_form(self):
        r = evaluate(SumDescriptor((L(1),), Power(3), alternating=True))
        closed = 1.5 * z(4) + 0.5 * z(2) * LN2**2 - LN2**4 / 12 - 2 * LI4_HALF
        assert abs(r.value - closed) < 1e-12

    @pytest.mark.parametrize("desc, exact", [
        (SumDescriptor((H(),), Power(2)), 2 * z(3)),
        (SumDescriptor((H(2),), Power(2)), 17 / 4 * z(4)),
        (SumDescriptor((H(),), Power(3)), 5 / 4 * z(4)),
        (SumDescriptor((H(),), Power(1), alternating=True), z(2) / 2 - LN2**2 / 2),
        (SumDescriptor((H(),), Power(0), weight=Fraction(1, 2)), 2 * LN2),
        (SumDescriptor((), Shift(1), alternating=True), 1 - LN2),
        (SumDescriptor((W(2),), Kernel(0, 1)), z(2)),
    ])
    def test_classical_values(self, desc, exact):
        r = evaluate(desc)
        assert abs(r.value - exact) < 1e-10
        assert abs(r.value - exact) <= max(5 * r.err, 1e-13)

    @pytest.mark.parametrize("desc", [
        SumDescriptor((H(),), Power(1)),
        SumDescriptor((), Power(1)),
        SumDescriptor((L(1),), Power(0), alternating=True),
        SumDescriptor((), Shift(0)),
    ])
    def test_divergent(self, desc):
        with pytest.raises(DivergentSum, match="divergent sum"):
            evaluate(desc)

    def test_euler_sum_builder(self):
        d = euler_sum(pi1=[(1, 2), (2, 1)], pi2=[], p=2)
        assert d == SumDescriptor((Z(1, 2), Z(2)), Power(2))
        assert euler_sum(pi2=[(1, 1)], p=3, bar=True).alternating

    @pytest.mark.parametrize("desc", [
        SumDescriptor((Z(2), H()), Power(3)),
        SumDescriptor((L(1, 2),), Power(2), alternating=True),
        SumDescriptor((Y(3),), Kernel(1, 3)),
        SumDescriptor((W(3),), Kernel(0, 2)),
        SumDescriptor((inner(2),), Power(3)),
        SumDescriptor((Z(1, 1, Fraction(-1, 2)),), Power(2)),
        SumDescriptor((Z(2, 1, -1),), Shift(2), weight=Fraction(1, 3)),
    ])
    def test_incremental_terms_match_exact(self, desc):
        n = np.array([1, 2, 3, 10, 99, 500, 1000])
        got = term_values(desc, 1000)[n - 1]
        want = np.array([float(exact_term(desc, int(i))) for i in n])
        assert np.allclose(got, want, rtol=1e-12, atol=0)

    @pytest.mark.parametrize("desc", [
        SumDescriptor((Z(2),), Power(3)),
        SumDescriptor((H(2),), Power(4)),
        SumDescriptor((Z(3),), Kernel(0, 2)),
        SumDescriptor((L(2),), Power(3)),
    ])
    def test_doubling_N_within_error(self, desc):
        a = evaluate(desc, OracleConfig(N=20000))
        b = evaluate(desc, OracleConfig(N=40000))
        assert abs(a.value - b.value) < 3 * a.err

    def test_stirling_weight_grows_like_log_power(self):
        vals = term_values(SumDescriptor((W(3),), Power(0), weight=1), 10**5)
        n = 10**5
        k = np.arange(1, n + 1, dtype=float)
        h1, h2 = math.fsum(1 / k), math.fsum(1 / k**2)
        assert vals[-1] == pytest.approx((h1**2 - h2) / 2, rel=1e-12)

    def test_factor_validation(self):
        with pytest.raises(ValueError):
            Factor("bogus", 1)
        with pytest.raises(ValueError):
            Z(0)
        with pytest.raises(ValueError):
            Z(1, 0)
        with pytest.raises(ValueError):
            Z(1, 1, 2)
        with pytest.raises(ValueError):
            Kernel(3, 2)


class TestPlan:
    def test_defaults(self):
        cfg = OracleConfig()
        assert plan(SumDescriptor((H(),), Power(2)), cfg).N == 10**6
        assert plan(SumDescriptor((H(),), Power(3)), cfg).N == 10**5
        p = plan(SumDescriptor((L(1),), Power(2)), cfg)
        assert (p.method, p.N) == ("paired", 4 * 10**4)
        assert plan(SumDescriptor((), Power(0), weight=Fraction(1, 2)), cfg).method == "geometric"

    def test_override(self):
        assert plan(SumDescriptor((H(),), Power(3)), OracleConfig(N=777)).N == 777

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("EULERSUM_DEFAULT_N", "5000")
        assert OracleConfig.from_env().N == 5000
        monkeypatch.setenv("EULERSUM_DEFAULT_N", "7")
        with pytest.raises(ValueError):
            OracleConfig.from_env()


class TestKernelPartialFraction:
    @pytest.mark.parametrize("k, p, n, expected", [(2, 1, 3, Fraction(1, 10)), (1, 2, 1, Fraction(1, 2)),
                                                   (3, 3, 2, Fraction(1, 135))])
    def test_examples(self, k, p, n, expected):
        parts = kernel_partial_fraction(k, p, n)
        assert sum(c / Fraction(n) ** e for c, e in parts) == expected

    def test_all_small_arguments(self):
        for k in range(1, 11):
            for p in range(1, 11):
                for n in range(1, 11):
                    parts = kernel_partial_fraction(k, p, n)
                    assert sum(c / Fraction(n) ** e for c, e in parts) == Fraction(1, k**p * (n + k))


class TestNestedInner:
    def test_small(self):
        assert nested_inner(1, 2) == 1.0
        assert nested_inner(2, 1) == 1.75
        assert nested_inner(0, 3) == 0.0

    def test_converges_to_euler_sum(self):
        # remainder of sum H_k/k^2 beyond n is (ln n + gamma + 1)/n to leading order
        n = 10**4
        gap = 2 * z(3) - nested_inner(n, 2)
        assert abs(gap - (math.log(n) + float(mpmath.euler) + 1) / n) < 1e-6


class TestIntegrals:
    def test_log_power_moment(self):
        lhs, rhs = integral_sides("eq2_14", {"n": 2, "k": 2})
        assert abs(lhs.value - 7 / 4) < 1e-10
        assert abs(rhs.value - 7 / 4) < 1e-15

    def test_stirling_integral(self):
        lhs, rhs = integral_sides("eq2_26", {"p": 3})
        assert abs(lhs.value - 2 * z(3)) < 1e-10

    def test_polylog_kernel_integral(self):
        lhs, rhs = integral_sides("eq2_5", {"m": 2, "r": 0, "k": 1})
        series = evaluate(SumDescriptor((Z(2),), Kernel(0, 1)))
        assert abs(lhs.value - series.value) < 1e-8

    @settings(max_examples=12, deadline=None)
    @given(st.integers(1, 10), st.integers(0, 4))
    def test_log_power_moments_property(self, n, k):
        assert integral_identity_check("eq2_14", {"n": n, "k": k}).passed

    def test_unknown_integral(self):
        with pytest.raises(ValueError):
            integral_sides("eq9_9", {})
