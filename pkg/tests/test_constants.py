import math
import threading
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from eulersum.constants import DomainError, alt_zeta, euler_gamma, li_real, ln2, polylog, zeta

mpmath.mp.dps = 30


@pytest.mark.parametrize("s, expected", [(2, 1.6449340668482264), (3, 1.2020569031595943),
                                         (8, 1.0040773561979443)])
def test_zeta_values(s, expected):
    r = zeta(s)
    assert abs(r.value - expected) < 1e-15
    assert r.err < 1e-13


@pytest.mark.parametrize("s", range(2, 17))
def test_zeta_against_mpmath(s):
    assert abs(zeta(s).value - float(mpmath.zeta(s))) < 1e-14


def test_zeta_divergent_argument():
    with pytest.raises(DomainError, match="divergent zeta argument"):
        zeta(1)


@pytest.mark.parametrize("s, expected", [(1, 0.6931471805599453), (2, 0.8224670334241132),
                                         (4, 0.9470328294972459)])
def test_alt_zeta_values(s, expected):
    assert abs(alt_zeta(s).value - expected) < 1e-15


def test_alt_zeta_domain():
    with pytest.raises(DomainError):
        alt_zeta(0)


@pytest.mark.parametrize("s", range(2, 17))
def test_alt_zeta_relation(s):
    assert abs(alt_zeta(s).value - (1 - 2.0 ** (1 - s)) * zeta(s).value) < 1e-12


def test_ln2():
    assert abs(ln2().value - math.log(2)) < 1e-16


@pytest.mark.parametrize("p, x, expected", [(4, Fraction(1, 2), 0.5174790616738994),
                                            (1, Fraction(1, 2), 0.6931471805599453),
                                            (2, -1, -0.8224670334241132)])
def test_polylog_values(p, x, expected):
    assert abs(polylog(p, x).value - expected) < 1e-15


@pytest.mark.parametrize("p", range(2, 9))
def test_polylog_at_one_is_zeta(p):
    a, b = polylog(p, 1), zeta(p)
    assert abs(a.value - b.value) <= a.err + b.err + 1e-16


@pytest.mark.parametrize("p", range(1, 9))
def test_polylog_at_minus_one(p):
    a, b = polylog(p, -1), alt_zeta(p)
    assert abs(a.value + b.value) <= a.err + b.err + 1e-16


@pytest.mark.parametrize("p", range(1, 7))
@pytest.mark.parametrize("x", [Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(-3, 4)])
def test_polylog_against_mpmath(p, x):
    assert abs(polylog(p, x).value - float(mpmath.polylog(p, mpmath.mpf(x.numerator) / x.denominator))) < 1e-15


def test_polylog_divergent():
    with pytest.raises(DomainError, match="divergent"):
        polylog(1, 1)
    with pytest.raises(DomainError):
        polylog(2, 2)


def test_euler_gamma():
    assert abs(euler_gamma().value - float(mpmath.euler)) < 1e-14


def test_euler_maclaurin_consistency():
    from eulersum.combinatorics import harmonic

    N = 10**4
    gap = float(harmonic(N) - Fraction(0)) - math.log(N) - float(mpmath.euler)
    assert abs(gap - (1 / (2 * N) - 1 / (12 * N**2))) < 1e-12


def test_cache_returns_identical_objects():
    assert zeta(5) is zeta(5)
    assert polylog(3, Fraction(1, 2)).value == polylog(3, Fraction(1, 2)).value


def test_concurrent_first_access_is_consistent():
    out = []
    threads = [threading.Thread(target=lambda: out.append(polylog(7, Fraction(2, 7)).value)) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(out)) == 1


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_li_real_against_mpmath(p):
    xs = np.array([-1.0, -0.9, -0.3, 0.0, 0.25, 0.5, 0.8, 0.99, 0.999999])
    got = li_real(p, xs)
    want = np.array([float(mpmath.polylog(p, x)) for x in xs])
    assert np.max(np.abs(got - want)) < 1e-13


def test_li_real_uses_exact_complement():
    eps = 1e-12
    got = li_real(2, np.array([1 - eps]), complement=np.array([eps]))[0]
    want = float(mpmath.polylog(2, 1 - mpmath.mpf(eps)))
    assert abs(got - want) < 1e-13
