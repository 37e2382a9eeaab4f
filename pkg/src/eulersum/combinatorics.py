"""Exact combinatorial quantities built from harmonic numbers.

All values are :class:`fractions.Fraction` or Python ``int``, so equality
tests are exact.  Prefix tables are memoised and grow on demand; growth is
guarded by a lock so concurrent callers see a consistent table.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .numerics import EPS, RealWithError

_lock = threading.RLock()

# (kind, order, x) -> list of prefix sums, index n holds the sum over j <= n
_prefix: dict[tuple, list[Fraction]] = {}
# k -> [Y_k(0), Y_k(1), ...]
_bell: dict[int, list[Fraction]] = {0: [Fraction(1)]}
# row n -> [S(n, 0), ..., S(n, n)]
_stirling: list[list[int]] = [[1]]


def _prefix_table(order: int, x: Fraction, n: int) -> list[Fraction]:
    key = (order, x)
    with _lock:
        table = _prefix.setdefault(key, [Fraction(0)])
        while len(table) <= n:
            j = len(table)
            table.append(table[-1] + x ** j / Fraction(j) ** order)
        return table


def partial_polylog(n: int, l: int, x) -> Fraction:
    """Truncated polylogarithm ``sum_{k=1}^n x**k / k**l``.

    Parameters
    ----------
    n : int
        Number of terms, ``n >= 0``; ``n = 0`` gives the empty sum.
    l : int
        Power of ``k`` in the denominator, ``l >= 1``.
    x : Fraction or int
        Rational argument.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if l < 1:
        raise ValueError("order must be >= 1")
    x = Fraction(x)
    return _prefix_table(l, x, n)[n]


def harmonic(n: int, m: int = 1) -> Fraction:
    """Generalised harmonic number ``sum_{j<=n} j**-m`` (zero for ``n = 0``)."""
    if m < 1:
        raise ValueError("order must be >= 1")
    return partial_polylog(n, m, 1)


def alt_harmonic(n: int, m: int = 1) -> Fraction:
    """Alternating harmonic number ``sum_{j<=n} (-1)**(j-1) j**-m``."""
    if m < 1:
        raise ValueError("order must be >= 1")
    return -partial_polylog(n, m, -1)


def bell_Y(k: int, n: int) -> Fraction:
    """Complete Bell polynomial in ``(H_n, 1! zeta_n(2), 2! zeta_n(3), ...)``.

    Computed from ``Y_k(n) = k * sum_{m<=n} Y_{k-1}(m) / m`` with
    ``Y_0(n) = 1``, so ``Y_k(0) = 0`` for ``k >= 1``.
    """
    if k < 0 or n < 0:
        raise ValueError("k and n must be non-negative")
    if k == 0:
        return Fraction(1)
    with _lock:
        for kk in range(1, k + 1):
            row = _bell.setdefault(kk, [Fraction(0)])
            while len(row) <= n:
                m = len(row)
                row.append(row[-1] + kk * bell_Y(kk - 1, m) / m)
        return _bell[k][n]


def bell_Y_explicit(k: int, n: int) -> Fraction:
    """``Y_k(n)`` for ``k <= 4`` from its polynomial in harmonic numbers."""
    if not 1 <= k <= 4:
        raise ValueError("no explicit formula")
    h = harmonic(n, 1)
    z2, z3, z4 = harmonic(n, 2), harmonic(n, 3), harmonic(n, 4)
    if k == 1:
        return h
    if k == 2:
        return h**2 + z2
    if k == 3:
        return h**3 + 3 * h * z2 + 2 * z3
    return h**4 + 8 * h * z3 + 6 * h**2 * z2 + 3 * z2**2 + 6 * z4


def stirling_first(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind ``S(n, k)``.

    Built row by row from ``S(n+1, k) = S(n, k-1) + n S(n, k)`` with
    ``S(0, 0) = 1``.  Out-of-range ``k`` gives 0.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if k < 0 or k > n:
        return 0
    with _lock:
        while len(_stirling) <= n:
            m = len(_stirling) - 1
            prev = _stirling[m]
            row = [0] * (m + 2)
            for j in range(1, m + 2):
                row[j] = prev[j - 1] + (m * prev[j] if j <= m else 0)
            _stirling.append(row)
        return _stirling[n][k]


def stirling_via_harmonics(n: int, k: int) -> Fraction:
    """``S(n, k)`` for ``k <= 5`` from its closed form in ``H_{n-1}, zeta_{n-1}(j)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= k <= 5:
        raise ValueError("no closed form")
    f = math.factorial(n - 1)
    h = harmonic(n - 1, 1)
    z2, z3, z4 = harmonic(n - 1, 2), harmonic(n - 1, 3), harmonic(n - 1, 4)
    if k == 1:
        return Fraction(f)
    if k == 2:
        return f * h
    if k == 3:
        return Fraction(f, 2) * (h**2 - z2)
    if k == 4:
        return Fraction(f, 6) * (h**3 - 3 * h * z2 + 2 * z3)
    return Fraction(f, 24) * (h**4 - 6 * z4 - 6 * h**2 * z2 + 3 * z2**2 + 8 * h * z3)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    with _lock:
        table = _prefix.setdefault(("bernoulli",), [Fraction(1)])
        while len(table) <= n:
            m = len(table)
            acc = sum(math.comb(m + 1, j) * table[j] for j in range(m))
            table.append(-acc / (m + 1))
        return table[n]


def genfun_check(p: int, x, N: int) -> RealWithError:
    """Truncated ``(-1)**p p! sum_{n=p}^N S(n,p) x**n / n!`` minus ``ln**p(1-x)``.

    The truncated series is summed exactly; the only rounding comes from
    converting it to float and from ``log1p``.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    x = Fraction(x)
    if not -1 < x < 1:
        raise ValueError("x must lie in (-1, 1)")
    series = sum((Fraction(stirling_first(n, p) * x**n, math.factorial(n)) for n in range(p, N + 1)),
                 Fraction(0))
    series *= (-1) ** p * math.factorial(p)
    exact = math.log1p(-float(x)) ** p
    s = float(series)
    return RealWithError(s - exact, 4 * EPS * (abs(s) + abs(exact)) * max(p, 1))
