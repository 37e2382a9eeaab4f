"""Zeta values, alternating zeta values, polylogarithms and Euler's constant.

Every public function returns a :class:`RealWithError` and is cached in a
process-wide table keyed by :class:`ConstantKey`.  The table is filled
under a re-entrant lock, so each constant is computed once even when
callers race.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .combinatorics import bernoulli
from .numerics import EPS, RealWithError

KINDS = ("zeta", "alt_zeta", "polylog", "ln2", "euler_gamma")


class DomainError(ValueError):
    """Raised for arguments outside the region where a constant is defined."""


@dataclass(frozen=True)
class ConstantKey:
    kind: str
    s_or_p: int = 0
    x: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown constant kind {self.kind!r}")


_cache: dict[ConstantKey, RealWithError] = {}
_lock = threading.RLock()


def _cached(key: ConstantKey, compute: Callable[[], RealWithError]) -> RealWithError:
    hit = _cache.get(key)
    if hit is not None:
        return hit
    with _lock:
        hit = _cache.get(key)
        if hit is None:
            hit = compute()
            _cache[key] = hit
        return hit


# --- zeta -----------------------------------------------------------------

_ZETA_TERMS = 10_000


def _zeta(s: int) -> RealWithError:
    N = _ZETA_TERMS
    n = np.arange(1, N + 1, dtype=float)
    head = math.fsum(n ** -s)
    # Euler-Maclaurin for sum_{n>N} n**-s, through the N**(-s-5) term
    tail = N ** (1 - s) / (s - 1) - 0.5 * N ** -s
    rising = float(s)
    for k in range(1, 4):
        tail += float(bernoulli(2 * k)) / math.factorial(2 * k) * rising * N ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    # first omitted correction bounds the remainder
    dropped = abs(float(bernoulli(8))) / math.factorial(8) * rising * N ** (-s - 7)
    value = head + tail
    return RealWithError(value, dropped + 2 * EPS * value)


def zeta(s: int) -> RealWithError:
    """Riemann zeta value ``zeta(s)`` for integer ``s >= 2``."""
    if s < 2:
        raise DomainError("divergent zeta argument")
    return _cached(ConstantKey("zeta", s), lambda: _zeta(s))


# --- alternating zeta -----------------------------------------------------

_BORWEIN_TERMS = 30


def _borwein_weights(n: int) -> list[Fraction]:
    d = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4**i, math.factorial(n - i) * math.factorial(2 * i))
        d.append(n * acc)
    return d


def _alt_zeta(s: int) -> RealWithError:
    # Borwein's accelerated series: error below 3 / (3 + sqrt 8)**n
    n = _BORWEIN_TERMS
    d = _borwein_weights(n)
    total = sum((Fraction((-1) ** k) * (d[k] - d[n]) / Fraction(k + 1) ** s for k in range(n)), Fraction(0))
    value = float(-total / d[n])
    return RealWithError(value, 3.0 / (3.0 + math.sqrt(8.0)) ** n + EPS * abs(value))


def alt_zeta(s: int) -> RealWithError:
    """Alternating zeta ``sum (-1)**(n-1) / n**s`` for integer ``s >= 1``."""
    if s < 1:
        raise DomainError("alternating zeta needs s >= 1")
    return _cached(ConstantKey("alt_zeta", s), lambda: _alt_zeta(s))


def ln2() -> RealWithError:
    """``ln 2``, obtained as the alternating zeta value at 1."""
    return _cached(ConstantKey("ln2"), lambda: alt_zeta(1))


# --- Euler's constant -----------------------------------------------------


def _euler_gamma(N: int) -> RealWithError:
    h = math.fsum(1.0 / np.arange(1, N + 1, dtype=float))
    corr = -1 / (2 * N) + 1 / (12 * N**2) - 1 / (120 * N**4)
    value = h - math.log(N) + corr
    return RealWithError(value, 1 / (252 * N**6) + 4 * EPS * h)


def euler_gamma(N: int = 10**6) -> RealWithError:
    """Euler's constant from ``H_N - ln N`` with Euler-Maclaurin corrections."""
    if N < 10:
        raise DomainError("need at least 10 terms")
    return _cached(ConstantKey("euler_gamma", N), lambda: _euler_gamma(N))


# --- polylogarithm --------------------------------------------------------


def _polylog_series(p: int, x: Fraction) -> RealWithError:
    xf = float(x)
    ax = abs(xf)
    terms = []
    n = 1
    power = xf
    while True:
        t = power / n**p
        terms.append(t)
        if abs(t) < 1e-17 * max(1.0, abs(terms[0])) or power == 0.0:
            break
        n += 1
        power *= xf
    value = math.fsum(terms)
    # remaining terms are bounded by a geometric series in |x|
    tail = abs(terms[-1]) * ax / (1 - ax)
    return RealWithError(value, tail + 2 * n * EPS * abs(value) + EPS * abs(value))


def polylog(p: int, x) -> RealWithError:
    """``Li_p(x) = sum x**n / n**p`` for integer ``p >= 1`` and rational ``|x| <= 1``."""
    x = Fraction(x)
    if p < 1:
        raise DomainError("polylog order must be >= 1")
    if abs(x) > 1:
        raise DomainError("polylog argument must satisfy |x| <= 1")
    if p == 1 and x == 1:
        raise DomainError("divergent")

    def compute():
        if x == 1:
            return zeta(p)
        if x == -1:
            return -alt_zeta(p)
        if x == 0:
            return RealWithError(0.0)
        if p == 1:
            v = -math.log1p(-float(x))
            return RealWithError(v, 2 * EPS * abs(v))
        return _polylog_series(p, x)

    return _cached(ConstantKey("polylog", p, x), compute)


# --- vectorised real polylogarithm for quadrature integrands ---------------

_SERIES_TERMS = 64
_LOG_TERMS = 48


def _zeta_any(s: int) -> float:
    """``zeta(s)`` for any integer ``s != 1`` (negative via Bernoulli numbers)."""
    if s >= 2:
        return zeta(s).value
    if s == 0:
        return -0.5
    n = -s
    return float(-bernoulli(n + 1) / (n + 1))


def _li_small(p: int, x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    power = np.ones_like(x)
    for n in range(1, _SERIES_TERMS + 1):
        power = power * x
        out += power / n**p
    return out


def _li_near_one(p: int, mu: np.ndarray) -> np.ndarray:
    """``Li_p(exp(mu))`` for ``mu < 0`` small, by the expansion in ``mu``."""
    out = np.zeros_like(mu)
    harm = sum(1.0 / j for j in range(1, p))
    mk = np.ones_like(mu)
    for k in range(_LOG_TERMS):
        if k:
            mk = mk * mu / k
        if k == p - 1:
            out += mk * (harm - np.log(-mu))
        else:
            out += _zeta_any(p - k) * mk
    return out


def li_real(p: int, x, complement=None) -> np.ndarray:
    """Float ``Li_p(x)`` for ``x`` in ``[-1, 1]``, vectorised over ``x``.

    Parameters
    ----------
    p : int
        Order, ``p >= 1``.
    x : array_like
        Arguments in ``[-1, 1]``.
    complement : array_like, optional
        ``1 - x`` supplied exactly by the caller; used near ``x = 1`` where
        forming ``1 - x`` would cancel.
    """
    x = np.asarray(x, dtype=float)
    one_minus = 1.0 - x if complement is None else np.asarray(complement, dtype=float)
    if p == 1:
        with np.errstate(divide="ignore"):
            return -np.log(one_minus)
    out = np.empty_like(x)
    small = np.abs(x) <= 0.5
    out[small] = _li_small(p, x[small])
    big = x > 0.5
    if np.any(big):
        mu = np.log1p(-one_minus[big])
        at_one = mu == 0.0
        vals = np.full(mu.shape, zeta(p).value)
        if np.any(~at_one):
            vals[~at_one] = _li_near_one(p, mu[~at_one])
        out[big] = vals
    neg = x < -0.5
    if np.any(neg):
        # duplication: Li_p(x) = 2**(1-p) Li_p(x**2) - Li_p(-x)
        xn = x[neg]
        out[neg] = 2.0 ** (1 - p) * li_real(p, xn * xn) - li_real(p, -xn)
    return out
