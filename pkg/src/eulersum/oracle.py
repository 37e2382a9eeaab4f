"""Direct numerical evaluation of Euler-type sums and related integrals.

A sum is described by a :class:`SumDescriptor`: a product of harmonic-type
factors evaluated at ``n``, an outer weight (``1/n**p``, a two-pole kernel
``1/(n**e (n+r)(n+k))`` or a shift ``1/(n+k)``), an optional alternating
sign and an optional geometric weight ``w**n``.  Terms are generated in
double precision from compensated prefix sums and the infinite tail is
handled by :mod:`eulersum.numerics`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

from . import combinatorics as comb
from .constants import li_real, polylog, zeta
from .numerics import (
    EPS,
    NumericsError,
    RealWithError,
    TailModel,
    compensated_cumsum,
    paired_sum,
    quad_tanh_sinh,
    sum_with_tail,
)
from .results import VerificationResult

FACTOR_KINDS = ("zeta_n", "L_n", "Y_n", "stirling_weight", "H_k_over_km_inner")


class DivergentSum(NumericsError):
    """Raised for descriptors whose series does not converge."""


@dataclass(frozen=True)
class Factor:
    """One harmonic-type factor of the summand, raised to ``exponent``.

    ``zeta_n``
        ``sum_{j<=n} x**j / j**order`` (``x = 1`` gives ``zeta_n(order)``).
    ``L_n``
        ``sum_{j<=n} (-1)**(j-1) / j**order``.
    ``Y_n``
        Complete Bell polynomial ``Y_order(n)``.
    ``stirling_weight``
        ``S(n+1, order) / n!``.
    ``H_k_over_km_inner``
        ``sum_{k<=n} zeta_k(1, x) / k**order``.
    """

    kind: str
    order: int
    exponent: int = 1
    x: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in FACTOR_KINDS:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.order < 1 and self.kind != "Y_n":
            raise ValueError("factor order must be >= 1")
        if self.exponent < 1:
            raise ValueError("factor exponent must be >= 1")
        object.__setattr__(self, "x", Fraction(self.x))
        if abs(self.x) > 1:
            raise ValueError("factor argument must satisfy |x| <= 1")

    def __str__(self):
        arg = "" if self.x == 1 else f",x={self.x}"
        power = "" if self.exponent == 1 else f"^{self.exponent}"
        return f"{self.kind}({self.order}{arg}){power}"


@dataclass(frozen=True)
class Power:
    p: int


@dataclass(frozen=True)
class Kernel:
    r: int
    k: int
    extra_power: int = 0

    def __post_init__(self):
        if not 0 <= self.r < self.k:
            raise ValueError("kernel requires 0 <= r < k")
        if self.extra_power < 0:
            raise ValueError("extra power must be >= 0")


@dataclass(frozen=True)
class Shift:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("shift must be >= 0")


Outer = Union[Power, Kernel, Shift]


@dataclass(frozen=True)
class SumDescriptor:
    """``sum_{n>=1} sign(n) w**n * outer(n) * prod(factors)``."""

    factors: tuple = ()
    outer: Outer = Power(2)
    alternating: bool = False
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "weight", Fraction(self.weight))
        if abs(self.weight) > 1:
            raise ValueError("weight must satisfy |w| <= 1")

    def __str__(self):
        parts = [str(f) for f in self.factors] or ["1"]
        o = self.outer
        if isinstance(o, Power):
            den = f"n^{o.p}"
        elif isinstance(o, Kernel):
            lead = {0: "", 1: "n"}.get(o.extra_power, f"n^{o.extra_power}")
            first = "n" if o.r == 0 else f"(n+{o.r})"
            den = f"({lead}{first}(n+{o.k}))"
        else:
            den = f"(n+{o.k})"
        sign = " (-1)^(n-1)" if self.alternating else ""
        w = "" if self.weight == 1 else f" ({self.weight})^n"
        return f"sum {'*'.join(parts)}/{den}{sign}{w}"


# --- truncation settings -------------------------------------------------


def _env_N() -> int | None:
    raw = os.environ.get("EULERSUM_DEFAULT_N")
    if not raw:
        return None
    try:
        value = int(float(raw))
    except ValueError as exc:
        raise ValueError(f"EULERSUM_DEFAULT_N is not a number: {raw!r}") from exc
    if value < 100:
        raise ValueError("EULERSUM_DEFAULT_N must be at least 100")
    return value


@dataclass(frozen=True)
class OracleConfig:
    """Truncation points.

    ``N`` overrides every default term count when set.  Without it, sums
    whose terms decay like ``n**-2`` use ``N_power2`` terms, faster ones
    ``N_power3``, and sums needing neighbour pairing use ``N_pairs`` pairs.
    """

    N: int | None = None
    N_power2: int = 10**6
    N_power3: int = 10**5
    N_pairs: int = 2 * 10**4
    quad_tol: float = 1e-12

    @classmethod
    def from_env(cls, **overrides) -> "OracleConfig":
        cfg = cls(N=_env_N())
        return replace(cfg, **overrides) if overrides else cfg

    def describe(self) -> dict:
        return {"N": self.N, "N_power2": self.N_power2, "N_power3": self.N_power3,
                "N_pairs": self.N_pairs}


# --- convergence analysis --------------------------------------------------


@dataclass(frozen=True)
class Plan:
    method: str  # "geometric", "direct" or "paired"
    N: int
    tail: TailModel


def _log_degree(f: Factor) -> int:
    if f.kind == "zeta_n":
        return f.exponent if (f.order == 1 and f.x == 1) else 0
    if f.kind == "L_n":
        return 0
    if f.kind == "Y_n":
        return f.order * f.exponent
    if f.kind == "stirling_weight":
        return (f.order - 1) * f.exponent
    # inner sums: their expansions carry logs even when they converge
    if f.x == 1:
        return (2 if f.order == 1 else 1) * f.exponent
    return (1 if f.order == 1 else 0) * f.exponent


def _has_period_two(f: Factor) -> bool:
    return f.kind == "L_n" or (f.kind in ("zeta_n", "H_k_over_km_inner") and f.x == -1)


def _decay(outer: Outer) -> int:
    if isinstance(outer, Power):
        return outer.p
    if isinstance(outer, Kernel):
        return 2 + outer.extra_power
    return 1


def _geometric_terms(w: Fraction) -> int:
    return int(math.ceil(40.0 / -math.log10(abs(float(w))))) + 40


def plan(desc: SumDescriptor, config: OracleConfig | None = None) -> Plan:
    """Choose truncation and tail handling, or raise :class:`DivergentSum`."""
    config = config or OracleConfig()
    D = _decay(desc.outer)
    logs = sum(_log_degree(f) for f in desc.factors)
    w = desc.weight
    if w == 0:
        return Plan("geometric", 1, TailModel.none())
    if abs(w) < 1:
        return Plan("geometric", _geometric_terms(w), TailModel.none())
    net_alternating = desc.alternating != (w == -1)
    period_two = desc.alternating or w == -1 or any(_has_period_two(f) for f in desc.factors)
    if net_alternating:
        if D < 1:
            raise DivergentSum("divergent sum")
        power = D + 1
    else:
        if D < 2:
            raise DivergentSum("divergent sum")
        power = D
    tail = TailModel.power_log(power, logs)
    if period_two:
        N = config.N if config.N else 2 * config.N_pairs
        return Plan("paired", N, tail)
    if config.N:
        N = config.N
    else:
        N = config.N_power2 if power == 2 else config.N_power3
    return Plan("direct", N, tail)


# --- term generation -------------------------------------------------------


def _index(N: int) -> np.ndarray:
    return np.arange(1, N + 1, dtype=float)


def _powers(x: Fraction, N: int) -> np.ndarray:
    if x == 1:
        return np.ones(N)
    if x == -1:
        out = np.ones(N)
        out[0::2] = -1.0
        return out
    return np.power(float(x), np.arange(1, N + 1, dtype=float))


@lru_cache(maxsize=48)
def _base_sequence(kind: str, order: int, x: Fraction, N: int) -> np.ndarray:
    """Values for ``n = 1..N`` of a factor with exponent one (read-only)."""
    n = _index(N)
    if kind == "zeta_n":
        out = compensated_cumsum(_powers(x, N) / n**order)
    elif kind == "L_n":
        out = -_base_sequence("zeta_n", order, Fraction(-1), N)
    elif kind == "Y_n":
        out = np.ones(N)
        for k in range(1, order + 1):
            out = k * compensated_cumsum(out / n)
    elif kind == "stirling_weight":
        # W_p(n) = S(n+1, p)/n! obeys W_p(n) = W_p(n-1) + W_{p-1}(n-1)/n
        out = np.ones(N)
        for p in range(2, order + 1):
            prev = np.empty(N)
            prev[0] = 1.0 if p - 1 == 1 else 0.0
            prev[1:] = out[:-1]
            out = compensated_cumsum(prev / n)
    else:
        h = _base_sequence("zeta_n", 1, x, N)
        out = compensated_cumsum(h / n**order)
    out.setflags(write=False)
    return out


def factor_values(f: Factor, N: int) -> np.ndarray:
    """Values of ``f`` for ``n = 1..N``."""
    base = _base_sequence(f.kind, f.order, f.x, N)
    return base if f.exponent == 1 else base**f.exponent


def _outer_values(outer: Outer, N: int) -> np.ndarray:
    n = _index(N)
    if isinstance(outer, Power):
        return n ** -float(outer.p)
    if isinstance(outer, Kernel):
        return 1.0 / (n ** outer.extra_power * (n + outer.r) * (n + outer.k))
    return 1.0 / (n + outer.k)


def term_values(desc: SumDescriptor, N: int) -> np.ndarray:
    """The first ``N`` terms of the series."""
    t = _outer_values(desc.outer, N)
    for f in desc.factors:
        t = t * factor_values(f, N)
    if desc.alternating:
        t[1::2] *= -1.0
    if desc.weight != 1:
        t = t * _powers(desc.weight, N)
    return t


def exact_term(desc: SumDescriptor, n: int) -> Fraction:
    """The ``n``-th term in exact rational arithmetic (for spot checks)."""
    value = Fraction(1)
    for f in desc.factors:
        if f.kind == "zeta_n":
            v = comb.partial_polylog(n, f.order, f.x)
        elif f.kind == "L_n":
            v = comb.alt_harmonic(n, f.order)
        elif f.kind == "Y_n":
            v = comb.bell_Y(f.order, n)
        elif f.kind == "stirling_weight":
            v = Fraction(comb.stirling_first(n + 1, f.order), math.factorial(n))
        else:
            v = sum((comb.partial_polylog(k, 1, f.x) / Fraction(k) ** f.order for k in range(1, n + 1)),
                    Fraction(0))
        value *= v**f.exponent
    o = desc.outer
    if isinstance(o, Power):
        value /= Fraction(n) ** o.p
    elif isinstance(o, Kernel):
        value /= Fraction(n) ** o.extra_power * (n + o.r) * (n + o.k)
    else:
        value /= n + o.k
    if desc.alternating and n % 2 == 0:
        value = -value
    return value * desc.weight**n


# --- evaluation -------------------------------------------------------------


@lru_cache(maxsize=8192)
def _evaluate(desc: SumDescriptor, N: int, method: str, tail: TailModel) -> RealWithError:
    vals = term_values(desc, N)

    def lookup(idx):
        return vals[np.asarray(idx) - 1]

    if method == "paired":
        return paired_sum(lookup, 1, N, tail)
    return sum_with_tail(lookup, 1, N, tail)


def evaluate(desc: SumDescriptor, config: OracleConfig | None = None) -> RealWithError:
    """Numerical value of the series described by ``desc``.

    Raises
    ------
    DivergentSum
        If the series does not converge.
    """
    p = plan(desc, config)
    return _evaluate(desc, p.N, p.method, p.tail)


def clear_caches() -> None:
    _evaluate.cache_clear()
    _base_sequence.cache_clear()


# --- convenience constructors ---------------------------------------------


def H(exponent: int = 1) -> Factor:
    return Factor("zeta_n", 1, exponent)


def Z(order: int, exponent: int = 1, x=1) -> Factor:
    return Factor("zeta_n", order, exponent, Fraction(x))


def L(order: int, exponent: int = 1) -> Factor:
    return Factor("L_n", order, exponent)


def Y(order: int, exponent: int = 1) -> Factor:
    return Factor("Y_n", order, exponent)


def W(order: int, exponent: int = 1) -> Factor:
    return Factor("stirling_weight", order, exponent)


def inner(order: int, x=1) -> Factor:
    return Factor("H_k_over_km_inner", order, 1, Fraction(x))


def euler_sum(pi1=(), pi2=(), p: int = 2, bar: bool = False) -> SumDescriptor:
    """Descriptor in Euler-sum index notation.

    ``pi1`` and ``pi2`` are sequences of ``(order, multiplicity)`` pairs for
    the ``zeta_n`` and ``L_n`` factors, e.g. ``pi1=[(1, 2), (3, 1)]`` is
    ``H_n**2 zeta_n(3)``.
    """
    factors = [Z(k, q) for k, q in pi1] + [L(h, q) for h, q in pi2]
    return SumDescriptor(tuple(factors), Power(p), bar)


# --- scalar helpers ----------------------------------------------------------


def kernel_partial_fraction(k: int, p: int, n: int) -> list[tuple[Fraction, int]]:
    """Expand ``1/(k**p (n+k))`` as ``sum coef / n**power``.

    The leading terms are ``(-1)**(i-1) / (n**i k**(p+1-i))`` for
    ``i < p``; the remainder ``(-1)**(p-1) / (n**(p-1) k (n+k))`` is
    returned with its kernel value folded into the coefficient.  Summing
    ``coef / n**power`` over the list reproduces the left side exactly.
    """
    if min(k, p, n) < 1:
        raise ValueError("all arguments must be >= 1")
    out = [(Fraction((-1) ** (i - 1), k ** (p + 1 - i)), i) for i in range(1, p)]
    out.append((Fraction((-1) ** (p - 1), k * (n + k)), p - 1))
    return out


def nested_inner(n: int, m: int) -> float:
    """``sum_{k<=n} H_k / k**m`` in floating point."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if n <= 0:
        return 0.0
    return float(_base_sequence("H_k_over_km_inner", m, Fraction(1), n)[-1])


# --- integral identities ------------------------------------------------------

INTEGRALS = ("eq2_5", "eq2_6", "eq2_7", "eq2_8", "eq2_9", "eq2_14", "eq2_17", "eq2_18",
             "eq2_19", "eq2_20", "eq2_24", "eq2_25", "eq2_26")


def _quad(f, a, b, config: OracleConfig) -> RealWithError:
    return quad_tanh_sinh(f, a, b, config.quad_tol)


def _geom_sum(x: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """``sum_{j=lo}^{hi} x**j`` (empty sum is zero)."""
    out = np.zeros_like(x)
    for j in range(lo, hi + 1):
        out = out + x**j
    return out


def _ratio_kernel(u: np.ndarray, r: int, k: int) -> np.ndarray:
    """``(x**(r-1) - x**(k-1)) / (1 - x)`` at ``x = 1 - u``, without cancellation."""
    x = 1.0 - u
    return x ** (r - 1) * -np.expm1((k - r) * np.log1p(-u)) / u


def _log_sum_limit(n: int, x: Fraction):
    """``ln(1-x) * (x**n - 1)`` and ``ln(1-x)`` as floats, with the ``x = 1`` limit."""
    if x == 1:
        return 0.0, None
    lg = math.log1p(-float(x))
    return lg * (float(x) ** n - 1.0), lg


def integral_sides(which: str, params: dict, config: OracleConfig | None = None):
    """Quadrature side and closed-form (or series) side of an integral identity.

    Returns a pair of :class:`RealWithError`.  Logarithmic singularities at
    ``t = 1`` are moved to the origin by the substitution ``u = 1 - t``.
    """
    config = config or OracleConfig.from_env()
    P = params
    if which in ("eq2_5", "eq2_6", "eq2_7", "eq2_8"):
        m, r, k = P["m"], P["r"], P["k"]
        if not 0 <= r < k or m < 1:
            raise ValueError("requires m >= 1 and 0 <= r < k")
    if which == "eq2_5":
        lhs = _quad(lambda u: li_real(m, 1 - u, u) * _geom_sum(1 - u, r - 1, k - 2), 0.0, 1.0, config)
        rhs = (k - r) * evaluate(SumDescriptor((Z(m),), Kernel(r, k)), config)
        return lhs, rhs
    if which == "eq2_6":
        lhs = _quad(lambda u: -li_real(m, u - 1) * _geom_sum(1 - u, r - 1, k - 2), 0.0, 1.0, config)
        rhs = (k - r) * evaluate(SumDescriptor((L(m),), Kernel(r, k)), config)
        return lhs, rhs
    if which == "eq2_7":
        lhs = _quad(lambda u: _ratio_kernel(u, r, k) * li_real(m, 1 - u, u), 0.0, 1.0, config)
        rhs = RealWithError(0.0)
        for i in range(1, k - r + 1):
            j = r + i - 2
            rhs = rhs + _quad(lambda u, j=j: (1 - u) ** j * li_real(m, 1 - u, u), 0.0, 1.0, config)
        return lhs, rhs
    if which == "eq2_8":
        lhs = _quad(lambda u: -_ratio_kernel(u, r, k) * li_real(m, u - 1), 0.0, 1.0, config)
        rhs = RealWithError(0.0)
        for i in range(1, k - r + 1):
            j = r + i - 2
            part = _quad(lambda x, j=j: x**j * li_real(m, x), 0.0, -1.0, config)
            rhs = rhs + (-1) ** (r + i) * part
        return lhs, rhs
    if which == "eq2_9":
        n, q, x = P["n"], P["q"], Fraction(P["x"])
        if n < 1 or q < 1 or not -1 <= x <= 1 or (q == 1 and x == 1):
            raise ValueError("requires n, q >= 1 and -1 <= x <= 1, excluding q = 1 at x = 1")
        if x == 1:
            lhs = _quad(lambda u: (1 - u) ** (n - 1) * li_real(q, 1 - u, u), 0.0, 1.0, config)
        else:
            lhs = _quad(lambda t: t ** (n - 1) * li_real(q, t), 0.0, float(x), config)
        xf = float(x)
        rhs = RealWithError(0.0)
        for i in range(1, q):
            rhs = rhs + (-1) ** (i - 1) * xf**n / n**i * polylog(q + 1 - i, x)
        log_part, _ = _log_sum_limit(n, x)
        rhs = rhs + RealWithError((-1) ** q / n**q * log_part, 4 * EPS * abs(log_part))
        rhs = rhs - Fraction((-1) ** q, n**q) * comb.partial_polylog(n, 1, x)
        return lhs, rhs
    if which in ("eq2_14", "eq2_17", "eq2_18", "eq2_19", "eq2_20"):
        n = P["n"]
        kk = {"eq2_14": P.get("k"), "eq2_17": 1, "eq2_18": 2, "eq2_19": 2, "eq2_20": P.get("k")}[which]
        if n < 1 or kk is None or kk < 0:
            raise ValueError("requires n >= 1 and k >= 0")
        x = Fraction(P.get("x", 1))
        if which in ("eq2_17", "eq2_18"):
            if not -1 <= x <= 1 or (which == "eq2_18" and x == 1):
                raise ValueError("requires -1 <= x <= 1 (x < 1 for the squared logarithm)")
        elif x != 1:
            raise ValueError("this identity is stated on the whole interval (0, 1)")
        if x == 1:
            lhs = _quad(lambda u: (1 - u) ** (n - 1) * np.log(u) ** kk, 0.0, 1.0, config)
        else:
            lhs = _quad(lambda t: t ** (n - 1) * np.log1p(-t) ** kk, 0.0, float(x), config)
        if which == "eq2_14":
            rhs = RealWithError.coerce((-1) ** kk * comb.bell_Y(kk, n) / n)
        elif which == "eq2_20":
            # iterated sum m!/n * sum_{k1<=n} 1/k1 sum_{k2<=k1} 1/k2 ...
            nested = [Fraction(1)] * (n + 1)
            for _ in range(kk):
                acc = Fraction(0)
                row = [Fraction(0)]
                for j in range(1, n + 1):
                    acc += nested[j] / j
                    row.append(acc)
                nested = row
            rhs = RealWithError.coerce(Fraction((-1) ** kk * math.factorial(kk), n) * nested[n])
        elif which == "eq2_19":
            double = sum((comb.harmonic(j) / j for j in range(1, n + 1)), Fraction(0))
            rhs = RealWithError.coerce(Fraction(2, n) * double)
        elif which == "eq2_17":
            log_part, lg = _log_sum_limit(n, x)
            s = comb.partial_polylog(n, 1, x)
            # (x**n ln(1-x) - sum x**j/j - ln(1-x)) / n
            rhs = (RealWithError(log_part, 4 * EPS * abs(log_part)) - s) / n
        else:
            xf = float(x)
            lg = math.log1p(-xf)
            first = (xf**n - 1.0) * lg**2 / n
            acc = RealWithError(first, 4 * EPS * abs(first))
            for kx in range(1, n + 1):
                inner_val = RealWithError(xf**kx * lg - lg, 4 * EPS * abs(lg)) - comb.partial_polylog(kx, 1, x)
                acc = acc - Fraction(2, n * kx) * inner_val
            rhs = acc
        return lhs, rhs
    if which in ("eq2_24", "eq2_25"):
        p, r, k = P["p"], P["r"], P["k"]
        if p < 2 or not 0 <= r < k:
            raise ValueError("requires p >= 2 and 0 <= r < k")
        lhs = _quad(lambda u: np.log(u) ** (p - 1) * _ratio_kernel(u, r, k), 0.0, 1.0, config)
        if which == "eq2_24":
            series = evaluate(SumDescriptor((W(p),), Kernel(r, k)), config)
            rhs = (-1) ** (p - 1) * math.factorial(p - 1) * (k - r) * series
        else:
            rhs = RealWithError(0.0)
            for i in range(1, k - r + 1):
                j = r + i - 2
                rhs = rhs + _quad(lambda u, j=j: (1 - u) ** j * np.log(u) ** (p - 1), 0.0, 1.0, config)
        return lhs, rhs
    if which == "eq2_26":
        p = P["p"]
        if p < 2:
            raise ValueError("requires p >= 2")
        lhs = _quad(lambda u: np.log(u) ** (p - 1) / (1 - u), 0.0, 1.0, config)
        rhs = (-1) ** (p - 1) * math.factorial(p - 1) * zeta(p)
        return lhs, rhs
    raise ValueError(f"unknown integral identity {which!r}")


def integral_identity_check(which: str, params: dict, config: OracleConfig | None = None,
                            tol: float = 1e-10) -> VerificationResult:
    """Compare the quadrature side of an integral identity with its other side."""
    config = config or OracleConfig.from_env()
    lhs, rhs = integral_sides(which, params, config)
    return VerificationResult.judge(which, params, lhs, rhs, tol, config.describe())
