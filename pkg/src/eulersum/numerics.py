"""Summation and quadrature primitives shared by the whole package.

Everything here works in IEEE double precision.  Accuracy comes from
error-free transformations (``math.fsum`` and a TwoSum-corrected prefix
sum) rather than from extended-precision arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

EPS = np.finfo(float).eps


class NumericsError(ValueError):
    """Raised when a summation or quadrature request cannot be honoured."""


@dataclass(frozen=True)
class RealWithError:
    """A float together with a non-negative absolute error estimate."""

    value: float
    err: float = 0.0

    def __post_init__(self):
        if not self.err >= 0.0:
            raise ValueError(f"error bound must be non-negative, got {self.err!r}")

    @staticmethod
    def coerce(x) -> "RealWithError":
        if isinstance(x, RealWithError):
            return x
        if isinstance(x, int):
            v = float(x)
            return RealWithError(v, 0.0 if abs(x) < 2**53 else abs(v) * EPS)
        if isinstance(x, Fraction):
            v = float(x)
            return RealWithError(v, abs(v) * EPS)
        if isinstance(x, (float, np.floating)):
            return RealWithError(float(x), 0.0)
        return NotImplemented

    def __add__(self, other):
        o = RealWithError.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        v = self.value + o.value
        return RealWithError(v, self.err + o.err + abs(v) * EPS / 2)

    __radd__ = __add__

    def __neg__(self):
        return RealWithError(-self.value, self.err)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = RealWithError.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = RealWithError.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        v = self.value * o.value
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return RealWithError(v, err + abs(v) * EPS / 2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RealWithError.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.value == 0.0:
            raise ZeroDivisionError("division by a RealWithError centred at zero")
        v = self.value / o.value
        err = abs(v) * (o.err / abs(o.value)) + self.err / abs(o.value)
        return RealWithError(v, err + abs(v) * EPS / 2)

    def __rtruediv__(self, other):
        o = RealWithError.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = RealWithError(1.0)
        for _ in range(k):
            out = out * self
        return out

    def __float__(self):
        return self.value

    def __repr__(self):
        return f"RealWithError({self.value!r}, err={self.err:.3g})"


@dataclass(frozen=True)
class TailModel:
    """Asymptotic shape of the terms beyond the truncation point.

    ``power_log`` means terms behave like ``P(ln n) / n**power`` with
    ``deg P == log_degree``, plus lower-order corrections in ``1/n``.
    """

    kind: str = "power_log"
    power: int = 2
    log_degree: int = 0

    def __post_init__(self):
        if self.kind not in ("none", "power_log"):
            raise ValueError(f"unknown tail kind {self.kind!r}")
        if self.kind == "power_log" and (self.power < 2 or self.log_degree < 0):
            raise ValueError("power_log tails need power >= 2 and log_degree >= 0")

    @classmethod
    def none(cls) -> "TailModel":
        return cls("none", 2, 0)

    @classmethod
    def power_log(cls, power: int, log_degree: int = 0) -> "TailModel":
        return cls("power_log", power, log_degree)


def _check_finite(arr: np.ndarray) -> None:
    if not np.all(np.isfinite(arr)):
        raise NumericsError("non-finite term")


def compensated_sum(terms: Iterable[float]) -> float:
    """Correctly rounded sum of a finite sequence (Shewchuk via ``math.fsum``)."""
    arr = np.asarray(list(terms) if not isinstance(terms, np.ndarray) else terms, dtype=float)
    if arr.size == 0:
        return 0.0
    _check_finite(arr)
    return math.fsum(arr)


def compensated_cumsum(terms: np.ndarray) -> np.ndarray:
    """Prefix sums with the rounding error of every addition added back.

    ``np.cumsum`` is sequential, so each partial sum is exactly
    ``fl(prev + t)``; TwoSum recovers the discarded low part, and those
    parts are accumulated separately.
    """
    t = np.asarray(terms, dtype=float)
    s = np.cumsum(t)
    prev = np.empty_like(s)
    prev[0] = 0.0
    prev[1:] = s[:-1]
    bb = s - prev
    low = (prev - (s - bb)) + (t - bb)
    return s + np.cumsum(low)


def _call_term(term: Callable, idx: np.ndarray) -> np.ndarray:
    """Evaluate ``term`` on an index array, falling back to a scalar loop."""
    try:
        out = term(idx)
        out = np.asarray(out, dtype=float)
        if out.shape == idx.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(term(int(i))) for i in idx], dtype=float)


def _tail_integrals(N: int, power: int, n_inv: int, log_degree: int) -> np.ndarray:
    """``sum_{n>N}`` of each basis function ``N**i (ln n - ln N)**j n**-(power+i)``.

    Uses the midpoint form of Euler-Maclaurin: the integral from N + 1/2
    in closed form, plus ``f'(N + 1/2) / 24``.  Returned shape is
    ``(n_inv + 1, log_degree + 1)``.
    """
    X = N + 0.5
    v0 = math.log1p(0.5 / N)
    out = np.empty((n_inv + 1, log_degree + 1))
    for i in range(n_inv + 1):
        s = power + i
        a = s - 1
        base = (N / X) ** i * X ** (1 - power)  # N**i * X**-a
        z = a * v0
        partial = 0.0
        zk = 1.0
        for j in range(log_degree + 1):
            if j:
                zk *= z / j
            partial += zk
            integral = base * math.factorial(j) * partial / a ** (j + 1)
            deriv = base / X ** 2 * ((j * v0 ** (j - 1) if j else 0.0) - s * v0 ** j)
            out[i, j] = integral + deriv / 24.0
    return out


def _fit_tail(values: Callable[[np.ndarray], np.ndarray], start: int, N: int,
              power: int, log_degree: int, n_inv: int, lo_div: int) -> float:
    lo = max(start, N // lo_div, 1)
    n_unknown = (n_inv + 1) * (log_degree + 1)
    count = max(8 * n_unknown, 96)
    idx = np.unique(np.round(np.geomspace(lo, N, count)).astype(np.int64))
    if idx.size < 2 * n_unknown:
        idx = np.arange(lo, N + 1, dtype=np.int64)
    if idx.size < n_unknown:
        n_inv = max(0, idx.size // (log_degree + 1) - 1)
        n_unknown = (n_inv + 1) * (log_degree + 1)
        if idx.size < n_unknown:
            return 0.0
    n = idx.astype(float)
    y = values(idx) * n ** power
    ell = np.log(n) - math.log(N)
    ratio = N / n
    cols = [ratio ** i * ell ** j for i in range(n_inv + 1) for j in range(log_degree + 1)]
    A = np.stack(cols, axis=1)
    scale = np.linalg.norm(A, axis=0)
    scale[scale == 0.0] = 1.0
    coef, *_ = np.linalg.lstsq(A / scale, y, rcond=None)
    coef = (coef / scale).reshape(n_inv + 1, log_degree + 1)
    return float(np.sum(coef * _tail_integrals(N, power, n_inv, log_degree)))


# inverse-power orders used by the primary tail fit and its cross-check
_N_INV = 3


def sum_with_tail(term: Callable, start: int, N: int, tail: TailModel) -> RealWithError:
    """Sum ``term(n)`` for ``start <= n <= N`` and add a fitted tail.

    ``term`` may be vectorised (called with an int64 array) or scalar.
    For ``power_log`` tails the terms near ``N`` are fitted, by linear least
    squares, to ``n**-power * sum_{i,j} c_ij (N/n)**i (ln n - ln N)**j``
    over the window ``[N/64, N]``; the fitted model is integrated in closed
    form from ``N + 1/2``.  The reported error is the spread between the
    primary fit and two perturbed fits, plus a rounding bound.
    """
    if N < start:
        raise NumericsError("empty range")
    idx = np.arange(start, N + 1, dtype=np.int64)
    vals = _call_term(term, idx)
    _check_finite(vals)
    head = math.fsum(vals)
    abs_mass = float(np.sum(np.abs(vals)))
    rounding = 4 * EPS * abs_mass + EPS * abs(head)

    if not np.any(vals):
        return RealWithError(0.0, 0.0)

    if tail.kind == "none":
        quarter = vals[3 * vals.size // 4:]
        late = abs(math.fsum(quarter))
        if late > math.sqrt(EPS) * max(1.0, abs(head)):
            raise NumericsError("no convergence")
        return RealWithError(head, 2 * abs(vals[-1]) + late * EPS + rounding)

    def lookup(ix):
        return vals[ix - start]

    fit = partial(_fit_tail, lookup, start, N, tail.power, tail.log_degree)
    primary = fit(_N_INV, 64)
    alt_order = fit(_N_INV + 1, 64)
    alt_window = fit(_N_INV + 1, 256)
    spread = max(abs(primary - alt_order), abs(primary - alt_window))
    p = tail.power
    midpoint = 7.0 * p * (p + 1) * (p + 2) * abs(vals[-1]) / (5760.0 * N ** 3)
    err = spread + midpoint + rounding + 8 * EPS * abs(primary)
    return RealWithError(head + primary, err)


def paired_sum(term: Callable, start: int, N: int, tail: TailModel | None = None) -> RealWithError:
    """Sum a sequence with a period-two component by grouping neighbours.

    Terms ``(start + 2j, start + 2j + 1)`` are added pairwise so the summand
    becomes a smooth function of the pair index, then :func:`sum_with_tail`
    handles the truncation.
    """
    if N < start:
        raise NumericsError("empty range")
    first = RealWithError(0.0)
    if (N - start + 1) % 2:
        first = RealWithError(float(_call_term(term, np.array([start], dtype=np.int64))[0]))
        start += 1
        if N < start:
            return first
    idx = np.arange(start, N + 1, dtype=np.int64)
    vals = _call_term(term, idx)
    _check_finite(vals)
    pairs = vals[0::2] + vals[1::2]
    if tail is None:
        tail = TailModel.power_log(2, 2)
    elif tail.kind == "power_log" and tail.power < 2:
        tail = TailModel.power_log(2, tail.log_degree)
    body = sum_with_tail(lambda j: pairs[j - 1], 1, pairs.size, tail)
    return first + body


def alternating_sum(term: Callable, start: int, N: int, tail: TailModel | None = None) -> RealWithError:
    """Sum a sign-alternating series (``term`` already carries the sign).

    The signs of the last 64 non-zero terms are checked; consecutive pairs
    are then combined into an absolutely convergent series.
    """
    if N < start:
        raise NumericsError("empty range")
    lo = max(start, N - 63)
    window = _call_term(term, np.arange(lo, N + 1, dtype=np.int64))
    signs = np.sign(window[window != 0.0])
    if signs.size > 1 and np.any(signs[1:] == signs[:-1]):
        raise NumericsError("not alternating")
    return paired_sum(term, start, N, tail)


# --- tanh-sinh quadrature -------------------------------------------------

_T_MAX = 6.5
_MAX_LEVEL = 12


def _eval(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape == x.shape:
            return y
    except (TypeError, ValueError):
        pass
    return np.array([float(f(float(v))) for v in x])


def _nodes(t: np.ndarray, a: float, b: float):
    """Abscissae and weights of the DE rule at parameters ``t`` (no step factor)."""
    half = 0.5 * (b - a)
    s = 0.5 * math.pi * np.sinh(t)
    # distance from the nearer endpoint, in units of (b - a), computed without cancellation
    e = np.exp(-2.0 * np.abs(s))
    near = e / (1.0 + e)
    x = np.where(t < 0, a + (b - a) * near, b - (b - a) * near)
    w = half * 0.5 * math.pi * np.cosh(t) * 4.0 * near * (1.0 - near)
    # nodes closer than ~1e-290 carry negligible weight and invite overflow in 1/x factors
    keep = (x > a) & (x < b) & (near > 1e-290)
    return x[keep], w[keep]


def quad_tanh_sinh(f: Callable, a: float, b: float, tol: float = 1e-12) -> RealWithError:
    """Double-exponential quadrature on ``(a, b)``.

    Endpoint singularities are tolerated.  Nodes that round onto an
    endpoint are dropped, so place a logarithmic singularity at ``a = 0``
    where doubles are densest when accuracy near it matters.  The step is
    halved until successive estimates agree to ``tol`` or level 12 is
    reached; the returned ``err`` is the last change between levels.
    """
    if not tol > 0:
        raise NumericsError("tolerance must be positive")
    if a == b:
        return RealWithError(0.0)
    if a > b:
        r = quad_tanh_sinh(f, b, a, tol)
        return RealWithError(-r.value, r.err)

    def level_sum(t):
        x, w = _nodes(t, a, b)
        y = _eval(f, x)
        if not np.all(np.isfinite(y)):
            raise NumericsError("interior singularity")
        return math.fsum(w * y), float(np.sum(np.abs(w * y)))

    h = 1.0
    t0 = np.arange(-_T_MAX, _T_MAX + h / 2, h)
    total, mass = level_sum(t0)
    estimate = total * h
    err = math.inf
    for level in range(1, _MAX_LEVEL + 1):
        h /= 2
        k = np.arange(1, int(round(2 * _T_MAX / h)) + 1, 2)
        t_new = -_T_MAX + k * h
        new, new_mass = level_sum(t_new)
        total += new
        mass += new_mass
        refined = total * h
        err = abs(refined - estimate)
        estimate = refined
        if level >= 3 and err <= tol:
            break
    # mass lost to nodes dropped at the endpoints
    x_all, _ = _nodes(np.arange(-_T_MAX, _T_MAX + h / 2, h), a, b)
    ends = np.array([x_all[0], x_all[-1]])
    y_ends = np.abs(_eval(f, ends))
    clipped = float(y_ends[0] * (ends[0] - a) + y_ends[1] * (b - ends[1]))
    err = max(err, 16 * EPS * mass * h) + clipped
    return RealWithError(estimate, err)
