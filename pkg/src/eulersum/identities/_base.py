"""Record type and small helpers shared by the identity tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .. import combinatorics as comb
from ..constants import alt_zeta, ln2, polylog, zeta
from ..numerics import RealWithError
from ..oracle import (
    DivergentSum,
    Kernel,
    OracleConfig,
    Power,
    Shift,
    SumDescriptor,
    evaluate,
    plan,
)

Params = dict
Side = Callable[[Params, "Ev"], RealWithError]


@dataclass(frozen=True)
class IdentityRecord:
    """One identity: parameter domain, both sides and a default tolerance.

    ``domain`` returns ``None`` for admissible parameters and otherwise a
    message naming the violated constraint.  ``doubtful`` marks records
    whose printed form may carry a transcription slip; a failure there is
    reported as ``unconfirmed`` rather than ``fail``.
    """

    id: str
    title: str
    params: tuple[str, ...]
    domain: Callable[[Params], str | None]
    grid: tuple[Params, ...]
    lhs: Side
    rhs: Side
    default_tol: float
    family: str
    doubtful: bool = False
    note: str = ""

    def check(self, params: Params) -> str | None:
        missing = [p for p in self.params if p not in params]
        if missing:
            return f"missing parameter(s): {', '.join(missing)}"
        extra = [p for p in params if p not in self.params]
        if extra:
            return f"unknown parameter(s): {', '.join(extra)}"
        return self.domain(params)


@dataclass
class Ev:
    """Evaluates sums under one truncation configuration."""

    config: OracleConfig = field(default_factory=OracleConfig)

    def desc(self, desc: SumDescriptor) -> RealWithError:
        return evaluate(desc, self.config)

    def pw(self, p: int, *factors, alt: bool = False, w=1) -> RealWithError:
        """``sum prod(factors) / n**p`` with optional sign and weight."""
        return self.desc(SumDescriptor(factors, Power(p), alt, Fraction(w)))

    def ker(self, r: int, k: int, *factors) -> RealWithError:
        return self.desc(SumDescriptor(factors, Kernel(r, k)))

    def sh(self, k: int, *factors, alt: bool = False) -> RealWithError:
        return self.desc(SumDescriptor(factors, Shift(k), alt))


def converges(p: int, *factors, alt: bool = False, w=1) -> bool:
    try:
        plan(SumDescriptor(factors, Power(p), alt, Fraction(w)))
    except DivergentSum:
        return False
    return True


# --- constants and exact finite sums -------------------------------------------

z = zeta
zb = alt_zeta
LN2 = ln2


def li(p: int, x) -> RealWithError:
    return polylog(p, Fraction(x))


def q(x) -> RealWithError:
    """Exact rational as a :class:`RealWithError`."""
    return RealWithError.coerce(Fraction(x))


def Hn(n: int, m: int = 1) -> Fraction:
    return comb.harmonic(max(n, 0), m)


def Ln(n: int, m: int = 1) -> Fraction:
    return comb.alt_harmonic(max(n, 0), m)


def Yn(k: int, n: int) -> Fraction:
    return comb.bell_Y(k, max(n, 0))


@lru_cache(maxsize=None)
def finite_sum(kind: str, upto: int, m: int) -> Fraction:
    """Exact ``sum_{i=1}^{upto}`` of one of the finite harmonic sums.

    ``H/i^m``: ``H_i / i**m``; ``aH/i^m``: ``(-1)**(i-1) H_i / i**m``;
    ``L/i^m``: ``L_i(1) / i**m``; ``aL/i^m``: ``(-1)**(i-1) L_i(1) / i**m``.
    """
    acc = Fraction(0)
    for i in range(1, upto + 1):
        base = comb.harmonic(i) if kind in ("H/i^m", "aH/i^m") else comb.alt_harmonic(i)
        term = base / Fraction(i) ** m
        if kind.startswith("a") and i % 2 == 0:
            term = -term
        acc += term
    return acc


def fact(n: int) -> int:
    return math.factorial(n)


def sgn(e: int) -> int:
    """``(-1)**e``."""
    return -1 if e % 2 else 1


def total(parts) -> RealWithError:
    out = RealWithError(0.0)
    for p in parts:
        out = out + p
    return out


# --- domain helpers ---------------------------------------------------------


def need(cond: bool, message: str) -> str | None:
    return None if cond else message


def first_violation(*checks) -> str | None:
    for c in checks:
        if c:
            return c
    return None


def grid(**axes) -> tuple[Params, ...]:
    """Cartesian product of parameter axes, in a stable order."""
    items = [dict()]
    for name, values in axes.items():
        items = [dict(d, **{name: v}) for d in items for v in values]
    return tuple(items)
