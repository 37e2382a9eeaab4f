"""Alternating shifted sums and relations among products of partial polylogarithms."""

from __future__ import annotations

from fractions import Fraction

from ..oracle import DivergentSum, H, L, Power, SumDescriptor, Z, inner, plan
from ._base import (
    LN2,
    IdentityRecord,
    Hn,
    Ln,
    finite_sum,
    first_violation,
    grid,
    li,
    need,
    q,
    sgn,
    total,
    z,
    zb,
)
from .kernel import K_GRID, _k, _mk

HALF = Fraction(1, 2)


# --- alternating sums over n + k ------------------------------------------------


def rhs_zeta_shift_alt(P, ev):
    m, k = P["m"], P["k"]
    parts = [
        sgn(k) * (ev.pw(1, Z(m), alt=True) - zb(m + 1)),
        sgn(k + m + 1) * LN2() * q(Hn(k - 1, m) + Ln(k - 1, m)),
    ]
    parts += [sgn(k + j - 1) * zb(m + 1 - j) * q(Ln(k - 1, j)) for j in range(1, m)]
    parts.append(q(sgn(m + k) * finite_sum("L/i^m", k - 1, m)))
    return total(parts)


def rhs_alt_shift_alt(P, ev):
    m, k = P["m"], P["k"]
    head = z(m + 1) - ev.pw(1, L(m), alt=True) + q(sgn(m) * finite_sum("aH/i^m", k - 1, m))
    parts = [sgn(k - 1) * head]
    parts += [sgn(k + j - 1) * z(m + 1 - j) * q(Ln(k - 1, j)) for j in range(1, m)]
    return total(parts)


def lhs_238(P, ev):
    m = P["m"]
    return ev.pw(m, L(1, 2)) + 2 * ev.pw(1, L(1), Z(m), alt=True)


def rhs_238(P, ev):
    m = P["m"]
    return (ev.pw(2, Z(m)) + 2 * ev.pw(m + 1, L(1), alt=True)
            + LN2() ** 2 * z(m) - z(m + 2))


def lhs_239(P, ev):
    m = P["m"]
    return ev.pw(m, L(1, 2), alt=True) + 2 * ev.pw(1, L(1), L(m), alt=True)


def rhs_239(P, ev):
    m = P["m"]
    return ev.pw(2, L(m)) + 2 * ev.pw(m + 1, L(1)) + LN2() ** 2 * zb(m) - zb(m + 2)


# --- products of partial polylogarithms -----------------------------------------


def _series_235(P):
    """Left series, right series and the ``(order, argument)`` polylog factors."""
    l1, l2, m = P["l1"], P["l2"], P["m"]
    x, y, zz = (Fraction(P[v]) for v in ("x", "y", "z"))
    lhs = [
        SumDescriptor((Z(l1, x=x), Z(l2, x=y)), Power(m), weight=zz),
        SumDescriptor((Z(l1, x=x), Z(m, x=zz)), Power(l2), weight=y),
        SumDescriptor((Z(l2, x=y), Z(m, x=zz)), Power(l1), weight=x),
    ]
    rhs = [
        SumDescriptor((Z(m, x=zz),), Power(l1 + l2), weight=x * y),
        SumDescriptor((Z(l1, x=x),), Power(m + l2), weight=y * zz),
        SumDescriptor((Z(l2, x=y),), Power(l1 + m), weight=x * zz),
    ]
    polylogs = [(m, zz), (l1, x), (l2, y), (l1 + l2 + m, x * y * zz)]
    return lhs, rhs, polylogs


def _series_240(P):
    l1, l2, m = P["l1"], P["l2"], P["m"]
    x, y, zz = (Fraction(P[v]) for v in ("x", "y", "z"))
    I = inner(m, zz)
    h = Z(1, x=zz)
    lhs = [
        SumDescriptor((Z(l1, x=x), Z(l2, x=y), h), Power(m)),
        SumDescriptor((Z(l1, x=x), I), Power(l2), weight=y),
        SumDescriptor((Z(l2, x=y), I), Power(l1), weight=x),
    ]
    rhs = [
        SumDescriptor((I,), Power(l1 + l2), weight=x * y),
        SumDescriptor((Z(l1, x=x), h), Power(m + l2), weight=y),
        SumDescriptor((Z(l2, x=y), h), Power(m + l1), weight=x),
        SumDescriptor((h,), Power(m)),
        SumDescriptor((h,), Power(m + l1 + l2), weight=x * y),
    ]
    polylogs = [(l1, x), (l2, y)]
    return lhs, rhs, polylogs


def _domain_products(series, min_m=1):
    def check(P):
        bad = first_violation(
            need(min(P["l1"], P["l2"]) >= 1, "requires l1, l2 >= 1"),
            need(P["m"] >= min_m, f"requires m >= {min_m}"),
            need(all(-1 <= Fraction(P[v]) <= 1 for v in ("x", "y", "z")), "requires x, y, z in [-1, 1]"),
        )
        if bad:
            return bad
        lhs, rhs, polylogs = series(P)
        for p, arg in polylogs:
            if p == 1 and arg == 1:
                return "requires every polylogarithm to converge (order 1 at argument 1 diverges)"
        for d in lhs + rhs:
            try:
                plan(d)
            except DivergentSum:
                return f"requires every constituent series to converge ({d} diverges)"
        return None

    return check


def lhs_235(P, ev):
    lhs, _, _ = _series_235(P)
    return total(ev.desc(d) for d in lhs)


def rhs_235(P, ev):
    _, rhs, pl = _series_235(P)
    (m, zz), (l1, x), (l2, y), (s, xyz) = pl
    return total(ev.desc(d) for d in rhs) + li(m, zz) * li(l1, x) * li(l2, y) - li(s, xyz)


def lhs_240(P, ev):
    lhs, _, _ = _series_240(P)
    return total(ev.desc(d) for d in lhs)


def rhs_240(P, ev):
    _, rhs, pl = _series_240(P)
    a, b, c, d, e = (ev.desc(s) for s in rhs)
    (l1, x), (l2, y) = pl
    return a + b + c + li(l1, x) * li(l2, y) * d - e


def lhs_241(P, ev):
    l1, l2, m = P["l1"], P["l2"], P["m"]
    return (ev.pw(m, H(), Z(l1), Z(l2)) + ev.pw(l2, Z(l1), inner(m))
            + ev.pw(l1, Z(l2), inner(m)))


def rhs_241(P, ev):
    l1, l2, m = P["l1"], P["l2"], P["m"]
    return (ev.pw(l1 + l2, inner(m)) + ev.pw(m + l2, H(), Z(l1)) + ev.pw(m + l1, H(), Z(l2))
            + z(l1) * z(l2) * ev.pw(m, H()) - ev.pw(m + l1 + l2, H()))


def rhs_243(P, ev):
    l1, l2, m = P["l1"], P["l2"], P["m"]
    return (ev.pw(m + l2, H(), Z(l1)) + ev.pw(m + l1, H(), Z(l2)) - ev.pw(m, H(), Z(l1 + l2))
            + (z(l1 + l2) + z(l1) * z(l2)) * ev.pw(m, H()))


def _d_241(P):
    return need(min(P["l1"], P["l2"], P["m"]) >= 2, "requires l1, l2, m >= 2")


_GRID_235 = tuple(
    dict(l1=a, l2=b, m=c, x=x, y=y, z=w)
    for a, b, c in ((1, 1, 2), (1, 2, 1), (2, 1, 3))
    for x in (HALF, -HALF) for y in (HALF, -HALF) for w in (HALF, -HALF)
) + tuple(dict(l1=1, l2=1, m=m, x=Fraction(-1), y=Fraction(-1), z=Fraction(1)) for m in (2, 3)) + tuple(
    dict(l1=1, l2=1, m=m, x=Fraction(-1), y=Fraction(-1), z=Fraction(-1)) for m in (1, 2, 3))

_GRID_240 = tuple(
    dict(l1=a, l2=b, m=c, x=x, y=y, z=w)
    for a, b, c in ((1, 1, 2), (1, 2, 2))
    for x in (HALF, -HALF) for y in (HALF, -HALF) for w in (HALF, -HALF)
) + (
    dict(l1=1, l2=1, m=2, x=Fraction(-1), y=Fraction(-1), z=Fraction(-1)),
    dict(l1=1, l2=1, m=2, x=Fraction(-1), y=Fraction(-1), z=HALF),
    dict(l1=2, l2=2, m=2, x=HALF, y=-HALF, z=Fraction(-1)),
)

_GRID_241 = tuple(dict(l1=a, l2=b, m=c) for a, b, c in
                  ((2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3), (3, 3, 3), (2, 4, 2)))

RECORDS = [
    IdentityRecord(
        "eq-2.31", "alternating sum zeta_n(m)/(n+k)", ("m", "k"), _mk,
        grid(m=(1, 2, 3), k=K_GRID),
        lambda P, ev: ev.sh(P["k"], Z(P["m"]), alt=True),
        rhs_zeta_shift_alt, 1e-8, "alternating"),
    IdentityRecord(
        "eq-2.32", "alternating sum L_n(m)/(n+k)", ("m", "k"), _mk,
        grid(m=(1, 2, 3), k=K_GRID),
        lambda P, ev: ev.sh(P["k"], L(P["m"]), alt=True),
        rhs_alt_shift_alt, 1e-8, "alternating"),
    IdentityRecord(
        "eq-2.33", "alternating sum H_n/(n+k)", ("k",), _k,
        grid(k=K_GRID),
        lambda P, ev: ev.sh(P["k"], H(), alt=True),
        lambda P, ev: sgn(P["k"] - 1) * (
            LN2() ** 2 / 2 - LN2() * q(Hn(P["k"] - 1) + Ln(P["k"] - 1))
            + q(finite_sum("L/i^m", P["k"] - 1, 1))),
        1e-8, "alternating"),
    IdentityRecord(
        "eq-2.34", "alternating sum L_n(1)/(n+k)", ("k",), _k,
        grid(k=K_GRID),
        lambda P, ev: ev.sh(P["k"], L(1), alt=True),
        lambda P, ev: sgn(P["k"] - 1) * (
            (z(2) - LN2() ** 2) / 2 - q(finite_sum("aH/i^m", P["k"] - 1, 1))),
        1e-8, "alternating"),
    IdentityRecord(
        "eq-2.35", "three-way product relation for partial polylogarithms",
        ("l1", "l2", "m", "x", "y", "z"), _domain_products(_series_235), _GRID_235,
        lhs_235, rhs_235, 1e-8, "structural"),
    IdentityRecord(
        "eq-2.38", "sum L_n(1)^2/n^m against alternating sums of L_n(1) zeta_n(m)",
        ("m",), lambda P: need(P["m"] >= 2, "requires m >= 2"), grid(m=(2, 3, 4)),
        lhs_238, rhs_238, 1e-8, "alternating"),
    IdentityRecord(
        "eq-2.39", "alternating sum L_n(1)^2/n^m against sums of L_n(1) L_n(m)",
        ("m",), lambda P: need(P["m"] >= 1, "requires m >= 1"), grid(m=(1, 2, 3)),
        lhs_239, rhs_239, 1e-8, "alternating"),
    IdentityRecord(
        "eq-2.40", "product relation with the nested sum of zeta_k(1,z)/k^m",
        ("l1", "l2", "m", "x", "y", "z"), _domain_products(_series_240, min_m=2), _GRID_240,
        lhs_240, rhs_240, 1e-6, "structural",
        note="first left-hand sum uses zeta_n(l2, y)"),
    IdentityRecord(
        "eq-2.41", "product relation at x = y = z = 1", ("l1", "l2", "m"), _d_241, _GRID_241,
        lhs_241, rhs_241, 1e-5, "structural",
        note="third left-hand sum uses zeta_n(l2)"),
    IdentityRecord(
        "eq-2.42", "sum of nested H_k/k^m sums over n^(p+1) in linear and quadratic sums", ("p", "m"),
        lambda P: first_violation(need(P["p"] >= 1, "requires p >= 1"), need(P["m"] >= 2, "requires m >= 2")),
        grid(p=(1, 2, 3), m=(2, 3, 4)),
        lambda P, ev: ev.pw(P["p"] + 1, inner(P["m"])),
        lambda P, ev: (ev.pw(P["m"] + P["p"] + 1, H()) + z(P["p"] + 1) * ev.pw(P["m"], H())
                       - ev.pw(P["m"], H(), Z(P["p"] + 1))),
        1e-6, "structural"),
    IdentityRecord(
        "eq-2.43", "product relation at x = y = z = 1 with the nested sum eliminated",
        ("l1", "l2", "m"), _d_241, _GRID_241,
        lhs_241, rhs_243, 1e-5, "structural",
        note="third left-hand sum uses zeta_n(l2)"),
    IdentityRecord(
        "eq-2.44", "odd-weight specialisation l1 = l2 = m = 2l+1", ("l",),
        lambda P: need(P["l"] >= 1, "requires l >= 1"), grid(l=(1, 2, 3)),
        lambda P, ev: (ev.pw(2 * P["l"] + 1, H(), Z(2 * P["l"] + 1, 2))
                       + 2 * ev.pw(2 * P["l"] + 1, Z(2 * P["l"] + 1), inner(2 * P["l"] + 1))),
        lambda P, ev: (2 * ev.pw(4 * P["l"] + 2, H(), Z(2 * P["l"] + 1))
                       - ev.pw(2 * P["l"] + 1, H(), Z(4 * P["l"] + 2))
                       + (z(4 * P["l"] + 2) + z(2 * P["l"] + 1) ** 2) * ev.pw(2 * P["l"] + 1, H())),
        1e-5, "structural"),
]
