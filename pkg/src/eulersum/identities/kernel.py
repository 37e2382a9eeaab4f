"""Kernel sums ``sum f(n) / ((n+r)(n+k))`` and the integral identities behind them."""

from __future__ import annotations

from fractions import Fraction

from ..oracle import H, L, W, Z, integral_sides
from ._base import (
    LN2,
    IdentityRecord,
    Hn,
    Ln,
    Yn,
    fact,
    finite_sum,
    first_violation,
    grid,
    need,
    q,
    sgn,
    total,
    z,
    zb,
)

K_GRID = (1, 2, 3, 5, 10)
RK_PAIRS = ((1, 2), (1, 3), (2, 3), (1, 5), (3, 5), (1, 10), (5, 10))


def _k(P):
    return need(P["k"] >= 1, "requires k >= 1")


def _mk(P):
    return first_violation(need(P["m"] >= 1, "requires m >= 1"), _k(P))


def _mrk(P):
    return first_violation(need(P["m"] >= 1, "requires m >= 1"),
                           need(P["r"] >= 1, "requires r >= 1"),
                           need(P["r"] < P["k"], "requires r < k"))


def _prk(P):
    return first_violation(need(P["p"] >= 2, "requires p >= 2"),
                           need(P["r"] >= 1, "requires r >= 1"),
                           need(P["r"] < P["k"], "requires r < k"))


def _pk(P):
    return first_violation(need(P["p"] >= 2, "requires p >= 2"), _k(P))


def rk_grid(**extra):
    out = []
    for base in grid(**extra) if extra else ({},):
        for r, k in RK_PAIRS:
            out.append(dict(base, r=r, k=k))
    return tuple(out)


# --- zeta_n(m) and L_n(m) over n(n+k) --------------------------------------


def rhs_zeta_kernel(m: int, k: int):
    parts = [z(m + 1)]
    parts += [sgn(j - 1) * z(m + 1 - j) * q(Hn(k - 1, j)) for j in range(1, m)]
    parts.append(q(sgn(m - 1) * finite_sum("H/i^m", k - 1, m)))
    return total(parts) / k


def rhs_alt_kernel(m: int, k: int):
    parts = [zb(m + 1)]
    parts += [sgn(j - 1) * zb(m + 1 - j) * q(Hn(k - 1, j)) for j in range(1, m)]
    parts.append(sgn(m - 1) * LN2() * q(Hn(k - 1, m) + Ln(k - 1, m)))
    parts.append(q(sgn(m) * finite_sum("aL/i^m", k - 1, m)))
    return total(parts) / k


def rhs_zeta_kernel_r(m: int, r: int, k: int):
    parts = [sgn(j - 1) * z(m + 1 - j) * q(Hn(k - 1, j) - Hn(r - 1, j)) for j in range(1, m)]
    parts.append(q(sgn(m - 1) * (finite_sum("H/i^m", k - 1, m) - finite_sum("H/i^m", r - 1, m))))
    return total(parts) / (k - r)


def rhs_alt_kernel_r(m: int, r: int, k: int):
    parts = [sgn(j - 1) * zb(m + 1 - j) * q(Hn(k - 1, j) - Hn(r - 1, j)) for j in range(1, m)]
    parts.append(sgn(m - 1) * LN2() * q(Hn(k - 1, m) - Hn(r - 1, m) + Ln(k - 1, m) - Ln(r - 1, m)))
    parts.append(q(sgn(m) * (finite_sum("aL/i^m", k - 1, m) - finite_sum("aL/i^m", r - 1, m))))
    return total(parts) / (k - r)


def rhs_stirling_kernel(p: int, k: int):
    return (fact(p - 1) * z(p) + q(Yn(p, k) / p - Yn(p - 1, k) / k)) / k


RECORDS = [
    IdentityRecord(
        "eq-1.2", "sum H_n^2/(n(n+k)) in zeta values and finite harmonic sums", ("k",), _k,
        grid(k=K_GRID),
        lambda P, ev: ev.ker(0, P["k"], H(2)),
        lambda P, ev: (3 * z(3) + q(Yn(3, P["k"]) / 3 - Yn(2, P["k"]) / P["k"]
                                    - finite_sum("H/i^m", P["k"] - 1, 2))
                       + z(2) * q(Hn(P["k"] - 1))) / P["k"],
        1e-6, "kernel"),
    IdentityRecord(
        "eq-2.1", "sum zeta_n(m)/(n(n+k))", ("m", "k"), _mk,
        grid(m=(1, 2, 3), k=K_GRID),
        lambda P, ev: ev.ker(0, P["k"], Z(P["m"])),
        lambda P, ev: rhs_zeta_kernel(P["m"], P["k"]),
        1e-6, "kernel"),
    IdentityRecord(
        "eq-2.2", "sum L_n(m)/(n(n+k))", ("m", "k"), _mk,
        grid(m=(1, 2, 3), k=K_GRID),
        lambda P, ev: ev.ker(0, P["k"], L(P["m"])),
        lambda P, ev: rhs_alt_kernel(P["m"], P["k"]),
        1e-6, "kernel"),
    IdentityRecord(
        "eq-2.10", "sum zeta_n(m)/((n+r)(n+k)), 1 <= r < k", ("m", "r", "k"), _mrk,
        rk_grid(m=(1, 2, 3)),
        lambda P, ev: ev.ker(P["r"], P["k"], Z(P["m"])),
        lambda P, ev: rhs_zeta_kernel_r(P["m"], P["r"], P["k"]),
        1e-6, "kernel"),
    IdentityRecord(
        "eq-2.11", "sum L_n(m)/((n+r)(n+k)), 1 <= r < k", ("m", "r", "k"), _mrk,
        rk_grid(m=(1, 2, 3)),
        lambda P, ev: ev.ker(P["r"], P["k"], L(P["m"])),
        lambda P, ev: rhs_alt_kernel_r(P["m"], P["r"], P["k"]),
        1e-6, "kernel"),
    IdentityRecord(
        "eq-2.12", "sum H_n/(n(n+k))", ("k",), _k,
        grid(k=K_GRID),
        lambda P, ev: ev.ker(0, P["k"], H()),
        lambda P, ev: (q((Hn(P["k"]) ** 2 + Hn(P["k"], 2)) / 2 - Hn(P["k"]) / P["k"]) + z(2)) / P["k"],
        1e-8, "kernel"),
    IdentityRecord(
        "eq-2.13", "sum L_n(1)/(n(n+k))", ("k",), _k,
        grid(k=K_GRID),
        lambda P, ev: ev.ker(0, P["k"], L(1)),
        lambda P, ev: _rhs_l1_kernel(P["k"]),
        1e-8, "kernel"),
    IdentityRecord(
        "eq-2.21", "(p-1)! sum S(n+1,p)/(n! n(n+k)) in zeta(p) and Bell polynomials", ("p", "k"), _pk,
        grid(p=(2, 3, 4), k=K_GRID),
        lambda P, ev: fact(P["p"] - 1) * ev.ker(0, P["k"], W(P["p"])),
        lambda P, ev: rhs_stirling_kernel(P["p"], P["k"]),
        1e-6, "kernel"),
    IdentityRecord(
        "eq-2.27", "(p-1)!(k-r) sum S(n+1,p)/(n!(n+r)(n+k)) = (Y_p(k-1) - Y_p(r-1))/p", ("p", "r", "k"), _prk,
        rk_grid(p=(2, 3, 4)),
        lambda P, ev: fact(P["p"] - 1) * (P["k"] - P["r"]) * ev.ker(P["r"], P["k"], W(P["p"])),
        lambda P, ev: q((Yn(P["p"], P["k"] - 1) - Yn(P["p"], P["r"] - 1)) / P["p"]),
        1e-6, "kernel"),
    IdentityRecord(
        "eq-2.28", "sum (H_n^2 - zeta_n(2))/(n(n+k))", ("k",), _k,
        grid(k=K_GRID),
        lambda P, ev: ev.ker(0, P["k"], H(2)) - ev.ker(0, P["k"], Z(2)),
        lambda P, ev: (2 * z(3) + q(Yn(3, P["k"]) / 3 - Yn(2, P["k"]) / P["k"])) / P["k"],
        1e-6, "kernel"),
    IdentityRecord(
        "eq-2.29", "sum (H_n^3 - 3 H_n zeta_n(2) + 2 zeta_n(3))/(n(n+k))", ("k",), _k,
        grid(k=K_GRID),
        lambda P, ev: (ev.ker(0, P["k"], H(3)) - 3 * ev.ker(0, P["k"], H(), Z(2))
                       + 2 * ev.ker(0, P["k"], Z(3))),
        lambda P, ev: (q(Yn(4, P["k"]) / 4 - Yn(3, P["k"]) / P["k"]) + 6 * z(4)) / P["k"],
        1e-6, "kernel"),
    IdentityRecord(
        "eq-2.30", "sum zeta_n(2)/(n(n+k))", ("k",), _k,
        grid(k=K_GRID),
        lambda P, ev: ev.ker(0, P["k"], Z(2)),
        lambda P, ev: (z(3) + z(2) * q(Hn(P["k"] - 1)) - q(finite_sum("H/i^m", P["k"] - 1, 2))) / P["k"],
        1e-6, "kernel"),
]


def _rhs_l1_kernel(k: int):
    hk, lk, zk2 = Hn(k), Ln(k), Hn(k, 2)
    parts = [
        zb(2),
        LN2() * q(hk + lk),
        -LN2() * q(Fraction(1 + sgn(k - 1), k)),
        q(-(lk**2 + zk2) / 2 + lk * sgn(k - 1) / k),
    ]
    return total(parts) / k


# --- integral identities ---------------------------------------------------------


def _integral(which):
    def both(P, ev, _cache={}):
        key = (which, tuple(sorted(P.items())), ev.config)
        if key not in _cache:
            _cache[key] = integral_sides(which, P, ev.config)
        return _cache[key]

    return (lambda P, ev: both(P, ev)[0]), (lambda P, ev: both(P, ev)[1])


def _mrk0(P):
    return first_violation(need(P["m"] >= 1, "requires m >= 1"),
                           need(P["r"] >= 0, "requires r >= 0"),
                           need(P["r"] < P["k"], "requires r < k"))


def _prk0(P):
    return first_violation(need(P["p"] >= 2, "requires p >= 2"),
                           need(P["r"] >= 0, "requires r >= 0"),
                           need(P["r"] < P["k"], "requires r < k"))


def _nq_x(P):
    x = Fraction(P["x"])
    return first_violation(need(P["n"] >= 1, "requires n >= 1"), need(P["q"] >= 1, "requires q >= 1"),
                           need(-1 <= x <= 1, "requires -1 <= x <= 1"),
                           need(not (P["q"] == 1 and x == 1), "requires x < 1 when q = 1"))


def _nk(P):
    return first_violation(need(P["n"] >= 1, "requires n >= 1"), need(P["k"] >= 0, "requires k >= 0"))


def _nx(upper_open):
    def check(P):
        x = Fraction(P["x"])
        ok = -1 <= x < 1 if upper_open else -1 <= x <= 1
        return first_violation(need(P["n"] >= 1, "requires n >= 1"),
                               need(ok, "requires -1 <= x < 1" if upper_open else "requires -1 <= x <= 1"))
    return check


_MRK0_GRID = tuple(dict(m=m, r=r, k=k) for m in (1, 2, 3) for r, k in ((0, 1), (0, 3), (1, 2), (2, 5)))
_PRK0_GRID = tuple(dict(p=p, r=r, k=k) for p in (2, 3, 4) for r, k in ((0, 1), (0, 3), (1, 2), (2, 5)))
_X_VALUES = (Fraction(-1), Fraction(-1, 2), Fraction(1, 2), Fraction(1))

INTEGRAL_SPECS = [
    ("eq-2.5", "eq2_5", "int (x^(r-1) - x^(k-1)) Li_m(x)/(1-x) = (k-r) sum zeta_n(m)/((n+r)(n+k))",
     ("m", "r", "k"), _mrk0, _MRK0_GRID),
    ("eq-2.6", "eq2_6", "int (x^(k-1) - x^(r-1)) Li_m(-x)/(1-x) = (k-r) sum L_n(m)/((n+r)(n+k))",
     ("m", "r", "k"), _mrk0, _MRK0_GRID),
    ("eq-2.7", "eq2_7", "int (x^(r-1) - x^(k-1)) Li_m(x)/(1-x) as a sum of moments of Li_m",
     ("m", "r", "k"), _mrk0, _MRK0_GRID),
    ("eq-2.8", "eq2_8", "int (x^(k-1) - x^(r-1)) Li_m(-x)/(1-x) as moments of Li_m on (-1, 0)",
     ("m", "r", "k"), _mrk0, _MRK0_GRID),
    ("eq-2.9", "eq2_9", "int_0^x t^(n-1) Li_q(t) dt by repeated integration by parts",
     ("n", "q", "x"), _nq_x,
     tuple(dict(n=n, q=qq, x=x) for n in (1, 2, 5) for qq in (1, 2, 3) for x in _X_VALUES
           if not (qq == 1 and x == 1))),
    ("eq-2.14", "eq2_14", "int_0^1 t^(n-1) ln^k(1-t) dt = (-1)^k Y_k(n)/n",
     ("n", "k"), _nk, grid(n=tuple(range(1, 11)), k=(0, 1, 2, 3, 4))),
    ("eq-2.17", "eq2_17", "int_0^x t^(n-1) ln(1-t) dt in closed form, and its x -> 1 limit -H_n/n",
     ("n", "x"), _nx(False), grid(n=(1, 2, 5), x=_X_VALUES)),
    ("eq-2.18", "eq2_18", "int_0^x t^(n-1) ln^2(1-t) dt in closed form",
     ("n", "x"), _nx(True), grid(n=(1, 2, 5), x=_X_VALUES[:-1])),
    ("eq-2.19", "eq2_19", "int_0^1 t^(n-1) ln^2(1-t) dt = (2/n) sum_k H_k/k",
     ("n",), lambda P: need(P["n"] >= 1, "requires n >= 1"), grid(n=(1, 2, 3, 5, 10))),
    ("eq-2.20", "eq2_20", "int_0^1 t^(n-1) ln^k(1-t) dt as a k-fold iterated harmonic sum",
     ("n", "k"), _nk, grid(n=(1, 2, 5), k=(1, 2, 3, 4, 5))),
    ("eq-2.24", "eq2_24", "int ln^(p-1)(1-x)(x^(r-1) - x^(k-1))/(1-x) as a Stirling kernel sum",
     ("p", "r", "k"), _prk0, _PRK0_GRID),
    ("eq-2.25", "eq2_25", "int ln^(p-1)(1-x)(x^(r-1) - x^(k-1))/(1-x) as a sum of log moments",
     ("p", "r", "k"), _prk0, _PRK0_GRID),
    ("eq-2.26", "eq2_26", "int_0^1 ln^(p-1)(1-x)/x dx = (-1)^(p-1) (p-1)! zeta(p)",
     ("p",), lambda P: need(P["p"] >= 2, "requires p >= 2"), grid(p=(2, 3, 4, 5, 6))),
]

for _id, _which, _title, _params, _dom, _grid in INTEGRAL_SPECS:
    _l, _r = _integral(_which)
    _tol = 1e-8 if _which in ("eq2_5", "eq2_6", "eq2_24") else 1e-10
    RECORDS.append(IdentityRecord(_id, _title, _params, _dom, _grid, _l, _r, _tol, "integral"))
