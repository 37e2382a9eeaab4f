"""Relations among quadratic, cubic and quartic Euler sums.

Each relation is checked as stated: every infinite sum on either side is
evaluated by the oracle, none is solved for.
"""

from __future__ import annotations

from fractions import Fraction

from ..oracle import H, L, W, Y, Z, inner
from ._base import LN2, IdentityRecord, fact, first_violation, grid, need, sgn, total, z, zb

THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)


def _pos(*names, least=None):
    least = least or {}

    def check(P):
        return first_violation(*(need(P[n] >= least.get(n, 1), f"requires {n} >= {least.get(n, 1)}")
                                 for n in names))
    return check


# --- products of zeta_n(l) with nested sums --------------------------------------


def lhs_31(P, ev):
    l, m, p = P["l"], P["m"], P["p"]
    return sgn(m - 1) * ev.pw(p + 1, Z(l), inner(m)) - sgn(p + l) * ev.pw(p + 1, Z(m), inner(l))


def rhs_31(P, ev):
    l, m, p = P["l"], P["m"], P["p"]
    S = ev.pw
    parts = [sgn(i - 1) * S(i + 1, Z(m)) * S(p + 1 - i, Z(l)) for i in range(1, p)]
    parts.append(sgn(p - 1) * z(l + 1) * S(p + 1, Z(m)))
    parts += [sgn(p + j) * z(l + 1 - j) * (S(p + 1, Z(m), Z(j)) - S(p + j + 1, Z(m)))
              for j in range(1, l)]
    parts.append(-sgn(p + l) * S(p + l + 1, H(), Z(m)))
    parts.append(sgn(m - 1) * S(p + m + 1, H(), Z(l)))
    parts.append(-z(m + 1) * S(p + 1, Z(l)))
    parts += [-sgn(j - 1) * z(m + 1 - j) * (S(p + 1, Z(l), Z(j)) - S(p + j + 1, Z(l)))
              for j in range(1, m)]
    return total(parts)


def rhs_32(P, ev):
    l, m = P["l"], P["m"]
    S = ev.pw
    parts = [sgn(m + i) * S(i + 1, Z(m)) * S(2 * l + 1 - i, Z(m)) for i in range(1, l + 1)]
    parts.append(sgn(m + l - 1) * S(l + 1, Z(m)) ** 2 / 2)
    parts.append(-sgn(m - 1) * z(m + 1) * S(2 * l + 1, Z(m)))
    parts.append(S(2 * l + m + 1, H(), Z(m)))
    parts += [-sgn(m + j) * z(m + 1 - j) * (S(2 * l + 1, Z(m), Z(j)) - S(2 * l + j + 1, Z(m)))
              for j in range(1, m)]
    return total(parts)


def rhs_33(P, ev, product_sign=1):
    """Right side for ``sum H_n zeta_n(2l+1)^2 / n^(2l+1)``.

    ``product_sign=-1`` reproduces the printed sign of the sum of products
    ``(-1)**i P_i P_(2l+1-i)``; combining the ``zeta_n(m)`` nested-sum relation at
    ``m = 2l+1`` with the odd-weight specialisation gives ``+1``.
    """
    l = P["l"]
    a = 2 * l + 1
    S = ev.pw
    parts = [
        2 * z(2 * l + 2) * S(a, Z(a)),
        (z(4 * l + 2) + z(a) ** 2) * S(a, H()),
        -sgn(l) * S(l + 1, Z(a)) ** 2,
        -S(a, H(), Z(4 * l + 2)),
    ]
    parts += [2 * product_sign * sgn(i) * S(i + 1, Z(a)) * S(a - i, Z(a)) for i in range(1, l + 1)]
    parts += [2 * sgn(j - 1) * z(2 * l + 2 - j) * (S(a, Z(a), Z(j)) - S(a + j, Z(a)))
              for j in range(1, 2 * l + 1)]
    return total(parts)


def rhs_34(P, ev):
    m = P["m"]
    S = ev.pw
    parts = [2 * sgn(m + i) * S(i + 1, Z(m)) * S(m - i, H()) for i in range(1, m - 1)]
    parts.append(-z(2) * (z(m) ** 2 + z(2 * m)))
    parts.append(-2 * sgn(m - 1) * z(m + 1) * S(m, H()))
    parts += [-2 * sgn(m + j) * z(m + 1 - j) * (S(m, H(), Z(j)) - S(m + j, H()))
              for j in range(1, m)]
    parts += [2 * S(m + 1, H(), Z(m)), S(2 * m, H(2)), -S(m, H()) ** 2, -S(m, Z(2), Z(m))]
    return total(parts)


# --- Stirling-number weighted sums --------------------------------------------------


def lhs_35(P, ev):
    p1, p2, m = P["p1"], P["p2"], P["m"]
    return (Fraction(fact(p1 - 1), p2) * ev.pw(m + 1, W(p1), Y(p2))
            - sgn(m - 1) * Fraction(fact(p2 - 1), p1) * ev.pw(m + 1, W(p2), Y(p1)))


def rhs_35(P, ev):
    p1, p2, m = P["p1"], P["p2"], P["m"]
    S = ev.pw
    f1, f2 = fact(p1 - 1), fact(p2 - 1)
    parts = [f1 * S(m + 2, W(p1), Y(p2 - 1)), -sgn(m - 1) * f2 * S(m + 2, W(p2), Y(p1 - 1))]
    parts += [f1 * f2 * sgn(i - 1) * S(m + 1 - i, W(p1)) * S(i + 1, W(p2)) for i in range(1, m)]
    parts.append(sgn(m - 1) * f1 * f2 * z(p1) * S(m + 1, W(p2)))
    parts.append(-f1 * f2 * z(p2) * S(m + 1, W(p1)))
    return total(parts)


def rhs_314(P, ev):
    p, k = P["p"], P["k"]
    S = ev.pw
    f = fact(p - 1)
    parts = [f * S(2 * k + 2, W(p), Y(p - 1)), -f * f * z(p) * S(2 * k + 1, W(p))]
    parts += [f * f * sgn(i - 1) * S(2 * k + 1 - i, W(p)) * S(i + 1, W(p)) for i in range(1, k + 1)]
    parts.append(-Fraction(f * f, 2) * sgn(k - 1) * S(k + 1, W(p)) ** 2)
    return total(parts)


# --- sums of H_n^2, H_n L_n(1) and L_n(1)^2 -----------------------------------------


def rhs_37(P, ev):
    m = P["m"]
    S = ev.pw
    parts = [sgn(j) * z(m - j) * S(j + 2, H()) for j in range(0, m - 1)]
    parts += [-z(2) * z(m + 1), S(m + 2, H()), -S(m + 1, Z(2)) / 2]
    return total(parts)


def lhs_38(P, ev):
    m = P["m"]
    return ev.pw(m + 1, H(2), alt=True) / 2 + sgn(m - 1) * ev.pw(m + 1, H(), L(1), alt=True)


def rhs_38(P, ev):
    m = P["m"]
    S = ev.pw
    parts = [sgn(j - 1) * zb(m - j + 1) * S(j + 1, H()) for j in range(1, m)]
    parts += [
        sgn(m - 1) * LN2() * S(m + 1, H()),
        S(m + 2, H(), alt=True),
        sgn(m - 1) * LN2() * S(m + 1, H(), alt=True),
        -S(m + 1, Z(2), alt=True) / 2,
        -z(2) * zb(m + 1),
    ]
    return total(parts)


def rhs_39(P, ev):
    m = P["m"]
    S = ev.pw
    parts = [
        zb(2) * zb(m + 1),
        LN2() * (S(m + 1, H(), alt=True) + S(m + 1, L(1), alt=True)),
        sgn(m) * LN2() * (S(m + 1, L(1)) + S(m + 1, L(1), alt=True)),
        S(m + 2, L(1)),
        -LN2() * (zb(m + 2) + z(m + 2)),
        -S(m + 1, Z(2), alt=True) / 2,
    ]
    parts += [-sgn(j - 1) * zb(m - j + 1) * S(j + 1, L(1)) for j in range(1, m)]
    return total(parts)


def rhs_310(P, ev):
    m = P["m"]
    S = ev.pw
    parts = [
        zb(2) * z(m + 1),
        LN2() * (S(m + 1, H()) + S(m + 1, L(1))),
        -LN2() * (zb(m + 2) + z(m + 2)),
        -S(m + 1, Z(2)) / 2,
        S(m + 2, L(1), alt=True),
    ]
    parts += [-sgn(j - 1) * z(m - j + 1) * S(j + 1, L(1)) for j in range(1, m)]
    return total(parts)


# --- cubic and quartic sums ------------------------------------------------------------


def _sq_minus(ev, p):
    """``sum (H_n^2 - zeta_n(2)) / n^p``."""
    return ev.pw(p, H(2)) - ev.pw(p, Z(2))


def _sq_plus(ev, p):
    return ev.pw(p, H(2)) + ev.pw(p, Z(2))


def lhs_311(P, ev):
    m = P["m"]
    return (THIRD + sgn(m)) * ev.pw(m + 1, H(3)) + (1 + sgn(m - 1)) * ev.pw(m + 1, H(), Z(2))


def rhs_311(P, ev):
    m = P["m"]
    parts = [sgn(j) * z(m - j) * _sq_minus(ev, j + 2) for j in range(0, m - 1)]
    parts += [_sq_plus(ev, m + 2), -2 * THIRD * ev.pw(m + 1, Z(3)), -2 * z(3) * z(m + 1)]
    return total(parts)


def rhs_312(P, ev):
    m = P["m"]
    S = ev.pw
    a = 2 * m + 1
    parts = [
        2 * zb(2) * S(a, L(1)),
        2 * LN2() * (S(a, H(), L(1)) + S(a, L(1, 2))),
        -2 * LN2() * (S(a + 1, L(1)) + S(a + 1, L(1), alt=True)),
        2 * S(a + 1, L(1, 2), alt=True),
    ]
    parts += [-2 * sgn(i - 1) * S(i + 1, L(1)) * S(a - i, L(1)) for i in range(1, m + 1)]
    parts.append(sgn(m - 1) * S(m + 1, L(1)) ** 2)
    return total(parts)


def lhs_313(P, ev):
    m = P["m"]
    S = ev.pw
    return ((S(m + 1, H(), L(1, 2)) + S(m + 1, H(), Z(2))) / 2
            + sgn(m - 1) * (S(m + 1, H(2), L(1)) + S(m + 1, L(1), Z(2))) / 2)


def rhs_313(P, ev):
    m = P["m"]
    S = ev.pw
    parts = [
        zb(2) * S(m + 1, H()),
        LN2() * (S(m + 1, H(2)) + S(m + 1, H(), L(1))),
        -LN2() * (S(m + 2, H()) + S(m + 2, H(), alt=True)),
    ]
    parts += [-sgn(i - 1) * S(i + 1, L(1)) * S(m + 1 - i, H()) for i in range(1, m)]
    parts += [
        -sgn(m - 1) * z(2) * S(m + 1, L(1)),
        sgn(m - 1) * S(m + 2, H(), L(1)),
        S(m + 2, H(), L(1), alt=True),
    ]
    return total(parts)


def _harmonic_products(ev, k):
    return total(sgn(i - 1) * ev.pw(2 * k + 1 - i, H()) * ev.pw(i + 1, H()) for i in range(1, k + 1))


def rhs_315(P, ev):
    k = P["k"]
    S = ev.pw
    return (2 * S(2 * k + 2, H(2)) + 2 * _harmonic_products(ev, k)
            - 2 * z(2) * S(2 * k + 1, H()) - sgn(k - 1) * S(k + 1, H()) ** 2)


def _cubic_tail(ev, k):
    """The right side of the odd-weight H_n^3 relation."""
    quarter = Fraction(3, 4)
    parts = [quarter * sgn(j) * z(2 * k - j) * _sq_minus(ev, j + 2) for j in range(0, 2 * k - 1)]
    parts += [quarter * _sq_plus(ev, 2 * k + 2), -ev.pw(2 * k + 1, Z(3)) / 2,
              -Fraction(3, 2) * z(3) * z(2 * k + 1)]
    return total(parts)


def rhs_317(P, ev):
    return rhs_315(P, ev) - _cubic_tail(ev, P["k"])


def lhs_318(P, ev):
    m = P["m"]
    S = ev.pw
    return ((THIRD - HALF * sgn(m - 1)) * S(m + 1, H(4)) + S(m + 1, H(2), Z(2))
            + 2 * THIRD * S(m + 1, H(), Z(3)) + HALF * sgn(m - 1) * S(m + 1, Z(2, 2)))


def rhs_318(P, ev):
    m = P["m"]
    S = ev.pw
    parts = [
        (1 - sgn(m - 1)) * S(m + 2, H(3)),
        (1 + sgn(m - 1)) * S(m + 2, H(), Z(2)),
        sgn(m - 1) * z(2) * _sq_minus(ev, m + 1),
        -2 * z(3) * S(m + 1, H()),
    ]
    parts += [sgn(i - 1) * S(m + 1 - i, H()) * _sq_minus(ev, i + 1) for i in range(1, m)]
    return total(parts)


def lhs_319(P, ev):
    m = P["m"]
    S = ev.pw
    return ((Fraction(1, 4) + sgn(m)) * S(m + 1, H(4))
            + 3 * (HALF + sgn(m - 1)) * S(m + 1, H(2), Z(2))
            + 2 * (1 + sgn(m)) * S(m + 1, H(), Z(3))
            + Fraction(3, 4) * S(m + 1, Z(2, 2)))


def _cubic_combo(ev, p, s):
    """``sum (H_n^3 + 3 s H_n zeta_n(2) + 2 zeta_n(3)) / n^p`` with ``s = +-1``."""
    return ev.pw(p, H(3)) + 3 * s * ev.pw(p, H(), Z(2)) + 2 * ev.pw(p, Z(3))


def rhs_319(P, ev):
    m = P["m"]
    parts = [_cubic_combo(ev, m + 2, 1)]
    parts += [sgn(i - 1) * z(m + 1 - i) * _cubic_combo(ev, i + 1, -1) for i in range(1, m)]
    parts += [-Fraction(3, 2) * ev.pw(m + 1, Z(4)), -6 * z(4) * z(m + 1)]
    return total(parts)


# --- Stirling-weighted alternating sums ---------------------------------------------


def lhs_320(P, ev):
    p, m = P["p"], P["m"]
    return (ev.pw(m + 1, Y(p), alt=True) / p
            + sgn(m - 1) * fact(p - 1) * ev.pw(m + 1, W(p), L(1), alt=True))


def rhs_320(P, ev):
    p, m = P["p"], P["m"]
    S = ev.pw
    f = fact(p - 1)
    parts = [S(m + 2, Y(p - 1), alt=True)]
    parts += [f * sgn(i - 1) * zb(m + 1 - i) * S(i + 1, W(p)) for i in range(1, m)]
    parts.append(sgn(m - 1) * f * LN2() * (S(m + 1, W(p)) + S(m + 1, W(p), alt=True)))
    parts.append(-f * z(p) * zb(m + 1))
    return total(parts)


def lhs_321(P, ev):
    p, m = P["p"], P["m"]
    S = ev.pw
    return (S(m + 1, Y(p), L(1)) / p
            + sgn(m - 1) * Fraction(fact(p - 1), 2) * (S(m + 1, W(p), L(1, 2)) + S(m + 1, W(p), Z(2))))


def rhs_321(P, ev, alternating_tail=True):
    """Right side of the Bell-polynomial relation with ``L_n(1)``.

    The sum ``S(n+1,p) L_n(1) / (n! n^(m+2))`` carries ``(-1)**(n-1)`` when
    the relation is rebuilt from the Stirling kernel sum and the ``L_n(1)``
    kernel sum; ``alternating_tail=False`` reproduces the printed form.
    """
    p, m = P["p"], P["m"]
    S = ev.pw
    f = fact(p - 1)
    s = sgn(m - 1)
    parts = [S(m + 2, Y(p - 1), L(1))]
    parts += [f * sgn(i - 1) * S(m + 1 - i, L(1)) * S(i + 1, W(p)) for i in range(1, m)]
    parts += [
        s * f * zb(2) * S(m + 1, W(p)),
        s * f * S(m + 2, W(p), L(1), alt=alternating_tail),
        -s * f * LN2() * (S(m + 2, W(p)) + S(m + 2, W(p), alt=True)),
        s * f * LN2() * (S(m + 1, W(p), H()) + S(m + 1, W(p), L(1))),
        -f * z(p) * S(m + 1, L(1)),
    ]
    return total(parts)


_LMP = grid(l=(1, 2, 3), m=(1, 2, 3), p=(2, 3, 4))
_M3 = grid(m=(1, 2, 3))
_K3 = grid(k=(1, 2, 3))

RECORDS = [
    IdentityRecord(
        "eq-3.1", "nested sums weighted by zeta_n(l) and zeta_n(m), exchanged", ("l", "m", "p"),
        _pos("l", "m", "p", least={"p": 2}), _LMP, lhs_31, rhs_31, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.2", "sum zeta_n(m) (sum_k H_k/k^m) / n^(2l+1)", ("l", "m"), _pos("l", "m"),
        grid(l=(1, 2, 3), m=(1, 2, 3)),
        lambda P, ev: ev.pw(2 * P["l"] + 1, Z(P["m"]), inner(P["m"])), rhs_32, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.3", "sum H_n zeta_n(2l+1)^2 / n^(2l+1)", ("l",), _pos("l"), grid(l=(1, 2, 3)),
        lambda P, ev: ev.pw(2 * P["l"] + 1, H(), Z(2 * P["l"] + 1, 2)), rhs_33, 1e-5, "cubic",
        note="sum of products taken with sign +2(-1)^i, as rebuilt from the nested-sum relation at m = 2l+1"),
    IdentityRecord(
        "eq-3.4", "sum H_n^2 zeta_n(m) / n^m", ("m",), _pos("m", least={"m": 2}), grid(m=(2, 3, 4)),
        lambda P, ev: ev.pw(P["m"], H(2), Z(P["m"])), rhs_34, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.5", "products of Stirling weights and Bell polynomials, exchanged", ("p1", "p2", "m"),
        _pos("p1", "p2", "m", least={"p1": 2, "p2": 2}), grid(p1=(2, 3, 4), p2=(2, 3, 4), m=(1, 2, 3)),
        lhs_35, rhs_35, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.7", "sum H_n^2 / n^(m+1) in linear sums", ("m",), _pos("m"), _M3,
        lambda P, ev: (HALF + sgn(P["m"])) * ev.pw(P["m"] + 1, H(2)), rhs_37, 1e-6, "quadratic"),
    IdentityRecord(
        "eq-3.8", "alternating sums of H_n^2 and H_n L_n(1) over n^(m+1)", ("m",), _pos("m"), _M3,
        lhs_38, rhs_38, 1e-6, "quadratic"),
    IdentityRecord(
        "eq-3.9", "alternating sum L_n(1)^2 / n^(m+1)", ("m",), _pos("m"), _M3,
        lambda P, ev: (HALF + sgn(P["m"])) * ev.pw(P["m"] + 1, L(1, 2), alt=True), rhs_39,
        1e-6, "quadratic"),
    IdentityRecord(
        "eq-3.10", "sums of L_n(1)^2 and H_n L_n(1) over n^(m+1)", ("m",), _pos("m"), _M3,
        lambda P, ev: (ev.pw(P["m"] + 1, L(1, 2)) / 2
                       + sgn(P["m"] - 1) * ev.pw(P["m"] + 1, H(), L(1))),
        rhs_310, 1e-6, "quadratic"),
    IdentityRecord(
        "eq-3.11", "sums of H_n^3 and H_n zeta_n(2) over n^(m+1)", ("m",), _pos("m"), _M3,
        lhs_311, rhs_311, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.12", "sum (L_n(1)^3 + L_n(1) zeta_n(2)) / n^(2m+1)", ("m",), _pos("m"), _M3,
        lambda P, ev: ev.pw(2 * P["m"] + 1, L(1, 3)) + ev.pw(2 * P["m"] + 1, L(1), Z(2)),
        rhs_312, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.13", "mixed cubic sums of H_n and L_n(1) over n^(m+1)", ("m",), _pos("m"), _M3,
        lhs_313, rhs_313, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.14", "Stirling weight times Bell polynomial over n^(2k+1)", ("p", "k"),
        _pos("p", "k", least={"p": 2}), grid(p=(2, 3, 4), k=(1, 2, 3)),
        lambda P, ev: Fraction(fact(P["p"] - 1), P["p"]) * ev.pw(2 * P["k"] + 1, W(P["p"]), Y(P["p"])),
        rhs_314, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.15", "sum (H_n^3 + H_n zeta_n(2)) / n^(2k+1)", ("k",), _pos("k"), _K3,
        lambda P, ev: ev.pw(2 * P["k"] + 1, H(3)) + ev.pw(2 * P["k"] + 1, H(), Z(2)),
        rhs_315, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.16", "sum H_n^3 / n^(2k+1)", ("k",), _pos("k"), _K3,
        lambda P, ev: ev.pw(2 * P["k"] + 1, H(3)),
        lambda P, ev: _cubic_tail(ev, P["k"]), 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.17", "sum H_n zeta_n(2) / n^(2k+1)", ("k",), _pos("k"), _K3,
        lambda P, ev: ev.pw(2 * P["k"] + 1, H(), Z(2)), rhs_317, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.18", "quartic sums from Stirling weights of order 2 and 3", ("m",), _pos("m"), _M3,
        lhs_318, rhs_318, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.19", "quartic sums from Stirling weights of order 1 and 4", ("m",), _pos("m"), _M3,
        lhs_319, rhs_319, 1e-5, "cubic"),
    IdentityRecord(
        "eq-3.20", "alternating Bell-polynomial sums against Stirling-weighted L_n(1) sums", ("p", "m"),
        _pos("p", "m", least={"p": 2}), grid(p=(2, 3, 4), m=(1, 2, 3)),
        lhs_320, rhs_320, 1e-6, "quadratic"),
    IdentityRecord(
        "eq-3.21", "Bell-polynomial sums with L_n(1) against Stirling-weighted sums", ("p", "m"),
        _pos("p", "m", least={"p": 2}), grid(p=(2, 3, 4), m=(1, 2, 3)),
        lhs_321, rhs_321, 1e-5, "cubic",
        note="sum of S(n+1,p) L_n(1)/(n! n^(m+2)) taken with (-1)^(n-1), as rebuilt from the kernel sums"),
]
