"""Closed-form evaluations of individual Euler sums.

Right sides are assembled from zeta values, ``ln 2`` and ``Li_4(1/2)``;
where a closed form keeps ``S_{2,0,6}`` or ``sum zeta_n(2)/n^4 (-1)^(n-1)``
as a named constant, that constant is taken from the oracle.
"""

from __future__ import annotations

from fractions import Fraction as F

from ..oracle import H, L, Z
from ._base import LN2, IdentityRecord, li, z


def _s206(ev):
    return ev.pw(6, Z(2))


def _s204bar(ev):
    return ev.pw(4, Z(2), alt=True)


def _li4():
    return li(4, F(1, 2))


def _golden(rid, title, lhs, rhs, **flags):
    return IdentityRecord(rid, title, (), lambda P: None, ({},),
                          lambda P, ev: lhs(ev), lambda P, ev: rhs(ev), 1e-8, "golden", **flags)


def _s133(ev):
    return (F(9, 2) * z(3) * z(5) + F(3, 2) * z(2) * z(3) ** 2 - F(443, 288) * z(8)
            - F(23, 4) * _s206(ev))


RECORDS = [
    _golden("golden-1.s103bar", "alternating sum H_n/n^3",
            lambda ev: ev.pw(3, H(), alt=True),
            lambda ev: (-2 * _li4() + F(11, 4) * z(4) + z(2) * LN2() ** 2 / 2
                        - LN2() ** 4 / 12 - F(7, 4) * z(3) * LN2())),
    _golden("golden-1.s013bar", "alternating sum L_n(1)/n^3",
            lambda ev: ev.pw(3, L(1), alt=True),
            lambda ev: F(3, 2) * z(4) + z(2) * LN2() ** 2 / 2 - LN2() ** 4 / 12 - 2 * _li4()),
    _golden("golden-3.s122", "sum H_n^2 zeta_n(2)/n^2",
            lambda ev: ev.pw(2, H(2), Z(2)),
            lambda ev: F(41, 12) * z(6) + 2 * z(3) ** 2),
    _golden("golden-3.s133", "sum H_n^2 zeta_n(3)/n^3",
            lambda ev: ev.pw(3, H(2), Z(3)), _s133),
    _golden("golden-3.s233", "sum zeta_n(2) zeta_n(3)/n^3",
            lambda ev: ev.pw(3, Z(2), Z(3)),
            lambda ev: (F(45, 2) * z(3) * z(5) - F(827, 48) * z(8) - F(3, 2) * z(2) * z(3) ** 2
                        - F(23, 4) * _s206(ev))),
    _golden("golden-4.L11bar2", "alternating sum L_n(1)^2/n^2",
            lambda ev: ev.pw(2, L(1, 2), alt=True),
            lambda ev: (-F(41, 16) * z(4) + 2 * z(2) * LN2() ** 2 + LN2() ** 4 / 6
                        + F(7, 4) * z(3) * LN2() + 4 * _li4()),
            doubtful=True,
            note="printed constant misses the sum by 5/4 zeta(4); -61/16 zeta(4) would match"),
    _golden("golden-4.L11bar3", "alternating sum L_n(1)^2/n^3",
            lambda ev: ev.pw(3, L(1, 2), alt=True),
            lambda ev: (-4 * _li4() * LN2() + F(19, 8) * z(4) * LN2() + z(2) * LN2() ** 3
                        - LN2() ** 5 / 6 + F(3, 8) * z(2) * z(3) - F(19, 32) * z(5))),
    _golden("golden-4.L11bar4", "alternating sum L_n(1)^2/n^4",
            lambda ev: ev.pw(4, L(1, 2), alt=True),
            lambda ev: (F(15, 4) * LN2() ** 2 * z(4) + F(9, 4) * z(2) * z(3) * LN2()
                        - F(93, 16) * z(5) * LN2() + F(35, 64) * z(6) - F(15, 16) * z(3) ** 2
                        + _s204bar(ev))),
    _golden("golden-4.L1L2bar1", "alternating sum L_n(1) L_n(2)/n",
            lambda ev: ev.pw(1, L(1), L(2), alt=True),
            lambda ev: (F(61, 16) * z(4) - F(7, 8) * z(3) * LN2() - z(2) * LN2() ** 2 / 4
                        - LN2() ** 4 / 6 - 4 * _li4())),
    _golden("golden-4.L1L3bar1", "alternating sum L_n(1) L_n(3)/n",
            lambda ev: ev.pw(1, L(1), L(3), alt=True),
            lambda ev: (2 * LN2() * _li4() + LN2() ** 5 / 12 + F(3, 8) * z(3) * LN2() ** 2
                        - F(19, 32) * z(5) - z(2) * LN2() ** 3 / 2 + F(11, 16) * z(4) * LN2()
                        + z(2) * z(3) / 4)),
    _golden("golden-4.L1L4bar1", "alternating sum L_n(1) L_n(4)/n",
            lambda ev: ev.pw(1, L(1), L(4), alt=True),
            lambda ev: (-F(35, 128) * z(6) + F(3, 4) * z(3) ** 2 - F(9, 8) * z(2) * z(3) * LN2()
                        + F(155, 32) * z(5) * LN2() - F(23, 16) * z(4) * LN2() ** 2
                        - _s204bar(ev))),
    _golden("golden-4.Hn3n5", "sum H_n^3/n^5",
            lambda ev: ev.pw(5, H(3)),
            lambda ev: (F(469, 32) * z(8) - 16 * z(3) * z(5) + F(3, 2) * z(2) * z(3) ** 2
                        + F(11, 4) * _s206(ev))),
    _golden("golden-4.Hnz2n5", "sum H_n zeta_n(2)/n^5",
            lambda ev: ev.pw(5, H(), Z(2)),
            lambda ev: (-F(343, 48) * z(8) + 12 * z(3) * z(5) - F(5, 2) * z(2) * z(3) ** 2
                        - F(3, 4) * _s206(ev))),
    _golden("golden-4.Hn2z3n3", "sum H_n^2 zeta_n(3)/n^3",
            lambda ev: ev.pw(3, H(2), Z(3)), _s133),
]
