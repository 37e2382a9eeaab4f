"""Outcome of comparing the two sides of an identity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .numerics import RealWithError

STATUSES = ("pass", "fail", "unconfirmed")


def _plain(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


@dataclass
class VerificationResult:
    """Both sides of one identity instance and the verdict.

    ``passed`` holds iff ``residual <= max(tol, 5 * (lhs.err + rhs.err))``.
    ``status`` is ``"unconfirmed"`` instead of ``"fail"`` for records whose
    printed form is known to be doubtful.
    """

    id: str
    params: dict
    lhs: RealWithError
    rhs: RealWithError
    residual: float
    passed: bool
    status: str
    tol: float
    config_used: dict = field(default_factory=dict)

    @classmethod
    def judge(cls, id: str, params: dict, lhs: RealWithError, rhs: RealWithError,
              tol: float, config_used: dict | None = None,
              doubtful: bool = False) -> "VerificationResult":
        residual = float(abs(lhs.value - rhs.value))
        bound = max(tol, 5.0 * (lhs.err + rhs.err))
        passed = bool(residual <= bound)
        status = "pass" if passed else ("unconfirmed" if doubtful else "fail")
        return cls(id, dict(params), lhs, rhs, residual, passed, status, tol, dict(config_used or {}))

    def params_text(self) -> str:
        return ",".join(f"{k}={_plain(v)}" for k, v in self.params.items())

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "lhs": {"value": float(self.lhs.value), "err": float(self.lhs.err)},
            "rhs": {"value": float(self.rhs.value), "err": float(self.rhs.err)},
            "residual": self.residual,
            "tol": self.tol,
            "pass": self.passed,
            "status": self.status,
        }
