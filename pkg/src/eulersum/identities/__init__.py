"""Registry of identities and the driver that checks them against the oracle."""

from __future__ import annotations

import dataclasses
import fnmatch
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable

from ..oracle import DivergentSum, OracleConfig
from ..results import VerificationResult
from ._base import Ev, IdentityRecord


class UnknownIdentity(KeyError):
    """Raised when an identity id is not in the registry."""


class ParameterError(ValueError):
    """Raised for parameters outside an identity's domain."""


_REGISTRY: dict[str, IdentityRecord] | None = None


def _id_key(rid: str):
    head, _, tail = rid.partition("-")
    parts = []
    for piece in tail.split("."):
        parts.append((0, int(piece), "") if piece.isdigit() else (1, 0, piece))
    return (head != "eq", head, parts)


def registry() -> dict[str, IdentityRecord]:
    """All identity records keyed by id, in reading order."""
    global _REGISTRY
    if _REGISTRY is None:
        from . import golden, kernel, quadratic, structural

        records = [*kernel.RECORDS, *structural.RECORDS, *quadratic.RECORDS, *golden.RECORDS]
        table = {}
        for rec in records:
            if rec.id in table:
                raise RuntimeError(f"duplicate identity id {rec.id}")
            table[rec.id] = rec
        _REGISTRY = {k: table[k] for k in sorted(table, key=_id_key)}
    return _REGISTRY


def lookup(rid: str) -> IdentityRecord:
    try:
        return registry()[rid]
    except KeyError:
        raise UnknownIdentity(rid) from None


def _normalise(value):
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def resolve_params(rec: IdentityRecord, given: dict | None) -> list[dict]:
    """Parameter sets to check for ``rec`` given (possibly partial) overrides.

    Without overrides the whole sample grid is used.  Overrides first select
    the matching grid entries; if none match they are merged over the first
    grid entry.  Every resulting set is validated against the domain.
    """
    if not given:
        chosen = [dict(p) for p in rec.grid]
    else:
        given = {k: _normalise(v) for k, v in given.items()}
        chosen = [dict(p) for p in rec.grid if all(p.get(k) == v for k, v in given.items())]
        if not chosen:
            base = dict(rec.grid[0]) if rec.grid else {}
            chosen = [dict(base, **given)]
    for p in chosen:
        msg = rec.check(p)
        if msg:
            raise ParameterError(f"{rec.id}: {msg}")
    return chosen


def verify(rid: str, params: dict, config: OracleConfig | None = None,
           tol: float | None = None) -> VerificationResult:
    """Evaluate both sides of one identity instance and judge the residual."""
    rec = lookup(rid)
    params = {k: _normalise(v) for k, v in params.items()}
    msg = rec.check(params)
    if msg:
        raise ParameterError(f"{rid}: {msg}")
    config = config or OracleConfig.from_env()
    ev = Ev(config)
    lhs = rec.lhs(params, ev)
    rhs = rec.rhs(params, ev)
    return VerificationResult.judge(
        rid, params, lhs, rhs, rec.default_tol if tol is None else tol,
        config.describe(), rec.doubtful)


def select(id_filter: str | None = None) -> list[IdentityRecord]:
    """Records matching ``id_filter``: an id, id prefix or glob (all when ``None``)."""
    recs = list(registry().values())
    if id_filter and any(c in id_filter for c in "*?["):
        recs = [r for r in recs if fnmatch.fnmatchcase(r.id, id_filter)]
    elif id_filter:
        recs = [r for r in recs if r.id.startswith(id_filter)]
    return recs


def verify_all(config: OracleConfig | None = None, id_filter: str | None = None,
               param_samples: dict | None = None, jobs: int = 1,
               tol: float | None = None) -> list[VerificationResult]:
    """Check every selected identity over its sample grid.

    Parameters
    ----------
    config : OracleConfig, optional
        Truncation settings; read from the environment when omitted.
    id_filter : str, optional
        Id, id prefix or glob, e.g. ``"eq-2.*"`` or ``"golden"``.
    param_samples : dict, optional
        Partial parameter overrides applied to every selected record.
    jobs : int
        Worker threads.  Results come back in registry order regardless.
    tol : float, optional
        Tolerance override for every record.
    """
    config = config or OracleConfig.from_env()
    tasks = []
    for rec in select(id_filter):
        given = {k: v for k, v in (param_samples or {}).items() if k in rec.params}
        for p in resolve_params(rec, given):
            tasks.append((rec.id, p))

    def run(task):
        return verify(task[0], task[1], config, tol)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, tasks))
    return [run(t) for t in tasks]


def residual_scaling(rid: str, params: dict, Ns: Iterable[int]) -> list[tuple[int, float]]:
    """Residual of one identity instance as the truncation ``N`` varies."""
    base = OracleConfig.from_env()
    out = []
    for N in Ns:
        res = verify(rid, params, dataclasses.replace(base, N=N))
        out.append((N, res.residual))
    return out


__all__ = [
    "DivergentSum",
    "IdentityRecord",
    "ParameterError",
    "UnknownIdentity",
    "lookup",
    "registry",
    "resolve_params",
    "residual_scaling",
    "select",
    "verify",
    "verify_all",
]
