"""Command-line front end: list identities, evaluate sums, verify identities.

Exit codes: 0 when every executed check passes, 1 when any check fails,
2 for usage, parse and domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .identities import ParameterError, UnknownIdentity, lookup, resolve_params, select, verify, verify_all
from .numerics import NumericsError
from .oracle import (
    DivergentSum,
    Kernel,
    OracleConfig,
    Power,
    SumDescriptor,
    W,
    Z,
    L,
    evaluate,
    plan,
)

SCHEMA = 1
CSV_HEADER = ["id", "params", "lhs", "rhs", "residual", "pass", "status"]


class UsageError(Exception):
    """Bad input that should end the run with exit code 2."""


# --- sum specification grammar ------------------------------------------------


class SpecError(UsageError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text, self.pos = text, pos
        super().__init__(f"parse error at position {pos}: expected {expected}\n  {text}\n  {' ' * pos}^")


@dataclass
class _Cursor:
    text: str
    pos: int = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def take(self, s: str):
        if not self.peek(s):
            raise SpecError(self.text, self.pos, repr(s))
        self.pos += len(s)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise SpecError(self.text, start, "an integer")
        return int(self.text[start:self.pos])

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            raise SpecError(self.text, start, "a name")
        return self.text[start:self.pos]

    def end(self):
        self.skip()
        if self.pos != len(self.text):
            raise SpecError(self.text, self.pos, "end of input")


def _index_list(cur: _Cursor) -> dict[int, int]:
    """``0`` or a comma list of ``base`` / ``base^exp`` items."""
    out: dict[int, int] = {}
    cur.skip()
    start = cur.pos
    first = cur.integer()
    if first == 0 and not cur.peek("^"):
        return out
    cur.pos = start
    while True:
        cur.skip()
        at = cur.pos
        base = cur.integer()
        if base < 1:
            raise SpecError(cur.text, at, "a positive base")
        exp = 1
        if cur.peek("^"):
            cur.take("^")
            at = cur.pos
            exp = cur.integer()
            if exp < 1:
                raise SpecError(cur.text, at, "a positive exponent")
        out[base] = out.get(base, 0) + exp
        if not cur.peek(","):
            return out
        cur.take(",")


def _keywords(cur: _Cursor, allowed: dict[str, str]) -> dict[str, object]:
    """``key=value`` pairs; ``allowed`` maps each key to ``"int"`` or ``"word"``."""
    out: dict[str, object] = {}
    while True:
        cur.skip()
        at = cur.pos
        key = cur.word()
        if key not in allowed or key in out:
            raise SpecError(cur.text, at, "one of " + ", ".join(k for k in allowed if k not in out))
        cur.take("=")
        out[key] = cur.integer() if allowed[key] == "int" else cur.word()
        if not cur.peek(","):
            return out
        cur.take(",")


def parse_sum_spec(text: str) -> SumDescriptor:
    """Parse a sum specification into a :class:`SumDescriptor`.

    Forms
    -----
    ``S[pi1;pi2;p=P]`` and ``Sbar[...]``
        Euler sums: ``pi1`` lists ``zeta_n`` orders, ``pi2`` lists ``L_n``
        orders, each as ``base^exp`` items or ``0`` for none.  ``Sbar``
        carries the sign ``(-1)**(n-1)``.
    ``K[m=M,k=K,r=R,type=zeta|L]``
        ``sum zeta_n(M) / ((n+R)(n+K))`` (or ``L_n(M)``); ``r`` defaults to 0.
    ``ST[p=P,k=K,r=R]``
        ``sum S(n+1,P) / (n! (n+R)(n+K))`` with unsigned first-kind Stirling
        numbers ``S``; ``r`` defaults to 0.
    """
    cur = _Cursor(text)
    cur.skip()
    at = cur.pos
    head = cur.word()
    if head not in ("S", "Sbar", "K", "ST"):
        raise SpecError(text, at, "S, Sbar, K or ST")
    cur.take("[")
    if head in ("S", "Sbar"):
        pi1 = _index_list(cur)
        cur.take(";")
        pi2 = _index_list(cur)
        cur.take(";")
        cur.take("p")
        cur.take("=")
        p = cur.integer()
        cur.take("]")
        cur.end()
        factors = [Z(k, q) for k, q in sorted(pi1.items())] + [L(h, q) for h, q in sorted(pi2.items())]
        return SumDescriptor(tuple(factors), Power(p), head == "Sbar")
    if head == "K":
        kw = _keywords(cur, {"m": "int", "k": "int", "r": "int", "type": "word"})
    else:
        kw = _keywords(cur, {"p": "int", "k": "int", "r": "int"})
    cur.take("]")
    cur.end()
    need = ("m", "k") if head == "K" else ("p", "k")
    missing = [n for n in need if n not in kw]
    if missing:
        raise UsageError(f"{head}[...] needs {', '.join(missing)}")
    r, k = kw.get("r", 0), kw["k"]
    if not 0 <= r < k:
        raise UsageError("requires 0 <= r < k")
    if head == "K":
        kind = kw.get("type", "zeta")
        if kind not in ("zeta", "L"):
            raise UsageError("type must be zeta or L")
        if kw["m"] < 1:
            raise UsageError("requires m >= 1")
        factor = Z(kw["m"]) if kind == "zeta" else L(kw["m"])
    else:
        if kw["p"] < 1:
            raise UsageError("requires p >= 1")
        factor = W(kw["p"])
    return SumDescriptor((factor,), Kernel(r, k))


# --- reports -------------------------------------------------------------------


def summarize(results) -> dict:
    statuses = [r.status for r in results]
    return {"total": len(results), "passed": statuses.count("pass"),
            "failed": statuses.count("fail"), "unconfirmed": statuses.count("unconfirmed")}


def build_report(results, config: OracleConfig, tol, wall: float) -> dict:
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "config": {"N": config.describe(), "tol": tol},
        "results": [r.to_dict() for r in results],
        "summary": summarize(results),
        "wall_time_seconds": round(wall, 3),
    }


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_report(report: dict, results, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in results:
            w.writerow([r.id, r.params_text(), repr(r.lhs.value), repr(r.rhs.value),
                        f"{r.residual:.3e}", str(r.passed).lower(), r.status])
        return buf.getvalue().rstrip("\n")
    rows = [["id", "params", "lhs", "rhs", "residual", "status"]]
    for r in results:
        rows.append([r.id, r.params_text(), f"{r.lhs.value:.15g}", f"{r.rhs.value:.15g}",
                     f"{r.residual:.2e}", r.status])
    s = report["summary"]
    tail = (f"{s['total']} checks: {s['passed']} passed, {s['failed']} failed, "
            f"{s['unconfirmed']} unconfirmed in {report['wall_time_seconds']:.1f} s")
    return _table(rows) + "\n" + tail


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# --- commands --------------------------------------------------------------------


def _config(args) -> OracleConfig:
    try:
        cfg = OracleConfig.from_env()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.N is not None:
        if args.N < 100:
            raise UsageError("--N must be at least 100")
        cfg = OracleConfig(N=args.N, N_power2=cfg.N_power2, N_power3=cfg.N_power3,
                           N_pairs=cfg.N_pairs, quad_tol=cfg.quad_tol)
    return cfg


def _params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            out[key.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--param {key}: not a number: {value!r}") from None
    return out


def cmd_list(args) -> int:
    recs = select(args.filter)
    if args.format == "json":
        entries = [{"id": r.id, "title": r.title, "params": list(r.params), "family": r.family,
                    "default_tol": r.default_tol, "samples": len(r.grid), "note": r.note}
                   for r in recs]
        _emit(json.dumps(entries, indent=2), args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "params", "family", "default_tol", "samples", "title"])
        for r in recs:
            w.writerow([r.id, " ".join(r.params), r.family, r.default_tol, len(r.grid), r.title])
        _emit(buf.getvalue().rstrip("\n"), args.out)
    else:
        rows = [["id", "params", "tol", "title"]]
        rows += [[r.id, ",".join(r.params) or "-", f"{r.default_tol:g}", r.title] for r in recs]
        _emit(_table(rows), args.out)
    return 0


def cmd_eval(args) -> int:
    desc = parse_sum_spec(args.spec)
    cfg = _config(args)
    try:
        pl = plan(desc, cfg)
        value = evaluate(desc, cfg)
    except DivergentSum:
        raise UsageError(f"divergent: {desc}") from None
    record = {"sum": str(desc), "value": value.value, "err": value.err, "N": pl.N, "method": pl.method}
    if args.format == "json":
        _emit(json.dumps(record, indent=2), args.out)
    elif args.format == "csv":
        _emit("sum,value,err,N,method\n" + ",".join(
            [f'"{record["sum"]}"', repr(value.value), repr(value.err), str(pl.N), pl.method]), args.out)
    else:
        _emit("\n".join(f"{k:<7}{v}" for k, v in record.items()), args.out)
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    params = _params(args.param)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    start = time.perf_counter()
    if args.all or args.filter:
        if args.id:
            raise UsageError("give an identity id or --all/--filter, not both")
        if not select(args.filter):
            raise UsageError(f"no identity matches {args.filter!r}")
        results = verify_all(cfg, args.filter, params, args.jobs, args.tol)
    elif args.id:
        rec = lookup(args.id)
        results = [verify(rec.id, p, cfg, args.tol) for p in resolve_params(rec, params)]
    else:
        raise UsageError("verify needs an identity id, --all or --filter")
    report = build_report(results, cfg, args.tol, time.perf_counter() - start)
    _emit(render_report(report, results, args.format), args.out)
    return 1 if report["summary"]["failed"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eulersum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, N=True):
        p.add_argument("--format", choices=("json", "csv", "table"), default="table")
        p.add_argument("--out", help="write the output to this file instead of stdout")
        if N:
            p.add_argument("--N", type=int, help="terms per sum; overrides EULERSUM_DEFAULT_N")

    p = sub.add_parser("list", help="list registered identities")
    p.add_argument("--filter", help="id, id prefix or glob such as 'eq-2.*'")
    common(p, N=False)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("eval", help="evaluate one sum, e.g. 'S[1^2;0;p=3]'")
    p.add_argument("spec")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="check identities against the oracle")
    p.add_argument("id", nargs="?")
    p.add_argument("--all", action="store_true", help="check every registered identity")
    p.add_argument("--filter", help="id, id prefix or glob such as 'eq-2.*'")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="parameter value (repeatable)")
    p.add_argument("--tol", type=float, help="tolerance override for every check")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnknownIdentity as exc:
        print(f"eulersum: unknown identity {exc.args[0]!r}", file=sys.stderr)
    except (UsageError, ParameterError) as exc:
        print(f"eulersum: {exc}", file=sys.stderr)
    except (NumericsError, ValueError) as exc:
        print(f"eulersum: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
