"""Command-line front end: ``hyperk {sum,moment2,moment4,counts,verify,table}``.

Every command builds a :class:`Report` and serialises it with :func:`emit`.
Integers are always written as exact decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from . import kernels
from .core import build_context, primes_in_range
from .counts import WITH_U, Family, count_brute, count_C1, count_closed
from .errors import HyperKError
from .expsums import gauss_table
from .hyperk import KParams, k_naive, k_spectral, k_zero
from .moments import (
    FOURTH_DIRECT_MAX_P,
    MomentReport,
    default_workers,
    fourth_moment_direct,
    fourth_moment_exact,
    gamma_total,
    second_moment,
    theorem_report,
)
from .verify import run_suite

MOMENT_COLUMNS = ["p", "s", "m4", "main", "error", "ratio"]
COUNT_COLUMNS = ["family", "p", "s", "u", "closed", "oracle", "match"]
SUM_TOL = 1e-8


@dataclass
class Report:
    command: str
    config: dict[str, Any]
    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    errata: list[dict[str, Any]] = field(default_factory=list)
    ok: bool = True

    @property
    def status(self) -> str:
        return "ok" if self.ok else "fail"


def _scalar(v: Any) -> Any:
    """JSON-ready value: integers and fractions become exact strings."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return v
    if isinstance(v, (list, tuple)):
        return [_scalar(x) for x in v]
    if isinstance(v, dict):
        return {k: _scalar(x) for k, x in v.items()}
    return str(v)


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(_scalar(v))


def emit(report: Report, fmt: str) -> bytes:
    """Serialise a report as ``json``, ``csv`` or ``text`` (byte-stable)."""
    if fmt == "json":
        doc = {
            "config": _scalar(report.config),
            "rows": [{c: _scalar(r.get(c)) for c in report.columns} for r in report.rows],
            "errata": _scalar(report.errata),
            "status": report.status,
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        for r in report.rows:
            w.writerow([_cell(r.get(c)) for c in report.columns])
        return buf.getvalue().encode()
    if fmt == "text":
        cells = [report.columns] + [[_cell(r.get(c)) for c in report.columns] for r in report.rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(report.columns))]
        lines = ["  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells]
        for f in report.errata:
            wit = ", ".join(f"({w['p']},{w['s']}): stated {w['stated']} vs oracle {w['oracle']}" for w in f["witnesses"][:4])
            lines.append(f"warning: {f['formula']} disagrees with enumeration at {wit}")
        lines.append(f"status: {report.status}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_range(text: str) -> list[int]:
    """``"a:b"`` -> primes in ``[a, b]`` greater than 3, ascending."""
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return primes_in_range(lo, hi)


def _primes(args) -> list[int]:
    if getattr(args, "p_range", None) is not None:
        return args.p_range
    if args.p is None:
        raise argparse.ArgumentTypeError("give --p or --p-range")
    build_context(args.p)  # validates
    return [args.p]


# commands --------------------------------------------------------------------


def cmd_sum(args) -> Report:
    ctx = build_context(args.p)
    table = gauss_table(ctx, "direct")
    chi = ctx.char(args.chi)
    q = KParams(args.m % ctx.p, args.s, chi)
    naive = k_naive(ctx, q)
    spectral = k_zero(table, q.s, chi) if q.m == 0 else k_spectral(ctx, table, q)
    diff = abs(naive - spectral)
    ok = diff <= SUM_TOL * max(1.0, abs(naive))
    row = {
        "p": ctx.p, "s": q.s, "m": q.m, "chi": chi.k,
        "naive_re": naive.real, "naive_im": naive.imag,
        "spectral_re": spectral.real, "spectral_im": spectral.imag,
        "difference": diff,
    }
    return Report("sum", vars_config(args), list(row), [row], ok=ok)


def cmd_moment2(args) -> Report:
    ctx = build_context(args.p)
    table = gauss_table(ctx, "direct")
    chars = [ctx.char(args.chi)] if args.chi is not None else list(ctx.characters())
    rows, ok = [], True
    main = args.p ** (args.s + 1)
    for chi in chars:
        exact = second_moment(ctx, args.s, chi, "closed").value
        direct = second_moment(ctx, args.s, chi, "direct", table)
        good = round(direct) == exact and abs(direct - exact) < 1e-3
        ok &= good
        rows.append({
            "p": ctx.p, "s": args.s, "chi": chi.k, "principal": chi.is_principal,
            "exact": exact, "direct": direct, "gamma": gamma_total(ctx.p, args.s),
            "main": main, "remainder": exact - main, "match": good,
        })
    cols = ["p", "s", "chi", "principal", "exact", "direct", "gamma", "main", "remainder", "match"]
    return Report("moment2", vars_config(args), cols, rows, ok=ok)


def cmd_moment4(args) -> Report:
    rows, ok = [], True
    for p in _primes(args):
        exact = fourth_moment_exact(p, args.s)
        rep = MomentReport.from_value(p, args.s, exact)
        direct = None
        if p <= FOURTH_DIRECT_MAX_P and not args.exact_only:
            ctx = build_context(p)
            direct = fourth_moment_direct(ctx, gauss_table(ctx, "direct"), args.s)
            ok &= abs(direct - exact) <= 1e-9 * exact
        rows.append({**asdict(rep), "exact": exact, "direct": direct})
    cols = ["p", "s", "exact", "direct", "m4", "main", "error", "ratio"]
    return Report("moment4", vars_config(args), cols, rows, ok=ok)


def cmd_counts(args) -> Report:
    fam = Family(args.family)
    rows, ok = [], True
    for p in _primes(args):
        if fam in WITH_U:
            us = [args.u] if args.u is not None else (range(2, p) if fam is Family.A_u else range(p))
        else:
            us = [None]
        for u in us:
            if fam is Family.C1:
                closed = count_C1(p, args.s)
            elif fam is Family.M:
                closed = None
            else:
                closed = count_closed(fam, p, args.s, u)
            oracle = count_brute(fam, p, args.s, u)
            match = None if closed is None else closed == oracle
            ok &= match is not False
            rows.append({"family": fam.value, "p": p, "s": args.s, "u": u,
                         "closed": closed, "oracle": oracle, "match": match})
    return Report("counts", vars_config(args), COUNT_COLUMNS, rows, ok=ok)


def cmd_verify(args) -> Report:
    res = run_suite(args.p_max, args.s_max)
    rows = [asdict(c) for c in res.checks]
    errata = [asdict(f) for f in res.errata.findings]
    return Report("verify", vars_config(args), ["name", "passed", "detail"], rows, errata, ok=res.passed)


def cmd_table(args) -> Report:
    workers = args.workers if args.workers is not None else default_workers()
    reps = theorem_report(args.s, _primes(args), workers=workers)
    rows = [asdict(r) for r in reps]
    return Report("table", vars_config(args), MOMENT_COLUMNS, rows)


def vars_config(args) -> dict[str, Any]:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "output")}
    cfg["backend"] = kernels.BACKEND
    return cfg


COMMANDS = {
    "sum": cmd_sum,
    "moment2": cmd_moment2,
    "moment4": cmd_moment4,
    "counts": cmd_counts,
    "verify": cmd_verify,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperk",
        description="Hyper-Kloosterman sums mod p: evaluation, power means, congruence counts.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--output", "-o", help="write here instead of stdout")
    common.add_argument("--workers", type=int, default=None,
                        help="parallel workers (default: $HYPERK_WORKERS or CPU count)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", parents=[common], help="K(m,s,chi;p) by enumeration and by Gauss sums")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--chi", type=int, default=0, help="character index k in [0, p-2]")

    p = sub.add_parser("moment2", parents=[common], help="second moment over m, exact and direct")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--chi", type=int, default=None, help="one character (default: all)")

    for name, helptext in (("moment4", "exact and direct fourth moment"),
                           ("table", "one fourth-moment row per prime")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--p", type=int)
        p.add_argument("--p-range", type=parse_range, metavar="LO:HI")
        p.add_argument("--s", type=int, required=True)
        if name == "moment4":
            p.add_argument("--exact-only", action="store_true", help="skip the float grid")

    p = sub.add_parser("counts", parents=[common], help="closed form vs enumeration for one family")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--p", type=int)
    p.add_argument("--p-range", type=parse_range, metavar="LO:HI")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--u", type=int, default=None)

    p = sub.add_parser("verify", parents=[common], help="full invariant suite and errata report")
    p.add_argument("--p-max", type=int, default=13)
    p.add_argument("--s-max", type=int, default=4)
    return parser


def _fail(kind: str, message: str, code: int = 2) -> int:
    err = {"status": "fail", "error": {"type": kind, "message": message}}
    sys.stderr.write(json.dumps(err) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
        data = emit(report, args.format)
    except HyperKError as exc:
        return _fail(exc.code, str(exc))
    except (ValueError, argparse.ArgumentTypeError) as exc:
        return _fail("InvalidInput", str(exc))
    try:
        if args.output:
            with open(args.output, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
    except OSError as exc:
        return _fail("IoError", str(exc))
    return 0 if report.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
