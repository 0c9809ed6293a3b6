"""Command line interface.

Exit codes: 0 success/agreement, 1 usage error, 2 mathematical disagreement.
Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .characters import CharTable
from .curve_family import ResidualError, a_trace
from .finite_field import is_prime, make_field, primes_between
from .hypergeometric import HypSpec, hyp_eval
from .mf_oracle import hecke_trace_oracle
from .trace_engine import ROUTE_FUNCS, check_args, full_report, trace_hijikata, trace_pointcount
from .verify import KMAX_LIMIT, PMAX_LIMIT, TOL, run_battery

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class OutputRecord:
    command: str
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    agree: bool = True
    schema_version: int = SCHEMA_VERSION

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.rows, indent=1) + "\n"
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.columns, extrasaction="ignore",
                                lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: _csv_cell(row.get(k)) for k in self.columns})
        return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else v


def _fmt_float(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


# trace

METHODS = ("pointcount", "hijikata", "hyp", "recursion", "oracle", "all")
_METHOD_ROUTE = {"pointcount": "pointcount", "hijikata": "hijikata",
                 "hyp": "hypergeometric", "recursion": "recursive"}


def cmd_trace(k: int, p: int, method: str) -> OutputRecord:
    min_weight = 2 if method == "hijikata" else 4
    try:
        check_args(k, p, min_weight)
    except ValueError as exc:
        raise UsageError(str(exc))
    if method == "oracle" and k > KMAX_LIMIT:
        raise UsageError(f"the oracle covers weights up to {KMAX_LIMIT}")
    rec = OutputRecord(f"trace --k {k} --p {p} --method {method}", ["k", "p", "trace", "verified"])
    if method == "all":
        if k > KMAX_LIMIT:
            raise UsageError(f"--method all includes the oracle, which covers weights up to {KMAX_LIMIT}")
        report = full_report(k, p, with_oracle=True)
        routes = dict(report.routes)
        if report.oracle is not None:
            routes["oracle"] = report.oracle
        if report.failed:
            print(f"route {report.failed} failed: {report.error}", file=sys.stderr)
        rec.agree = report.agree
        rec.rows.append({"k": k, "p": p, "trace": report.trace, "verified": report.agree,
                         "routes": routes})
        return rec
    if method == "oracle":
        value = hecke_trace_oracle(k, p)
    else:
        value = ROUTE_FUNCS[_METHOD_ROUTE[method]](k, p)
    rec.rows.append({"k": k, "p": p, "trace": value, "verified": False})
    return rec


# table

def _table_cell(kp):
    k, p = kp
    return k, p, trace_pointcount(k, p), trace_hijikata(k, p)


def cmd_table(kmin: int, kmax: int, pmax: int, jobs: int = 1) -> OutputRecord:
    if kmin % 2 or kmax % 2 or kmin < 4 or kmax < kmin:
        raise UsageError("need even weights with 4 <= kmin <= kmax")
    rec = OutputRecord(f"table --kmin {kmin} --kmax {kmax} --pmax {pmax}",
                       ["k", "p", "trace", "verified"])
    cells = [(k, p) for k in range(kmin, kmax + 1, 2) for p in primes_between(5, pmax)]
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_table_cell, cells))
    else:
        results = [_table_cell(c) for c in cells]
    for k, p, pc, hj in sorted(results):
        if pc != hj:
            rec.agree = False
            print(f"disagreement at k={k}, p={p}: pointcount {pc}, hijikata {hj}", file=sys.stderr)
            break
        rec.rows.append({"k": k, "p": p, "trace": pc, "verified": True})
    return rec


# hyp

def parse_indices(text: str, n: int) -> tuple[int, ...]:
    try:
        return tuple(int(s) % n for s in text.split(",") if s.strip())
    except ValueError:
        raise UsageError(f"bad character index list {text!r}")


def parse_element(ctx, text: str):
    text = text.strip()
    if "=" in text:
        text = text.split("=", 1)[1]
    try:
        parts = [int(s) for s in text.strip("()").split(",")]
    except ValueError:
        raise UsageError(f"cannot parse field element {text!r}")
    if len(parts) == 1:
        return ctx(parts[0])
    if len(parts) == 2 and ctx.e == 2:
        return ctx(*parts)
    raise UsageError(f"{text!r} is not an element of F_{ctx.q}")


def field_for_q(q: int):
    for e in (1, 2):
        p = round(q ** (1 / e))
        for cand in (p - 1, p, p + 1):
            if cand > 3 and cand**e == q and is_prime(cand):
                return make_field(cand, e)
    raise UsageError(f"q = {q} is not p or p^2 for a prime p > 3")


def cmd_hyp(q: int, top: str, bottom: str, x: str) -> OutputRecord:
    ctx = field_for_q(q)
    tab = CharTable(ctx)
    try:
        spec = HypSpec(parse_indices(top, tab.n), parse_indices(bottom, tab.n), parse_element(ctx, x))
    except ValueError as exc:
        raise UsageError(str(exc))
    value = hyp_eval(tab, spec)
    g = tab.generator
    rec = OutputRecord(f"hyp --q {q} --top {top} --bottom {bottom} --x {x}",
                       ["q", "re", "im", "generator"])
    gen = f"{g.a}" if ctx.e == 1 else f"{g.a}+{g.b}*sqrt({ctx.r})"
    rec.rows.append({"q": q, "re": _fmt_float(value.real), "im": _fmt_float(value.imag),
                     "generator": gen})
    return rec


# curve

def cmd_curve(p: int, t: int) -> OutputRecord:
    if not is_prime(p) or p <= 3:
        raise UsageError(f"p must be a prime > 3, got {p}")
    if t % p in (0, 1):
        raise UsageError("t must not be 0 or 1 mod p")
    c1, c2 = a_trace(make_field(p), t), a_trace(make_field(p, 2), t)
    rec = OutputRecord(f"curve --p {p} --t {t}",
                       ["t", "p", "a_p", "npoints_p", "a_p2", "npoints_p2"])
    rec.rows.append({"t": t % p, "p": p, "a_p": c1.a, "npoints_p": c1.npoints,
                     "a_p2": c2.a, "npoints_p2": c2.npoints})
    rec.agree = c1.a**2 == c2.a + 2 * p
    return rec


# verify

def cmd_verify(pmax: int, kmax: int, tol: float = TOL) -> OutputRecord:
    if pmax > PMAX_LIMIT or kmax > KMAX_LIMIT:
        raise UsageError(f"refusing: guard rails are pmax <= {PMAX_LIMIT}, kmax <= {KMAX_LIMIT}")
    if kmax < 4:
        raise UsageError("kmax must be at least 4")
    rec = OutputRecord(f"verify --pmax {pmax} --kmax {kmax}",
                       ["family", "passed", "checked", "detail"])
    for r in run_battery(pmax, kmax, tol):
        rec.rows.append({"family": r.family, "passed": r.passed, "checked": r.checked,
                         "detail": r.detail})
        if not r.passed and rec.agree:
            rec.agree = False
            print(f"first counterexample ({r.family}): {r.detail}", file=sys.stderr)
    return rec


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hecketrace",
                     description="Traces of Hecke operators on level 1 cusp forms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_format(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        return sp

    sp = with_format(sub.add_parser("trace", help="trace of T_p on S_k by one or all routes"))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--method", choices=METHODS, default="all")

    sp = with_format(sub.add_parser("table", help="table of traces, pointcount checked by hijikata"))
    sp.add_argument("--kmin", type=int, required=True)
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)

    sp = with_format(sub.add_parser("hyp", help="evaluate a Greene hypergeometric function"))
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--top", required=True, help="comma separated character indices")
    sp.add_argument("--bottom", required=True, help="comma separated character indices")
    sp.add_argument("--x", required=True, help="element: 'a', 'a,b' (a + b*sqrt(r)) or 't=a'")

    sp = with_format(sub.add_parser("curve", help="point counts of E_t over F_p and F_p^2"))
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)

    sp = with_format(sub.add_parser("verify", help="run the invariant battery"))
    sp.add_argument("--pmax", type=int, default=50)
    sp.add_argument("--kmax", type=int, default=26)
    sp.add_argument("--tol", type=float, default=TOL)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        if args.command == "trace":
            rec = cmd_trace(args.k, args.p, args.method)
        elif args.command == "table":
            rec = cmd_table(args.kmin, args.kmax, args.pmax, args.jobs)
        elif args.command == "hyp":
            rec = cmd_hyp(args.q, args.top, args.bottom, args.x)
        elif args.command == "curve":
            rec = cmd_curve(args.p, args.t)
        else:
            rec = cmd_verify(args.pmax, args.kmax, args.tol)
    except UsageError as exc:
        print(f"hecketrace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResidualError as exc:
        print(f"hecketrace: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    print(f"# schema {rec.schema_version}: {rec.command}", file=sys.stderr)
    sys.stdout.write(rec.render(args.format))
    return EXIT_OK if rec.agree else EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
