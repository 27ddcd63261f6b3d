"""Command-line interface: s values, chi_H, the verification suite and the interval table."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Sequence

from .cache import InstanceKey, ResultCache, canonical
from .errors import BudgetExceeded, DomainError, HomlpError, ParseError
from .exactlp import format_rational
from .graphs import Graph, complete, parse_graph, serialize_graph
from .hcuts import chi_f, chi_H_cover, chi_H_via_s, hypergraph_reformulation, refute_density_conjecture
from .svalue import s_value, s_value_generic

__all__ = ["main", "build_parser", "interval_rows"]

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_DISCREPANCY = 4
EXIT_OTHER = 1


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _graph_arg(text: str) -> Graph:
    return parse_graph(text)


def _cache(args) -> ResultCache | None:
    if args.no_cache:
        return None
    return ResultCache(args.cache_dir, audit_rate=args.audit_rate)


def _cached(args, op: str, key_args: dict, compute):
    cache = _cache(args)
    if cache is None:
        return canonical(compute())
    result, _ = cache.fetch(InstanceKey(op, key_args), lambda: canonical(compute()))
    return result


# ---------------------------------------------------------------------------
# commands


def cmd_s(args) -> int:
    M, N = _graph_arg(args.M), _graph_arg(args.N)

    def compute():
        if args.method == "generic":
            value = s_value_generic(M, N, budget=args.budget)
            return {"schema": "homlp/1", "M": M.display(), "N": N.display(), "s": format_rational(value), "method": "generic"}
        return s_value(M, N, method=args.method, budget=args.budget).to_json(M, N)

    key = {"M": serialize_graph(M), "N": serialize_graph(N), "method": args.method}
    print(_dump(_cached(args, "s", key, compute)))
    return EXIT_OK


def _chi_by(method: str, G: Graph, H: Graph, budget: int | None) -> str:
    if method == "s":
        if H.m == 0:
            return "inf"
        return format_rational(chi_H_via_s(G, H, budget=budget))
    if method == "cover":
        cert = chi_H_cover(G, H, budget=budget)
        return "inf" if cert.status == "infinite" else format_rational(cert.value)
    if method == "hyper":
        hg = hypergraph_reformulation(G, H, budget=budget)
        if any(len(h) == 1 for h in hg.hyperedges):
            return "inf"
        return format_rational(chi_f(hg))
    raise DomainError(f"unknown chi method {method!r}")


def cmd_chi(args) -> int:
    G, H = _graph_arg(args.G), _graph_arg(args.H)
    if G.m == 0:
        raise DomainError("chi_H needs G to have an edge")
    methods = list(dict.fromkeys(args.method))

    def compute():
        values = {m: _chi_by(m, G, H, args.budget) for m in methods}
        return {
            "schema": "homlp/1",
            "H": H.display(),
            "G": G.display(),
            "chi": values[methods[0]],
            "methods": values,
            "agree": len(set(values.values())) == 1,
        }

    key = {"G": serialize_graph(G), "H": serialize_graph(H), "methods": methods}
    result = _cached(args, "chi", key, compute)
    print(_dump(result))
    return EXIT_OK if result["agree"] else EXIT_DISCREPANCY


def cmd_verify(args) -> int:
    from .verify import run_suite

    def progress(f):
        if args.progress:
            print(f"{f.verdict:>13}  {f.claim}  ({f.elapsed_ms} ms)", file=sys.stderr, flush=True)

    report = run_suite(args.suite, progress=progress)
    text = _dump(report.to_json(timings=not args.no_timings))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if report.ok else EXIT_DISCREPANCY


def interval_rows(k_max: int, check: bool = False) -> list[dict]:
    """Intervals [2+1/k, 2+2/(2k-1)] on which s(K_2, K_r) is constant at 2k/(2k+1), for k = k_max..2."""
    if k_max < 2:
        raise DomainError("k-max must be at least 2")
    rows = []
    for k in range(k_max, 1, -1):
        lo, hi, val = Fraction(2 * k + 1, k), Fraction(4 * k, 2 * k - 1), Fraction(2 * k, 2 * k + 1)
        row = {"k": k, "r_low": lo, "r_high": hi, "s": val}
        if check:
            from .graphs import circular_complete

            K2 = complete(2)
            row["s_at_low"] = s_value(K2, circular_complete(lo.numerator, lo.denominator)).value
            row["s_at_high"] = s_value(K2, circular_complete(hi.numerator, hi.denominator)).value
        rows.append(row)
    return rows


def cmd_intervals(args) -> int:
    rows = interval_rows(args.k_max, check=args.check)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r_low", "r_high", "s_num", "s_den"])
        for r in rows:
            w.writerow([format_rational(r["r_low"]), format_rational(r["r_high"]), r["s"].numerator, r["s"].denominator])
        sys.stdout.write(buf.getvalue())
    else:
        out = [{k: format_rational(v) if isinstance(v, Fraction) else v for k, v in r.items()} for r in rows]
        print(_dump({"schema": "homlp/1", "intervals": out}))
    if args.check and any(r["s_at_low"] != r["s"] or r["s_at_high"] != r["s"] for r in rows):
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_refute(args) -> int:
    G = _graph_arg(args.G)
    print(_dump(refute_density_conjecture(G)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _budget(text: str) -> int:
    try:
        return int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer budget: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_budget, default=None, help="enumeration/search budget (overrides HOMLP_BUDGET)")
    common.add_argument("--cache-dir", default=None, help="result cache directory (default: HOMLP_CACHE_DIR or ~/.cache/homlp)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the result cache")
    common.add_argument("--audit-rate", type=float, default=0.1, help="fraction of cache hits recomputed and compared")

    parser = argparse.ArgumentParser(prog="homlp", description="Exact s(M,N), chi_H and the verification suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("s", parents=[common], help="compute s(M, N)")
    p.add_argument("--M", required=True, help='target graph, e.g. "K(2)"')
    p.add_argument("--N", required=True, help='source graph, e.g. "K(11/4)"')
    p.add_argument("--method", choices=["auto", "exhaustive", "congen", "generic"], default="auto")
    p.set_defaults(func=cmd_s)

    p = sub.add_parser("chi", parents=[common], help="compute chi_H(G)")
    p.add_argument("--H", required=True)
    p.add_argument("--G", required=True)
    p.add_argument("--method", nargs="+", choices=["s", "cover", "hyper"], default=["s"])
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--suite", choices=["core", "long", "all"], default="core")
    p.add_argument("--output", default=None, help="write the report here instead of stdout")
    p.add_argument("--no-timings", action="store_true", help="omit elapsed times so reports compare byte for byte")
    p.add_argument("--progress", action="store_true", help="print one line per finding to stderr")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("intervals", parents=[common], help="table of constant-value intervals of s(K_2, K_r)")
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--check", action="store_true", help="compute s at both endpoints of every interval")
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("refute", parents=[common], help="bipartite-density refutation record for a graph")
    p.add_argument("--G", required=True)
    p.set_defaults(func=cmd_refute)
    return parser


def _error(kind: str, exc: Exception, code: int) -> int:
    rec = {"schema": "homlp/1", "error": kind, "message": str(exc)}
    if isinstance(exc, BudgetExceeded):
        rec["budget"] = exc.budget
        if exc.needed is not None:
            rec["needed"] = exc.needed
    print(_dump(rec))
    return code


@contextmanager
def _budget_override(budget: int | None):
    """Make ``--budget`` govern every search, including those without a budget argument."""
    if budget is None:
        yield
        return
    saved = os.environ.get("HOMLP_BUDGET")
    os.environ["HOMLP_BUDGET"] = str(budget)
    try:
        yield
    finally:
        if saved is None:
            del os.environ["HOMLP_BUDGET"]
        else:
            os.environ["HOMLP_BUDGET"] = saved


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with _budget_override(args.budget):
            return args.func(args)
    except (ParseError, DomainError) as exc:
        return _error("parse" if isinstance(exc, ParseError) else "domain", exc, EXIT_PARSE)
    except BudgetExceeded as exc:
        return _error("budget", exc, EXIT_BUDGET)
    except HomlpError as exc:
        return _error("internal", exc, EXIT_OTHER)


if __name__ == "__main__":
    sys.exit(main())
