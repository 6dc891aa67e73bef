"""Command-line front end.  JSON on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 invalid arguments, 2 computation refused (caps or
parameters outside the supported regime).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from .bounds import (
    NotEquitable,
    bounds_report,
    build_even_partition,
    build_odd_partition,
    dump_partition,
    even_lambda2_vector,
    odd_lambda2_vector,
    prop1_upper_bound,
    quotient_eigenvalue,
    read_partition,
    verify_equitable,
)
from .combinat import CapExceeded, RegimeError
from .minsupport import SCAN_COLUMNS, conjecture_scan, oracle_search, theorem1_value
from .search import min_negatives_exhaustive, random_upper_search, witness_json
from .spectra import eberlein, eigenvalue


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def render(x):
    """Canonical JSON rendering: ints and Fractions as decimal strings ("p/q")."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {k: render(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [render(v) for v in x]
    return x


def envelope(command: str, params: dict, result, provenance: list) -> str:
    body = {"command": command, "params": render(params), "result": render(result), "provenance": provenance}
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def _parse_vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad vector {text!r}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="jel", description="Johnson scheme eigenspace minimization toolkit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("eberlein", help="E_k(i, w, n)")
    for name in ("k", "i", "w", "n"):
        s.add_argument(f"--{name}", type=int, required=True)

    s = sub.add_parser("eigenvalue", help="lambda_i(n, w)")
    for name in ("i", "n", "w"):
        s.add_argument(f"--{name}", type=int, required=True)

    s = sub.add_parser("min-support", help="minimum support of first-eigenspace vectors")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="cross-check by brute force")
    s.add_argument("--radius", type=int, default=None)

    s = sub.add_parser("scan", help="closed-form scan over n and 2 <= w <= n/2")
    s.add_argument("--n-min", type=int, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--csv", type=Path, default=None)
    s.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    s = sub.add_parser("bounds", help="bounds on the minimum negative count")
    for name in ("i", "n", "w"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--partition", type=Path, default=None, help="extra equitable partition file")
    s.add_argument("--vector", type=str, default=None, help="its quotient eigenvector, comma separated")

    s = sub.add_parser("build-partition", help="build the even or odd partition of J(n, 3)")
    s.add_argument("--kind", choices=("even", "odd"), required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--out", type=Path, default=None)

    s = sub.add_parser("verify-partition", help="check a partition file for equitability")
    s.add_argument("--file", type=Path, required=True)
    s.add_argument("--vector", type=str, default=None)

    s = sub.add_parser("search-negatives", help="search for the minimum negative count")
    for name in ("i", "n", "w"):
        s.add_argument(f"--{name}", type=int, required=True)
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", action="store_true")
    s.add_argument("--s-max", type=int, default=None)
    s.add_argument("--iters", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--symmetric", action="store_true", help="reduce by the full point group")
    s.add_argument("--witness-out", type=Path, default=None)
    s.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="accepted; the searches run sequentially")
    return p


def cmd_eberlein(a):
    return {"value": eberlein(a.k, a.i, a.w, a.n)}, ["eberlein-sum"]


def cmd_eigenvalue(a):
    return {"value": eigenvalue(a.i, a.n, a.w)}, ["eigenvalue-formula"]


def cmd_min_support(a):
    cert = theorem1_value(a.n, a.w)
    result = cert.to_dict()
    prov = ["pair-branch"] + (["two-valued-branch"] if cert.twovalued_branch else [])
    if a.oracle:
        radius = a.radius if a.radius is not None else max(4, a.w)
        o = oracle_search(a.n, a.w, radius)
        result["oracle"] = {
            "radius": radius,
            "value": o.value,
            "explored": o.explored,
            "agrees": o.value == cert.value,
        }
        prov.append("grid-oracle")
    return result, prov


def cmd_scan(a):
    res = conjecture_scan(a.n_min, a.n_max, threads=a.threads)
    result = {"summary": res.summary()}
    if a.csv is not None:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(SCAN_COLUMNS)
        for row in res.rows:
            wr.writerow(row.as_record())
        a.csv.write_text(buf.getvalue())
        result["csv"] = str(a.csv)
    else:
        result["rows"] = [dict(zip(SCAN_COLUMNS, row.as_record())) for row in res.rows]
    return result, ["pair-branch", "two-valued-branch"]


def cmd_bounds(a):
    extra = []
    if a.partition is not None:
        if a.vector is None:
            raise UsageError("--partition needs --vector")
        extra.append((read_partition(a.partition), _parse_vector(a.vector)))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = bounds_report(a.i, a.n, a.w, extra)
    prov = sorted({s for _, s in rep.lower_bounds + rep.upper_bounds})
    return rep.to_dict(), prov


def cmd_build_partition(a):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if a.kind == "even":
            p, u = build_even_partition(a.r), even_lambda2_vector(a.r)
        else:
            p, u = build_odd_partition(a.r), odd_lambda2_vector(a.r)
    for wmsg in caught:
        print(f"warning: {wmsg.message}", file=sys.stderr)
    Q = verify_equitable(p)
    result = {
        "n": p.n,
        "w": p.w,
        "r": p.r,
        "part_sizes": p.part_sizes,
        "quotient": Q.as_lists(),
        "lambda2_vector": u,
        "eigenvalue": quotient_eigenvalue(Q, u),
        "upper_bound": prop1_upper_bound(p, u),
    }
    if a.out is not None:
        a.out.write_text(dump_partition(p))
        result["file"] = str(a.out)
    return result, [f"{a.kind}-partition"]


def cmd_verify_partition(a):
    p = read_partition(a.file)
    try:
        Q = verify_equitable(p)
    except NotEquitable as exc:
        return {
            "equitable": False,
            "witness": {"vertex": exc.vertex, "part": exc.part, "counts": list(exc.counts), "expected": list(exc.expected)},
        }, ["neighbor-count"]
    result = {"equitable": True, "n": p.n, "w": p.w, "part_sizes": p.part_sizes, "quotient": Q.as_lists()}
    if a.vector is not None:
        u = _parse_vector(a.vector)
        lam = quotient_eigenvalue(Q, u)
        result["eigenvalue"] = lam
        if lam is not None and all(x != 0 for x in u):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                result["upper_bound"] = prop1_upper_bound(p, u)
    return result, ["neighbor-count"]


def cmd_search(a):
    if a.exhaustive:
        sym = None
        if a.symmetric:
            sym = [[2, 1] + list(range(3, a.n + 1)), list(range(2, a.n + 1)) + [1]]
        res = min_negatives_exhaustive(a.i, a.n, a.w, a.s_max, symmetry=sym)
    else:
        res = random_upper_search(a.i, a.n, a.w, a.iters, a.seed)
    if a.witness_out is not None and res.witness is not None:
        a.witness_out.write_text(witness_json(res.witness, a.i) + "\n")
    out = res.to_dict()
    return out, [f"{res.method}-search"]


COMMANDS = {
    "eberlein": cmd_eberlein,
    "eigenvalue": cmd_eigenvalue,
    "min-support": cmd_min_support,
    "scan": cmd_scan,
    "bounds": cmd_bounds,
    "build-partition": cmd_build_partition,
    "verify-partition": cmd_verify_partition,
    "search-negatives": cmd_search,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if a.command is None:
            raise UsageError("a subcommand is required")
        result, prov = COMMANDS[a.command](a)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (CapExceeded, RegimeError) as exc:
        print(f"refused: {exc}", file=stderr)
        return 2
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    params = {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(a).items()) if k != "command"}
    stdout.write(envelope(a.command, params, result, prov))
    return 0


def main():
    sys.exit(run())
