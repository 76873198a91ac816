"""Command line surface: compute, orbit, verify, oracle.

Every subcommand writes JSON to stdout so runs are machine-checkable.
Exit codes: 0 success, 1 computation error or failed verification, 2 usage
error (argparse's default).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, Optional

from .aztec import AztecInstance, PeriodMatrix, ZeroCellFactor, evaluate
from .exprs import parse
from .families import FAMILY_NAMES, family_value
from .graphs import SizeCapExceeded, graph_from_json, oracle_mgf
from .orbit import detect_proportional, detect_q_shift
from .rational import RationalFunction, factor_integer
from .verify import SUITES

RF = RationalFunction


class ComputationError(RuntimeError):
    pass


def _parse_bindings(text: Optional[str]) -> Dict[str, RF]:
    out: Dict[str, RF] = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ComputationError(f"binding {item!r} is not name=value")
        name, value = item.split("=", 1)
        out[name.strip()] = parse(value.strip())
    return out


def _integer_factorization(value: RF):
    """[[prime, exponent], ...] when the value is an integer, else None."""
    if not (value.num.is_const() and value.den.is_const()):
        return None
    q = value.num.as_const() / value.den.as_const()
    if q.denominator != 1 or q == 0:
        return None
    n = int(q)
    if abs(n) == 1:
        return []
    return [[p, e] for p, e in factor_integer(n)]


def _load_period(path: str) -> PeriodMatrix:
    try:
        with open(path) as fh:
            return PeriodMatrix.from_json(fh.read())
    except (OSError, ValueError, KeyError) as e:
        raise ComputationError(f"cannot read period file {path}: {e}")


def cmd_compute(args) -> int:
    bindings = _parse_bindings(args.bind)
    if args.family:
        if args.trace:
            raise ComputationError(
                "--trace needs --period; family values may combine several "
                "pipeline runs")
        value = family_value(args.family, args.n, bindings or None)
        trace = None
    else:
        period = _load_period(args.period)
        if bindings:
            period = period.substitute(bindings)
        if args.n > args.max_order:
            raise ComputationError(
                f"order {args.n} exceeds --max-order {args.max_order}")
        value, trace = evaluate(AztecInstance(args.n, period))
    out = {"value": str(value)}
    fact = _integer_factorization(value)
    if fact is not None:
        out["factorization"] = fact
    if args.trace and trace is not None:
        out["trace"] = [{"order": o, "factor": str(f.expand())}
                        for o, f, _ in trace.steps]
    print(json.dumps(out))
    return 0


def cmd_orbit(args) -> int:
    period = _load_period(args.period)
    rep = detect_proportional(period, max_iter=args.max_iter)
    if rep.kind == "none":
        variables = set()
        for row in period.entries:
            for e in row:
                variables |= set(e.num.variables) | set(e.den.variables)
        if len(variables) == 1:
            rep = detect_q_shift(period, var=next(iter(variables)),
                                 max_iter=args.max_iter)
    print(rep.to_json())
    return 0


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; choose from "
              f"{', '.join(sorted(SUITES))}", file=sys.stderr)
        return 2
    kwargs = {}
    if args.trials is not None:
        kwargs["trials"] = args.trials
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.slow:
        kwargs["slow"] = True
    result = SUITES[args.suite](**kwargs)
    for c in result.cases:
        mark = "PASS" if c.passed else "FAIL"
        print(f"[{mark}] {result.suite}/{c.case_id}")
    print(json.dumps(result.to_dict()))
    return 0 if result.passed else 1


def cmd_oracle(args) -> int:
    try:
        with open(args.graph) as fh:
            g = graph_from_json(fh.read())
    except (OSError, ValueError, KeyError) as e:
        raise ComputationError(f"cannot read graph file {args.graph}: {e}")
    value = oracle_mgf(g)
    out = {"value": str(value)}
    fact = _integer_factorization(value)
    if fact is not None:
        out["factorization"] = fact
    print(json.dumps(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="matchgen",
        description="Exact tiling generating functions of diamond-shaped "
                    "regions with periodic weights.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="evaluate a family or a period file")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=FAMILY_NAMES)
    src.add_argument("--period", metavar="FILE",
                     help="JSON period matrix (PeriodMatrix.to_json format)")
    c.add_argument("--n", type=int, required=True, help="region order")
    c.add_argument("--bind", metavar="k=v,...",
                   help="substitute values for variables")
    c.add_argument("--trace", action="store_true",
                   help="include per-step reduction factors")
    c.add_argument("--max-order", type=int, default=64,
                   help="refuse orders above this budget")
    c.set_defaults(fn=cmd_compute)

    o = sub.add_parser("orbit", help="analyze the shuffle orbit of a period")
    o.add_argument("--period", metavar="FILE", required=True)
    o.add_argument("--max-iter", type=int, default=40)
    o.set_defaults(fn=cmd_orbit)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", help=", ".join(sorted(SUITES)))
    v.add_argument("--trials", type=int, default=None)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--slow", action="store_true",
                   help="include the long-running cases")
    v.set_defaults(fn=cmd_verify)

    g = sub.add_parser("oracle",
                       help="brute-force value of a weighted graph file")
    g.add_argument("graph", metavar="FILE",
                   help="JSON graph (graph_to_json format)")
    g.set_defaults(fn=cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ComputationError, ZeroCellFactor, SizeCapExceeded,
            ZeroDivisionError, ValueError) as e:
        print(json.dumps({"error": {"kind": type(e).__name__,
                                    "message": str(e)}}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
