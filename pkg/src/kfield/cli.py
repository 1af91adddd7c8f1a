"""Command-line front end.

Exit codes: 0 success, 1 user error, 2 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import ktheory, report
from .abgrp import DEFAULT_PROBE_BOUND
from .errors import CrossCheckMismatch, KFieldError
from .ffield import field_of_order
from .funcfield import (
    Embedding,
    construct_remark_field,
    places_above_infinity,
    places_above_zero,
)
from .parse import format_rational, parse_rational
from .repunit import support_lemma_sweep


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def probe_bound() -> int:
    raw = os.environ.get("KFIELD_PROBE_BOUND")
    if raw is None:
        return DEFAULT_PROBE_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"KFIELD_PROBE_BOUND must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError("KFIELD_PROBE_BOUND must be nonnegative")
    return value


def _emit(obj, fmt, text):
    if fmt == "json":
        print(report.dumps(obj))
    else:
        print(text)


def cmd_analyze(args) -> int:
    rep = ktheory.analyze(args.q, args.f, args.n, args.gamma_rank, probe_bound())
    obj = report.validate_report(report.report_to_dict(rep))
    _emit(obj, args.format, report.report_to_text(rep))
    return 0 if rep.agree else 2


def _place_json(pd):
    return {"place": str(pd.place), "e": pd.e, "f": pd.f}


def cmd_construct(args) -> int:
    rf = construct_remark_field(args.q, args.f)
    obj = {
        "schema_version": report.SCHEMA_VERSION,
        "input": {"q": args.q, "f": args.f},
        **report.places_to_dict(rf),
    }
    text = "\n".join([
        f"g = {rf.g}",
        f"embedding: T -> {format_rational(rf.embedding.image)}",
        f"deg g = {rf.g.degree}, irreducible: {rf.irreducible}, g' != 0: {rf.derivative_nonzero}",
        "places above infinity:",
        *(f"  {pd}" for pd in rf.infinite_places),
        f"single infinite place: {rf.single_infinite_place}, inertia degree {rf.inertia_degree}",
        f"sum e*f = {rf.sum_ef} (expected {args.f})",
        f"verified: {rf.ok}",
    ])
    _emit(obj, args.format, text)
    return 0 if rf.ok else 2


def cmd_places(args) -> int:
    F = field_of_order(args.q)
    u = parse_rational(args.expr, F)
    E = Embedding(u)
    zero = places_above_zero(u)
    inf = places_above_infinity(E)
    ok = sum(p.e * p.f for p in zero) == E.degree == sum(p.e * p.f for p in inf)
    obj = {
        "schema_version": report.SCHEMA_VERSION,
        "input": {"q": args.q, "expr": args.expr},
        "image": format_rational(u),
        "degree": E.degree,
        "places_above_zero": [_place_json(p) for p in zero],
        "places_above_infinity": [_place_json(p) for p in inf],
        "single_infinite_place": len(inf) == 1,
        "inertia_degree_at_infinity": inf[0].f if len(inf) == 1 else None,
        "sum_ef_ok": ok,
    }
    text = "\n".join([
        f"T -> {format_rational(u)}   degree {E.degree}",
        "places above T = 0:",
        *(f"  {p}" for p in zero),
        "places above T = infinity:",
        *(f"  {p}" for p in inf),
        f"single infinite place: {len(inf) == 1}"
        + (f", inertia degree {inf[0].f}" if len(inf) == 1 else ""),
        f"sum e*f = degree: {ok}",
    ])
    _emit(obj, args.format, text)
    return 0 if ok else 2


def cmd_sweep(args) -> int:
    start = time.perf_counter()
    found = support_lemma_sweep(args.q_max, args.f_max)
    elapsed = time.perf_counter() - start
    obj = {
        "schema_version": report.SCHEMA_VERSION,
        "input": {"q_max": args.q_max, "f_max": args.f_max},
        "counterexamples": [list(c) for c in found],
        "seconds": round(elapsed, 3),
    }
    text = f"{len(found)} counterexamples (q <= {args.q_max}, f <= {args.f_max}) in {elapsed:.2f}s"
    for c in found:
        text += f"\n  q={c[0]} f1={c[1]} f2={c[2]}"
    _emit(obj, args.format, text)
    return 0 if not found else 2


def cmd_selftest(args) -> int:
    from .selftest import run_all

    results = run_all()
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    failed = sum(1 for _, ok in results if not ok)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if not failed else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kfield", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("analyze", help="K-theory report for a field shape")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="degree over F_q(T) (default: f)")
    p.add_argument("--gamma-rank", type=int, default=1)
    fmt(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="a field with one infinite place of inertia degree f")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("places", help="places of F_q(X) over T = 0 and T = infinity")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--expr", required=True, help="image of T, e.g. '1/(X^2+X+1)'")
    fmt(p)
    p.set_defaults(func=cmd_places)

    p = sub.add_parser("sweep-lemma", help="search for repunits with equal prime supports")
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--f-max", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("selftest", help="run the built-in invariant checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KFieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CrossCheckMismatch as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return 2


run = main


if __name__ == "__main__":
    sys.exit(main())
