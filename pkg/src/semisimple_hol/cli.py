"""Command-line driver: ``python3 -m semisimple_hol <subcommand> --spec FILE``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .analysis import analyze, report_dict, summary_text
from .catalog import InvalidCounts, amalgamated_count, count_bounds, h_bounds
from .central_product import InvalidAmalgamation
from .constructors import UnsupportedName, UnsupportedParameters
from .groups import GroupError, GuardExceeded
from .specfile import SpecError, load_spec

EXIT_OK, EXIT_SPEC, EXIT_CHECKS, EXIT_GUARD = 0, 2, 3, 4

_STAGE = {
    "build": "build",
    "decompose": "decompose",
    "holomorph": "holomorph",
    "oracle-j": "holomorph",
    "hset": "hset",
    "tgroup": "tgroup",
    "report": "report",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semisimple-hol", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _STAGE:
        p = sub.add_parser(name)
        p.add_argument("--spec", required=True, type=Path, help="group spec file")
        p.add_argument("--out", type=Path, default=Path("."), help="directory for report.json and summary.txt")
        p.add_argument("--guard", type=int, default=None, help="element cap for holomorph enumeration")
        p.add_argument("--oracle", action="store_true", help="also run the brute-force regular-subgroup oracle")
    p = sub.add_parser("formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--out", type=Path, default=None)
    return parser


def _write(out: Path, report: dict, summary: str):
    out.mkdir(parents=True, exist_ok=True)
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    (out / "report.json").write_text(text, encoding="utf-8")
    (out / "summary.txt").write_text(summary, encoding="utf-8")


def _formula(args) -> int:
    try:
        m, n = h_bounds(args.n, args.l)
        lo, hi = count_bounds(args.n, args.l)
        report = {"schema": 1, "n": n, "l": args.l, "m": m, "bounds": [lo, hi],
                  "amalgamated_count": amalgamated_count(args.n, args.l)}
    except InvalidCounts as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    summary = f"n={n} l={args.l}  m={m}  bounds [{lo}, {hi}]  amalgamated count {report['amalgamated_count']}\n"
    print(summary, end="")
    if args.out is not None:
        _write(args.out, report, summary)
    return EXIT_OK


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "formula":
        return _formula(args)
    try:
        spec = load_spec(args.spec)
        start = time.perf_counter()
        G = spec.build()
        built = time.perf_counter() - start
    except (OSError, SpecError, InvalidAmalgamation, UnsupportedName, UnsupportedParameters) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except GuardExceeded as exc:
        print(f"error: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD

    oracle = args.oracle or spec.oracle or args.command == "oracle-j"
    guard = args.guard if args.guard is not None else spec.guard
    try:
        a = analyze(G, stage=_STAGE[args.command], oracle=oracle, guard=guard)
    except GuardExceeded as exc:
        print(f"error: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except GroupError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECKS
    a.timings = {"build": built, **a.timings}
    summary = summary_text(a)
    _write(args.out, report_dict(a), summary)
    print(summary, end="")
    return EXIT_OK if a.ok else EXIT_CHECKS


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
