"""framekit command line: scenario-driven verification runs.

Exit codes: 0 all checks pass, 1 at least one check fails or errors,
2 usage/configuration problems.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import objectivity as obj
from .errors import FramekitError, UsageError
from .fields import FIELD_CATALOG
from .frames import FRAME_CATALOG
from .scenario import VERSION, emit_report, load_scenario, run_suite


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framekit",
        description="Verify frame-invariance identities on manufactured flows.")
    parser.add_argument("--version", action="version", version=f"framekit {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the checks of a scenario file")
    verify.add_argument("--scenario", required=True, help="path to a scenario document")
    verify.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    verify.add_argument("--samples", type=int, default=None,
                        help="override the per-check sample count")
    verify.add_argument("--out", default=None, help="write the report here instead of stdout")
    verify.add_argument("--format", choices=("json", "table"), default="table")

    sub.add_parser("list", help="print the frame/field/check catalogs")
    return parser


def _cmd_verify(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.seed is not None:
        scenario = dataclasses.replace(scenario, seed=args.seed)
    if args.samples is not None:
        if args.samples < 1:
            raise UsageError("'samples' must be an integer >= 1")
        scenario = dataclasses.replace(scenario, samples=args.samples)
    report = run_suite(scenario)
    text = emit_report(report, format=args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


def _cmd_list() -> int:
    print("frames:")
    for name in FRAME_CATALOG:
        print(f"  {name}")
    print("fields:")
    for name in FIELD_CATALOG:
        print(f"  {name}")
    print("checks:")
    for name in obj.CHECK_IDS:
        print(f"  {name}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "list":
            return _cmd_list()
        return _cmd_verify(args)
    except FramekitError as exc:
        print(f"framekit: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"framekit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
