#!/usr/bin/env python3
"""Run the full frame x field x check matrix and print a summary table.

Equivalent to `framekit verify --scenario scenarios/full_matrix.yaml`
but handy when iterating on the library itself: pass --samples to trade
coverage for speed, and --format json to inspect the raw residuals.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from framekit.cli import main  # noqa: E402

SCENARIO = pathlib.Path(__file__).resolve().parents[1] / "scenarios" / "full_matrix.yaml"


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--format", choices=("json", "table"), default="table")
    args = parser.parse_args()

    argv = ["verify", "--scenario", str(SCENARIO), "--format", args.format]
    if args.samples is not None:
        argv += ["--samples", str(args.samples)]
    if args.seed is not None:
        argv += ["--seed", str(args.seed)]
    sys.exit(main(argv))
