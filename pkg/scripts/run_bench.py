#!/usr/bin/env python3
"""Timing sweep of the exact algebraic pipeline.

Runs the `spheremax bench` harness: for each row of slot dimensions, builds
the affine critical system of a seeded random integer form, computes its
Groebner basis and normal set, solves for the maximizing point, and reports
per-stage wall-clock times.  The quotient dimension of each row is checked
against the exact extreme-class count.

Usage:
    python scripts/run_bench.py                 # default rows
    python scripts/run_bench.py --full          # include the slow 3,3,3 row
    python scripts/run_bench.py --rows 2,2,2 2,3,3 --seed 1
    python scripts/run_bench.py --out bench.json
"""

import sys

from spheremax import cli


def main() -> int:
    return cli.main(["bench", *sys.argv[1:]])


if __name__ == "__main__":
    sys.exit(main())
