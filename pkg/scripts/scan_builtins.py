#!/usr/bin/env python3
"""Rank table for every built-in complex over a coprime slope grid.

Usage: python scripts/scan_builtins.py [--pmax N] [--qmax N]

Prints one TSV row per (knot, slope) and exits nonzero if the closed
form ever disagrees with the chain-level oracle.
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from hfsurgery.knots import BUILTIN_NAMES, builtin
from hfsurgery.surgery import RankReport, compute_rank_report, coprime_slopes


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--pmax", type=int, default=8)
    parser.add_argument("--qmax", type=int, default=8)
    args = parser.parse_args()

    slopes = coprime_slopes(args.pmax, args.qmax)
    print(RankReport.TSV_HEADER)
    mismatches = 0
    for name in BUILTIN_NAMES:
        c = builtin(name)
        for slope in slopes:
            report = compute_rank_report(c, slope)
            print(report.tsv_row())
            if not report.consistent:
                mismatches += 1
    if mismatches:
        print(f"{mismatches} formula/oracle mismatches", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
