#!/usr/bin/env python3
"""Run the full identity battery and write one report per format.

Usage: run_verification.py [--config FILE] [--outdir DIR] [--strict-printed]

Writes report.json, report.csv, and report.md into the output directory,
prints the per-identity summary table to stdout, and exits with the
battery's verdict status (0 ok, 1 corrected-variant failure, 2 vacuous).
"""

import argparse
import sys
from pathlib import Path

from qgenocchi import verify


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", default=None, help="key=value grid config file")
    parser.add_argument("--outdir", default="reports", help="output directory")
    parser.add_argument("--strict-printed", action="store_true")
    args = parser.parse_args()

    grid = verify.GridSpec()
    if args.config:
        grid = verify.parse_config(Path(args.config).read_text(encoding="utf-8"))

    reports = verify.run_all(grid)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    verify.emit(reports, "json", outdir / "report.json")
    verify.emit(reports, "csv", outdir / "report.csv")
    verify.emit(reports, "markdown", outdir / "report.md")

    for bucket in verify.summarize(reports):
        first = bucket["first_failure"]
        where = ""
        if first is not None:
            point = " ".join(f"{k}={v}" for k, v in first.point.items())
            where = f"  first: {point} -> {first.lhs} vs {first.rhs}"
        print(
            f"{bucket['identity']:24s} {bucket['variant']:9s} "
            f"pass={bucket['pass']:5d} fail={bucket['fail']:5d} "
            f"skip={bucket['skipped']:4d}{where}"
        )
    status = verify.exit_status(reports, strict_printed=args.strict_printed)
    print(f"reports written to {outdir}/ (exit {status})")
    return status


if __name__ == "__main__":
    sys.exit(main())
