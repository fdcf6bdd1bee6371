#!/usr/bin/env python3
"""
Desk checks for the sb-kit decision procedures.

Runs the exhaustive and randomized sweeps, prints a summary and writes a
Markdown report. The exit code is 0 only if every criterion passed.
"""
import argparse
import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent.absolute()
sys.path.insert(0, str(project_root))

from workflows.desk_checks import FAMILIES, run_desk_checks


def main() -> int:
    """
    Parse arguments and run the desk checks.

    All families:
    python workflows/desk_check_report.py --seed 7

    Selected families:
    python workflows/desk_check_report.py --family maharam --family towers
    """
    parser = argparse.ArgumentParser(description="Run the sb-kit desk checks")
    parser.add_argument("--seed", "-s", type=int, help="Sweep seed (default: SBKIT_SEED or 0)")
    parser.add_argument("--family", "-f", action="append", choices=sorted(FAMILIES),
                        help="Family to run; repeat for several (default: all)")
    parser.add_argument("--report-dir", type=Path, help="Directory for the Markdown report")

    args = parser.parse_args()
    return run_desk_checks(seed=args.seed, families=args.family, report_dir=args.report_dir)


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
