#!/usr/bin/env python3
"""Run the full verification suite and emit the machine-readable report.

Usage:
    python scripts/run_acceptance.py [suite ...]

With no arguments runs every suite.  Exit code 0 iff everything passed.
Honours MACVERTEX_THREADS for parallel checks.
"""

import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from macvertex.cli import SUITES, run_suite  # noqa: E402


def main() -> int:
    names = sys.argv[1:] or ["all"]
    for name in names:
        if name not in SUITES:
            print(f"unknown suite {name!r}; choose from {sorted(SUITES)}", file=sys.stderr)
            return 2
    start = time.time()
    report = run_suite(names)
    report["wall_seconds"] = round(time.time() - start, 2)
    print(json.dumps(report, indent=2))
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
