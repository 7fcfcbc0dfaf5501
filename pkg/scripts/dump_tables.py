#!/usr/bin/env python3
"""Dump the K -> PBW transition tables and low-order vertex matrix elements
for eyeballing against the published tables.

Usage:
    python scripts/dump_tables.py [--n N] [--max-level L]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from macvertex.genmac import GenMac  # noqa: E402
from macvertex.mukade import Mukade  # noqa: E402
from macvertex.partitions import ntuples  # noqa: E402
from macvertex.scalar import Field  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--max-level", type=int, default=2)
    args = ap.parse_args()

    field = Field.standard(args.n)
    gm = GenMac(field, args.n, field.u(args.n))
    for level in range(1, args.max_level + 1):
        for sign in "+-":
            labels, mat = gm.alpha_matrix(level, sign)
            print(f"== alpha^({sign}) N={args.n} level {level}")
            print("   columns:", [list(map(list, l)) for l in labels])
            for lam, row in zip(labels, mat):
                print(f"   {list(map(list, lam))}: {[str(x.normalize()) for x in row]}")

    M = Mukade(field, args.n, field.u(args.n), field.v(args.n), field.sym("w"))
    print(f"== vertex matrix elements N={args.n}, levels <= 1")
    vac = tuple([] for _ in range(args.n))
    for lam in ntuples(1, args.n):
        print(f"   <X_{list(map(list, lam))}|V|0> = {M.element(lam, vac)}")
        print(f"   <0|V|X_{list(map(list, lam))}> = {M.element(vac, lam)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
