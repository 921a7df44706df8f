"""Sweep a family over k and write one CSV row per k.

Each row records the root-finder deviation and, where a splitting certificate
applies, the certified circle bounds.

    python scripts/sweep_family.py --family P --k 2..60 --out results/P.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from unicircle.cli import CERT_PLAN, parse_k_range, verify_one


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", required=True)
    ap.add_argument("--k", type=parse_k_range, required=True)
    ap.add_argument("--precision", type=int, default=256)
    ap.add_argument("--tol", type=float, default=1e-20)
    ap.add_argument("--samples", type=int, default=2**20)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    rows = [verify_one(args.family, k, args.precision, args.tol, args.samples) for k in args.k]
    fields = list(dict.fromkeys(key for r in rows for key in r))
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=fields, restval="")
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.out:
            fh.close()
    plan = CERT_PLAN.get(args.family)
    if plan:
        print(f"# certificate r={plan[0]} c={plan[1]} from k={plan[2]}", file=sys.stderr)
    return 0 if all(r.get("ok", True) for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
