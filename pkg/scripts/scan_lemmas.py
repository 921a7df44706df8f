"""Dump the coefficient-inequality scans to CSV.

    python scripts/scan_lemmas.py --k 2..60 --out-dir results/
"""

from __future__ import annotations

import argparse
import csv
from pathlib import Path

from unicircle.cli import parse_k_range
from unicircle.families import lemma3_scan, lemma5_scan, lemma6_scan

HEADER = ["part", "k", "j", "lhs", "rhs", "margin", "flagged"]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=parse_k_range, default=parse_k_range("2..60"))
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    ap.add_argument("--with-lemma6", action="store_true", help="also run the slower circle-bound scan")
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    scans = {"lemma3": lemma3_scan, "lemma5": lemma5_scan}
    if args.with_lemma6:
        scans["lemma6"] = lemma6_scan
    for name, fn in scans.items():
        rep = fn(args.k)
        path = args.out_dir / f"{name}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(HEADER)
            w.writerows([*r.as_csv(), r.flagged] for r in rep.rows)
        print(f"{name}: {len(rep.rows)} rows, {len(rep.violations)} violations, {len(rep.flagged)} flagged -> {path}")


if __name__ == "__main__":
    main()
