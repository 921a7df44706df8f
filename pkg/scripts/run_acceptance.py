"""Run the acceptance criteria outside pytest and write a JSON summary.

    python scripts/run_acceptance.py [--only 1,4,8] [--out results/acceptance.json]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import test_acceptance as acc  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", help="comma list of criterion numbers")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    ids = [int(s) for s in args.only.split(",")] if args.only else range(1, 12)
    for i in ids:
        acc._run(i)
        print(acc.summary_lines()[-1], flush=True)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        rows = [{"criterion": i, "pass": ok, "seconds": round(s, 2), "detail": d} for i, (ok, d, s) in sorted(acc.RESULTS.items())]
        args.out.write_text(json.dumps(rows, indent=2))
    return 0 if all(ok for ok, _, _ in acc.RESULTS.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
