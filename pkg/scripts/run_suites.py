#!/usr/bin/env python3
"""Run every verification suite over a grid of parities and save JSON reports.

    python scripts/run_suites.py --ranks 2 3 --out results/suites
"""

import argparse
import json
import time
from pathlib import Path
from types import SimpleNamespace

from qsuper.cli import SUITES, run_suite
from qsuper.supercore import ParityDatum, PhiMatrix


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ranks", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--suites", nargs="+", default=SUITES, choices=SUITES)
    ap.add_argument("--mode", choices=["uni", "multi"], default="uni")
    ap.add_argument("--out", type=Path, default=Path("results/suites"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for n in args.ranks:
        for k in range(2 ** n):
            datum = ParityDatum.from_bits(format(k, f"0{n}b"))
            opts = SimpleNamespace(depth=None, degree=None, mode=args.mode)
            for name in args.suites:
                start = time.perf_counter()
                rep = run_suite(name, datum, opts, PhiMatrix(n))
                secs = time.perf_counter() - start
                failed += not rep.passed
                print(f"{rep.summary()}  [{secs:.1f}s]")
                path = args.out / f"{name}-{datum.bits}-{args.mode}.json"
                path.write_text(json.dumps({**rep.to_dict(), "seconds": round(secs, 3)}, indent=2))
    print(f"{failed} failing report(s)")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
