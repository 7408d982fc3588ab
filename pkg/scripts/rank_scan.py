#!/usr/bin/env python3
"""Rank of the pairing matrix against the number of ordered monomials.

For each parity, degree bound m and word-length bound l this prints
rank(<b, w>) next to the count of ordered monomials of degree <= m, which
shows how long the enveloping words must be before the pairing separates
the monomials.

    python scripts/rank_scan.py --n 3 --degree 2 --lengths 2 3 4
"""

import argparse

from qsuper.falg import FAlgebra
from qsuper.pairing import pairing_matrix_rank
from qsuper.supercore import ParityDatum


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--degree", type=int, default=2)
    ap.add_argument("--lengths", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--mode", choices=["standard", "twisted"], default="standard")
    args = ap.parse_args()

    print(f"{'parity':>8} {'m':>3} {'l':>3} {'rank':>6} {'monomials':>10}")
    for k in range(2 ** args.n):
        datum = ParityDatum.from_bits(format(k, f"0{args.n}b"))
        count = len(FAlgebra(datum).pbw_words_upto(args.degree))
        for length in args.lengths:
            rank = pairing_matrix_rank(datum, args.degree, length, args.mode)
            print(f"{datum.bits:>8} {args.degree:>3} {length:>3} {rank:>6} {count:>10}")


if __name__ == "__main__":
    main()
