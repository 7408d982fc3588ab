#!/usr/bin/env python3
"""Time the confluence check of the normal-form rewriting.

For each rank and relation set, checks (ab)c = a(bc) on all generator
triples for every parity plus a batch of random word triples, and prints
the elapsed time per configuration.

    python scripts/confluence_scan.py --ranks 2 3 4 --samples 1000
"""

import argparse
import random
import time
from itertools import product

from qsuper.falg import FAlgebra
from qsuper.supercore import Element, ParityDatum


def check(A: FAlgebra, rng: random.Random, samples: int, max_len: int) -> int:
    gens = range(A.datum.nfgens)
    bad = 0
    for a, b, c in product(gens, repeat=3):
        left = A.multiply(A.normal_form(Element.word((a, b))), Element.word((c,)))
        right = A.multiply(Element.word((a,)), A.normal_form(Element.word((b, c))))
        bad += left != right
    n2 = A.datum.nfgens
    for _ in range(samples):
        a, b, c = (Element.word(tuple(rng.randrange(n2) for _ in range(rng.randint(0, max_len))))
                   for _ in range(3))
        bad += A.multiply(A.multiply(a, b), c) != A.multiply(a, A.multiply(b, c))
    return bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ranks", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--samples", type=int, default=1000, help="random triples per parity")
    ap.add_argument("--max-len", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    total_bad = 0
    for n in args.ranks:
        for mode in ("uni", "multi"):
            start = time.perf_counter()
            bad = 0
            for k in range(2 ** n):
                A = FAlgebra(ParityDatum.from_bits(format(k, f"0{n}b")), mode)
                bad += check(A, rng, args.samples, args.max_len)
            total_bad += bad
            print(f"n={n} {mode:>5}: {bad} non-confluent triple(s)  [{time.perf_counter() - start:.1f}s]")
    raise SystemExit(1 if total_bad else 0)


if __name__ == "__main__":
    main()
