#!/usr/bin/env python3
"""Census of SU(2) level multisets with a prescribed total central charge,
in exact rational arithmetic.

At the Calabi-Yau threefold value c = 9 the census is finite (168 multisets
with at most 9 factors); (3, 3, 3, 3, 3) is the quintic point.
"""

import argparse
from collections import Counter
from fractions import Fraction

from cyarith import gepner_levels


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-c", "--central-charge", type=int, default=9)
    ap.add_argument("--max-factors", type=int, default=9)
    ap.add_argument("--list", action="store_true", help="print every multiset")
    args = ap.parse_args()

    levels = gepner_levels(args.central_charge, args.max_factors)
    print(f"c = {args.central_charge}, <= {args.max_factors} factors: "
          f"{len(levels)} multisets")
    by_r = Counter(len(t) for t in levels)
    for r in sorted(by_r):
        print(f"  {r} factors: {by_r[r]}")

    # conductor sets k_i + 2 decide which cyclotomic fields appear
    conductors = Counter()
    for t in levels:
        for k in set(t):
            conductors[k + 2] += 1
    top = ", ".join(f"{n} (x{c})" for n, c in conductors.most_common(8))
    print(f"most common conductors: {top}")

    diag = [t for t in levels if len(set(t)) == 1]
    print(f"isotropic points k^r: {diag}")

    if args.list:
        for t in levels:
            c = sum(Fraction(3 * k, k + 2) for k in t)
            assert c == args.central_charge
            print(" ", t)


if __name__ == "__main__":
    main()
