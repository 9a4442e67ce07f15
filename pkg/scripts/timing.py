"""Wall-clock cost of the main pipelines for each (n, ell)."""

import argparse
import random
import time

from discarr import ArrangementParams
from discarr.cohomology import generic_vanishing, verify_linearization
from discarr.resolution import boundary_chain, random_rational_point


def clock(f):
    start = time.perf_counter()
    f()
    return time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--linearization-max-n", type=int, default=5)
    args = ap.parse_args()

    print(" n ell   boundary@t   generic betti   linearization")
    for n in range(2, args.max_n + 1):
        for ell in range(1, n):
            P = ArrangementParams(n, ell)
            t = random_rational_point(P, random.Random(0))
            b = clock(lambda: boundary_chain(P, t))
            g = clock(lambda: generic_vanishing(P))
            lin = "-"
            if n <= args.linearization_max_n:
                lin = f"{clock(lambda: verify_linearization(P, sweep=True)):.2f}s"
            print(f"{n:2d} {ell:3d}   {b:9.2f}s   {g:12.2f}s   {lin:>13s}")


if __name__ == "__main__":
    main()
