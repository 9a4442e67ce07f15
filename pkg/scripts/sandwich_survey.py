"""How often does a local system at a root of unity carry more cohomology
than the Orlik-Solomon complex at the same weights?"""

import argparse
import random
from collections import Counter

from gmpy2 import mpq

from discarr import ArrangementParams
from discarr.cohomology import sandwich_check
from discarr.linalg import admissible_primes


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--ell", type=int, default=1)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--denominators", default="2,3")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    P = ArrangementParams(args.n, args.ell)
    rng = random.Random(args.seed)
    dens = [int(d) for d in args.denominators.split(",")]
    tally = Counter()
    for _ in range(args.samples):
        m = rng.choice(dens)
        # few distinct residues, so resonance is common
        lam = [mpq(rng.randint(-1, 1), m) for _ in range(P.N)]
        lam[0] = mpq(1, m)
        rep = sandwich_check(P, lam, admissible_primes(m, 3))
        gap = tuple(b - a for a, b in zip(rep.lower, rep.middle))
        tally[(m, rep.warning, gap)] += 1
    print(f"A({P.n},{P.ell}), {args.samples} samples, seed {args.seed}")
    print("  m  warn  middle - lower per degree   count")
    for (m, warn, gap), c in sorted(tally.items()):
        print(f"  {m}  {'yes ' if warn else 'no  '}  {str(list(gap)):26s}  {c}")


if __name__ == "__main__":
    main()
