"""Scan weights for membership in R^m_k and summarize the hit groups.

    python scripts/scan_resonance.py --n 4 --ell 1 --k 1 --values=-1,0,1 --csv hits.csv
"""

import argparse
import time

from discarr import ArrangementParams
from discarr.cohomology import ScanSpec, group_hits, resonance_scan
from discarr.scalars import format_scalar
from discarr.serialize import scan_to_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--ell", type=int, default=1)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--values", default="-1,0,1")
    ap.add_argument("--sampler", choices=("grid", "random"), default="grid")
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int)
    ap.add_argument("--csv")
    args = ap.parse_args()

    P = ArrangementParams(args.n, args.ell)
    spec = ScanSpec(args.sampler, tuple(args.values.split(",")), args.count, args.seed)
    start = time.perf_counter()
    recs = resonance_scan(P, args.k, args.m, spec, args.workers)
    hits = [r for r in recs if r.member]
    print(f"A({P.n},{P.ell}) k={args.k} m={args.m} seed={args.seed}: "
          f"{len(hits)} hits of {len(recs)} points in {time.perf_counter() - start:.1f}s")
    for g in group_hits(P, args.k, args.m, recs, seed=args.seed):
        example = ",".join(format_scalar(v) for v in g.members[0])
        print(f"  group of {len(g.members):4d}  span {g.span_dim}  combinations {g.combos_hit}/{g.combos_tested}"
              f"  e.g. ({example})")
    if args.csv:
        with open(args.csv, "w") as f:
            f.write(scan_to_csv(P, args.k, args.m, recs))


if __name__ == "__main__":
    main()
