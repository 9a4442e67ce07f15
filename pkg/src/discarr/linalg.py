"""Exact ranks, Betti numbers of finite complexes, and prime-field points.

Rational matrices are row-scaled to integers and reduced by fraction-free
(Bareiss) elimination; prime-field matrices by ordinary elimination mod p.
Complexes follow the row convention of :mod:`discarr.matrix`: the map out
of degree k has ``dims[k]`` rows, and consecutive maps compose as
``M_k @ M_{k+1} = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Sequence

from gmpy2 import mpq, mpz

from .combinatorics import ArrangementParams, ParameterError, weight_vector
from .matrix import Matrix
from .scalars import RATIONAL_TYPES, Fp, check_prime


class InvariantError(RuntimeError):
    """A computed object violates an identity that must hold."""

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


def scalar_kind(M: Matrix):
    """``"Q"`` for rationals, the prime ``p`` for F_p, ``None`` for an empty matrix."""
    kind = None
    for _, _, v in M.items():
        k = v.p if isinstance(v, Fp) else "Q" if isinstance(v, RATIONAL_TYPES) else type(v).__name__
        if kind is None:
            kind = k
        elif k != kind:
            raise TypeError(f"mixed scalar kinds {kind!r} and {k!r}")
    if kind is not None and kind != "Q" and not isinstance(kind, int):
        raise TypeError(f"unsupported scalar type {kind}")
    return kind


def _integer_rows(M: Matrix) -> list[list]:
    rows = []
    for row in M.rows:
        if not row:
            continue
        vals = {j: mpq(v) for j, v in row.items()}
        scale = mpz(lcm(*(int(v.denominator) for v in vals.values())))
        dense = [mpz(0)] * M.ncols
        for j, v in vals.items():
            dense[j] = v.numerator * (scale // v.denominator)
        rows.append(dense)
    return rows


def bareiss_rank(M: Matrix) -> int:
    """Fraction-free elimination with largest-magnitude pivots."""
    a = _integer_rows(M)
    nrows, ncols = len(a), M.ncols
    prev = mpz(1)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv, best = -1, 0
        for i in range(r, nrows):
            x = abs(a[i][c])
            if x > best:
                piv, best = i, x
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            if f:
                for j in range(c + 1, ncols):
                    ai[j] = (p * ai[j] - f * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if ai[j]:
                        ai[j] = (p * ai[j]) // prev
            ai[c] = mpz(0)
        prev = p
        r += 1
    return r


def gauss_rank(M: Matrix) -> int:
    """Plain rational elimination; a slow cross-check for :func:`bareiss_rank`."""
    rows = [{j: mpq(v) for j, v in row.items()} for row in M.rows if row]
    rank = 0
    while rows:
        row = rows.pop()
        if not row:
            continue
        c = min(row)
        pv = row[c]
        rank += 1
        nxt = []
        for other in rows:
            f = other.get(c)
            if f:
                k = f / pv
                for j, v in row.items():
                    w = other.get(j, 0) - k * v
                    if w:
                        other[j] = w
                    else:
                        other.pop(j, None)
            if other:
                nxt.append(other)
        rows = nxt
    return rank


def _residue(v, p: int) -> int:
    if isinstance(v, Fp):
        return v.v
    v = mpq(v)
    if v.denominator % p == 0:
        raise ParameterError(f"{v} has no image in F_{p}")
    return int(v.numerator) * pow(int(v.denominator), -1, p) % p


def modp_rank(M: Matrix, p: int) -> int:
    """Rank over F_p; rational entries are reduced mod p first."""
    rows = [{j: _residue(v, p) for j, v in row.items()} for row in M.rows]
    rows = [{j: v for j, v in row.items() if v} for row in rows]
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        row = rows.pop()
        c = min(row)
        inv = pow(row[c], -1, p)
        rank += 1
        nxt = []
        for other in rows:
            f = other.get(c)
            if f:
                k = f * inv % p
                for j, v in row.items():
                    w = (other.get(j, 0) - k * v) % p
                    if w:
                        other[j] = w
                    else:
                        other.pop(j, None)
            if other:
                nxt.append(other)
        rows = nxt
    return rank


# Large primes for the modular pre-pass.  Rank can only drop mod p, so a
# full mod-p rank is already the rational rank.
SHADOW_PRIMES = (2**61 - 1, 2**31 - 1, 1_000_000_007)


def _shadow_prime(M: Matrix) -> int | None:
    dens = {int(mpq(v).denominator) for _, _, v in M.items()}
    for p in SHADOW_PRIMES:
        if all(d % p for d in dens):
            return p
    return None


def rank(M: Matrix) -> int:
    kind = scalar_kind(M)
    if kind is None:
        return 0
    if kind != "Q":
        return modp_rank(M, kind)
    p = _shadow_prime(M)
    if p is not None and modp_rank(M, p) == min(M.shape):
        return min(M.shape)
    return bareiss_rank(M)


# -- complexes ---------------------------------------------------------------

@dataclass
class GradedComplexEval:
    """Cochain complex ``V_0 -> V_1 -> ... -> V_d`` with ``maps[k]: V_k -> V_{k+1}``."""

    dims: list[int]
    maps: list[Matrix]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.maps) != len(self.dims) - 1:
            raise ValueError(f"{len(self.dims)} degrees need {len(self.dims) - 1} maps, got {len(self.maps)}")
        for k, M in enumerate(self.maps):
            if M.shape != (self.dims[k], self.dims[k + 1]):
                raise ValueError(f"map {k} has shape {M.shape}, expected {(self.dims[k], self.dims[k + 1])}")

    def check_composition(self) -> None:
        for k in range(len(self.maps) - 1):
            if not (self.maps[k] @ self.maps[k + 1]).is_zero():
                raise InvariantError(f"maps out of degrees {k} and {k + 1} do not compose to zero", k)


def euler_characteristic(dims: Sequence[int]) -> int:
    return sum((-1) ** k * d for k, d in enumerate(dims))


def complex_betti(cx: GradedComplexEval, check: bool = True, ranks: list[int] | None = None) -> list[int]:
    """``b_k = dim V_k - rank(out of k) - rank(into k)``."""
    if check:
        cx.check_composition()
    if ranks is None:
        ranks = complex_ranks(cx)
    betti = _betti_from_ranks(cx.dims, ranks)
    if any(b < 0 for b in betti):
        raise InvariantError(f"negative Betti numbers {betti}")
    return betti


def _betti_from_ranks(dims: Sequence[int], ranks: Sequence[int]) -> list[int]:
    out = []
    for k, d in enumerate(dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k > 0 else 0
        out.append(d - r_out - r_in)
    return out


def complex_ranks(cx: GradedComplexEval) -> list[int]:
    """Exact ranks of all maps, using one modular pass to skip most rational elimination.

    Over Q, ranks mod p give upper bounds b'_k >= b_k, and the excess in
    degree k is the sum of the rank drops of the two maps touching it.  So
    wherever b'_k = 0 both neighbouring mod-p ranks are exact; only the
    remaining maps go through fraction-free elimination.
    """
    kinds = {scalar_kind(M) for M in cx.maps} - {None}
    if kinds != {"Q"}:
        return [rank(M) for M in cx.maps]
    primes = [_shadow_prime(M) for M in cx.maps]
    if None in primes or len(set(primes) - {None}) > 1:
        return [rank(M) for M in cx.maps]
    p = primes[0]
    shadow = [modp_rank(M, p) for M in cx.maps]
    b = _betti_from_ranks(cx.dims, shadow)
    ranks = []
    for k, M in enumerate(cx.maps):
        exact = b[k] == 0 or b[k + 1] == 0 or shadow[k] == min(M.shape)
        ranks.append(shadow[k] if exact else bareiss_rank(M))
    return ranks


# -- prime fields ------------------------------------------------------------

def element_of_order(m: int, p: int) -> int:
    """Smallest residue of multiplicative order exactly m in F_p."""
    check_prime(p)
    if (p - 1) % m:
        raise ParameterError(f"F_{p} has no element of order {m} (need p = 1 mod {m})")
    divisors = [d for d in range(1, m) if m % d == 0]
    for g in range(1, p):
        if pow(g, m, p) == 1 and all(pow(g, d, p) != 1 for d in divisors):
            return g
    raise ParameterError(f"no element of order {m} in F_{p}")


def common_denominator(lam) -> int:
    return lcm(*(int(mpq(v).denominator) for v in lam)) if lam else 1


@dataclass(frozen=True)
class CyclotomicPoint:
    """Mod-p image of ``t = exp(-2 pi i lambda)``: ``t_H = g^{-a_H}`` with ``lambda_H = a_H/m``."""

    t: tuple
    p: int
    m: int
    g: int


def cyclotomic_point(params: ArrangementParams, lam, p: int) -> CyclotomicPoint:
    lam = weight_vector(params, lam)
    check_prime(p)
    m = common_denominator(lam)
    if m == 1:
        return CyclotomicPoint(tuple(Fp(1, p) for _ in lam), p, 1, 1)
    g = Fp(element_of_order(m, p), p)
    t = tuple(g ** (-int(v * m)) for v in lam)
    return CyclotomicPoint(t, p, m, g.v)


def admissible_primes(m: int, count: int = 3, start: int = 1000, stop: int = 10**6) -> list[int]:
    """The first ``count`` primes ``p = 1 (mod m)`` with ``start < p < stop``."""
    from gmpy2 import next_prime

    out = []
    p = int(next_prime(start))
    while p < stop and len(out) < count:
        if (p - 1) % m == 0:
            out.append(p)
        p = int(next_prime(p))
    if len(out) < count:
        raise ParameterError(f"fewer than {count} primes = 1 mod {m} in ({start}, {stop})")
    return out


@dataclass
class ConsensusReport:
    per_prime: dict[int, list[int]]
    estimate: list[int]
    agree: bool
    disagreements: list[int]

    def as_dict(self) -> dict:
        return {
            "per_prime": {str(p): b for p, b in self.per_prime.items()},
            "estimate": self.estimate,
            "agree": self.agree,
            "disagreements": self.disagreements,
        }


def multi_prime_betti(build: Callable[[int], GradedComplexEval], primes: Sequence[int]) -> ConsensusReport:
    """Betti numbers over several F_p; the per-degree minimum is the estimate.

    Mod-p ranks can only drop, so each prime over-estimates; differing
    answers are reported, never silently resolved.
    """
    primes = list(primes)
    if len(primes) < 2:
        raise ParameterError("need at least two primes for a consensus")
    per = {p: complex_betti(build(p)) for p in primes}
    table = list(per.values())
    estimate = [min(col) for col in zip(*table)]
    bad = [k for k, col in enumerate(zip(*table)) if len(set(col)) > 1]
    return ConsensusReport(per, estimate, not bad, bad)
