"""Index bookkeeping for the discriminantal arrangement A(n, ell).

Hyperplanes are indexed by pairs ``(i, j)`` with ``ell + 1 <= j <= n`` and
``1 <= i < j``.  The global coordinate order, used for every weight vector,
torus point and exponent vector in the package, is lexicographic in
``(j, i)``; e.g. for ``(n, ell) = (4, 2)`` it is
``(1,3), (2,3), (1,4), (2,4), (3,4)``.

A basis element ``a_{I,J}`` of the Orlik-Solomon algebra is stored as the
tuple of its factors ``((i_1, j_1), ..., (i_q, j_q))`` with
``j_1 < ... < j_q``.  Degree-q bases are ordered by ``J`` lexicographically,
then by ``I`` lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, prod
from typing import Iterator

from .scalars import Fp, ParameterError, to_rational

Pair = tuple[int, int]
BasisIndex = tuple[Pair, ...]


@dataclass(frozen=True)
class ArrangementParams:
    n: int
    ell: int
    N: int = field(init=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.ell, int):
            raise ParameterError("n and ell must be integers")
        if self.n < 2 or not (1 <= self.ell <= self.n - 1):
            raise ParameterError(f"need n >= 2 and 1 <= ell <= n-1, got n={self.n}, ell={self.ell}")
        object.__setattr__(self, "N", comb(self.n, 2) - comb(self.ell, 2))

    @property
    def rank(self) -> int:
        """Top degree n - ell."""
        return self.n - self.ell

    def next(self) -> "ArrangementParams | None":
        """Parameters of A(n, ell+1), or None when ell + 1 == n."""
        return ArrangementParams(self.n, self.ell + 1) if self.ell + 1 < self.n else None


@dataclass(frozen=True)
class AdmissibleSet:
    """An indexed set K: ``values[p]`` sits at 1-based position ``positions[p]``."""

    positions: tuple[int, ...]
    values: tuple[int, ...]

    @property
    def last(self) -> int:
        return self.values[-1]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.positions, self.values))


@lru_cache(maxsize=None)
def hyperplane_pairs(params: ArrangementParams) -> tuple[Pair, ...]:
    return tuple((i, j) for j in range(params.ell + 1, params.n + 1) for i in range(1, j))


@lru_cache(maxsize=None)
def pair_index(params: ArrangementParams) -> dict[Pair, int]:
    return {p: k for k, p in enumerate(hyperplane_pairs(params))}


def index_sets(params: ArrangementParams, q: int) -> list[tuple[int, ...]]:
    """All J of size q inside [ell+1, n], lexicographic."""
    return list(itertools.combinations(range(params.ell + 1, params.n + 1), q))


def module_rank(J) -> int:
    return prod(j - 1 for j in J)


def fibers(J) -> Iterator[tuple[int, ...]]:
    """All I with 1 <= i_p < j_p, lexicographic."""
    return itertools.product(*(range(1, j) for j in J))


@lru_cache(maxsize=None)
def enumerate_basis(params: ArrangementParams, q: int) -> tuple[BasisIndex, ...]:
    if q < 0:
        raise ParameterError(f"negative degree {q}")
    out = []
    for J in index_sets(params, q):
        for I in fibers(J):
            out.append(tuple(zip(I, J)))
    return tuple(out)


@lru_cache(maxsize=None)
def basis_position(params: ArrangementParams, q: int) -> dict[BasisIndex, int]:
    return {b: k for k, b in enumerate(enumerate_basis(params, q))}


def dims(params: ArrangementParams) -> list[int]:
    return [len(enumerate_basis(params, q)) for q in range(params.rank + 1)]


def poincare_coefficients(params: ArrangementParams) -> list[int]:
    """Coefficients of prod_{j=ell+1}^{n} (1 + (j-1) t), by polynomial multiplication."""
    coeffs = [1]
    for j in range(params.ell + 1, params.n + 1):
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c
            nxt[k + 1] += c * (j - 1)
        coeffs = nxt
    return coeffs


def is_admissible(I, J, m: int, ell: int, K: AdmissibleSet) -> bool:
    """Direct check of the admissibility conditions for K against (I, J)."""
    q = len(J)
    pos, val = K.positions, K.values
    if len(pos) != len(val) or not pos:
        return False
    if list(pos) != sorted(set(pos)) or pos[-1] != q or pos[0] < 1:
        return False
    for s, k in zip(pos, val):
        if not (1 <= k < J[s - 1]) or k == I[s - 1]:
            return False
    if {val[0], I[pos[0] - 1]} != {m, ell + 1}:
        return False
    for p in range(1, len(pos)):
        prev = pos[p - 1]
        if {val[p], I[pos[p] - 1]} != {val[p - 1], J[prev - 1]}:
            return False
    return True


@lru_cache(maxsize=None)
def admissible_sets(I: tuple[int, ...], J: tuple[int, ...], m: int, ell: int) -> tuple[AdmissibleSet, ...]:
    """Every I-admissible K for the distinguished hyperplane (m, ell+1).

    Exhaustive over the position subsets of {1..q-1} (position q is always
    last) and over all values 1 <= k_s < j_s.
    """
    I, J = tuple(I), tuple(J)
    q = len(J)
    if q == 0 or len(I) != q:
        return ()
    if not 1 <= m <= ell:
        raise ParameterError(f"need 1 <= m <= ell, got m={m}, ell={ell}")
    found = []
    for t in range(q):
        for head in itertools.combinations(range(1, q), t):
            positions = head + (q,)
            for values in itertools.product(*(range(1, J[s - 1]) for s in positions)):
                K = AdmissibleSet(positions, values)
                if is_admissible(I, J, m, ell, K):
                    found.append(K)
    return tuple(found)


def weight_vector(params: ArrangementParams, values) -> tuple:
    """Coerce weights/torus coordinates to a tuple in the global pair order.

    Accepts a sequence of length N or a mapping keyed by pair.  Ints,
    Fractions and strings such as ``"-3/2"`` become exact rationals
    (``mpq``); prime-field elements pass through.
    """
    if isinstance(values, dict):
        idx = pair_index(params)
        unknown = set(values) - set(idx)
        if unknown:
            raise ParameterError(f"unknown hyperplane pairs {sorted(unknown)}")
        out = [0] * params.N
        for p, v in values.items():
            out[idx[p]] = v
        values = out
    values = list(values)
    if len(values) != params.N:
        raise ParameterError(f"expected N={params.N} coordinates for A({params.n},{params.ell}), got {len(values)}")
    return tuple(v if isinstance(v, Fp) else to_rational(v) for v in values)


def restrict_vector(params: ArrangementParams, sub: ArrangementParams, values) -> tuple:
    """Drop the coordinates of ``params`` that are not hyperplanes of ``sub``."""
    idx = pair_index(params)
    return tuple(values[idx[p]] for p in hyperplane_pairs(sub))
