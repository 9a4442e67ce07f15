"""Orlik-Solomon algebra of A(n, ell) and the differential mu(lambda).

Elements are sparse combinations of nbc monomials ``a_{I,J}`` (see
:mod:`discarr.combinatorics` for the key format and ordering).  Products
are straightened with the three-term relation

    a_{i,k} a_{j,k} = a_{i,j} (a_{j,k} - a_{i,k})   if j >= ell + 1
    a_{i,k} a_{j,k} = 0                             if j <= ell

for i < j < k.

``mu^q(lambda)`` is returned as a matrix of shape ``dim A^q x dim A^{q+1}``
whose row ``r`` holds the coordinates of ``omega ^ b_r``: matrices act on the
right of row vectors, the same convention as the group-ring side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .combinatorics import (
    ArrangementParams,
    BasisIndex,
    Pair,
    admissible_sets,
    basis_position,
    enumerate_basis,
    hyperplane_pairs,
    weight_vector,
)
from .matrix import Matrix


@dataclass
class OSElement:
    degree: int
    ell: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: v for k, v in self.terms.items() if v}
        for k in self.terms:
            if len(k) != self.degree:
                raise ValueError(f"key {k} does not have degree {self.degree}")

    @classmethod
    def one(cls, ell: int) -> "OSElement":
        return cls(0, ell, {(): 1})

    @classmethod
    def generator(cls, pair: Pair, ell: int) -> "OSElement":
        return normal_form([pair], ell)

    def __add__(self, other: "OSElement") -> "OSElement":
        if self.degree != other.degree or self.ell != other.ell:
            raise ValueError("can only add elements of equal degree")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return OSElement(self.degree, self.ell, terms)

    def __neg__(self) -> "OSElement":
        return OSElement(self.degree, self.ell, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "OSElement") -> "OSElement":
        return self + (-other)

    def __rmul__(self, c) -> "OSElement":
        return OSElement(self.degree, self.ell, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, OSElement):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms


@lru_cache(maxsize=None)
def _straighten(factors: tuple[Pair, ...], ell: int) -> dict[BasisIndex, int]:
    f = list(factors)
    if len(set(f)) < len(f):
        return {}
    sign = 1
    # stable insertion sort on j, one sign flip per transposition
    for a in range(1, len(f)):
        b = a
        while b > 0 and f[b - 1][1] > f[b][1]:
            f[b - 1], f[b] = f[b], f[b - 1]
            sign = -sign
            b -= 1
    for p in range(len(f) - 1):
        (x, k), (y, k2) = f[p], f[p + 1]
        if k != k2:
            continue
        if x > y:
            x, y = y, x
            sign = -sign
        if y <= ell:
            return {}
        out: dict[BasisIndex, int] = {}
        left, right = f[:p], f[p + 2:]
        for coeff, new in ((1, [(x, y), (y, k)]), (-1, [(x, y), (x, k)])):
            for key, c in _straighten(tuple(left + new + right), ell).items():
                out[key] = out.get(key, 0) + sign * coeff * c
        return {key: c for key, c in out.items() if c}
    return {tuple(f): sign}


def normal_form(factors, ell: int, sign: int = 1) -> OSElement:
    """Expand ``sign * a_{f_1} ^ ... ^ a_{f_q}`` in the nbc basis."""
    factors = tuple(tuple(p) for p in factors)
    for i, j in factors:
        if not (1 <= i < j and j > ell):
            raise ValueError(f"({i},{j}) is not a hyperplane of A(n,{ell})")
    terms = {k: sign * v for k, v in _straighten(factors, ell).items()}
    return OSElement(len(factors), ell, terms)


def wedge(x: OSElement, y: OSElement) -> OSElement:
    if x.ell != y.ell:
        raise ValueError("elements of different algebras")
    terms: dict = {}
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            for k, c in _straighten(kx + ky, x.ell).items():
                terms[k] = terms.get(k, 0) + cx * cy * c
    return OSElement(x.degree + y.degree, x.ell, terms)


def omega(params: ArrangementParams, lam) -> OSElement:
    lam = weight_vector(params, lam)
    return OSElement(1, params.ell, {(p,): v for p, v in zip(hyperplane_pairs(params), lam)})


@lru_cache(maxsize=None)
def _wedge_table(params: ArrangementParams, q: int):
    """For each domain basis element, the straightened ``a_h ^ b`` for every h."""
    target = basis_position(params, q + 1)
    table = []
    for b in enumerate_basis(params, q):
        row = []
        for c, h in enumerate(hyperplane_pairs(params)):
            for key, v in _straighten((h,) + b, params.ell).items():
                row.append((target[key], c, v))
        table.append(row)
    return table


def mu_naive(params: ArrangementParams, q: int, lam) -> Matrix:
    """Matrix of left multiplication by omega, computed by straightening."""
    lam = weight_vector(params, lam)
    src, dst = enumerate_basis(params, q), enumerate_basis(params, q + 1)
    M = Matrix(len(src), len(dst))
    for r, row in enumerate(_wedge_table(params, q)):
        acc: dict = {}
        for col, c, v in row:
            acc[col] = acc.get(col, 0) + v * lam[c]
        M.rows[r] = {k: v for k, v in acc.items() if v}
    return M


# -- closed form -------------------------------------------------------------

def _basis(n: int, ell: int, q: int):
    if ell >= n:
        return ((),) if q == 0 else ()
    return enumerate_basis(ArrangementParams(n, ell), q)


def psi_coefficients(I, J, m: int, ell: int, lam: dict) -> dict[tuple[int, ...], object]:
    """Coefficients of ``a_{m,ell+1} ^ a_{R,J}`` in the B-component of ``omega ^ a_{I,J}``.

    Returns ``{R: coefficient}``.  ``lam`` maps pairs to weights.
    """
    I, J = tuple(I), tuple(J)
    out: dict = {I: lam[(m, ell + 1)]}
    for p in range(1, len(J) + 1):
        for K in admissible_sets(I[:p], J[:p], m, ell):
            w = lam[(K.last, J[p - 1])]
            if not w:
                continue
            slots = list(zip(K.positions, K.values))
            for size in range(len(slots) + 1):
                for D in itertools.combinations(slots, size):
                    R = list(I)
                    for s, k in D:
                        R[s - 1] = k
                    R = tuple(R)
                    out[R] = out.get(R, 0) + (-1) ** size * w
    return {R: v for R, v in out.items() if v}


def _mu_closed(n: int, ell: int, q: int, lam: dict) -> Matrix:
    rows_b, cols_b = _basis(n, ell, q), _basis(n, ell, q + 1)
    M = Matrix(len(rows_b), len(cols_b))
    if not rows_b or not cols_b:
        return M
    cpos = {b: k for k, b in enumerate(cols_b)}
    if q == 0:
        for b in cols_b:
            M[0, cpos[b]] = lam[b[0]]
        return M
    rpos = {b: k for k, b in enumerate(rows_b)}
    h = ell + 1

    # hat block: A(n, ell+1) acting on the summands with ell+1 not in J
    hat_rows, hat_cols = _basis(n, h, q), _basis(n, h, q + 1)
    for r, c, v in _mu_closed(n, h, q, lam).items():
        M[rpos[hat_rows[r]], cpos[hat_cols[c]]] = v

    # B block: ell copies of the hat complex, shifted by one, sign reversed
    prev_rows, prev_cols = _basis(n, h, q - 1), hat_rows
    for r, c, v in _mu_closed(n, h, q - 1, lam).items():
        for i in range(1, h):
            M[rpos[((i, h),) + prev_rows[r]], cpos[((i, h),) + prev_cols[c]]] = -v

    # Psi block: hat summands into B
    for b in hat_rows:
        I = tuple(i for i, _ in b)
        J = tuple(j for _, j in b)
        for m in range(1, h):
            for R, v in psi_coefficients(I, J, m, ell, lam).items():
                M[rpos[b], cpos[((m, h),) + tuple(zip(R, J))]] = v
    return M


def mu_closed_form(params: ArrangementParams, q: int, lam) -> Matrix:
    """mu^q(lambda) assembled from the block recursion over ell -> ell + 1."""
    lam = weight_vector(params, lam)
    lam_map = dict(zip(hyperplane_pairs(params), lam))
    return _mu_closed(params.n, params.ell, q, lam_map)


def mu(params: ArrangementParams, q: int, lam, method: str = "naive") -> Matrix:
    if method == "naive":
        return mu_naive(params, q, lam)
    if method == "closed":
        return mu_closed_form(params, q, lam)
    raise ValueError(f"unknown method {method!r}")


def os_complex(params: ArrangementParams, lam, method: str = "naive") -> list[Matrix]:
    """The maps mu^0, ..., mu^{n-ell-1} (the last map into A^{n-ell+1} = 0 is omitted)."""
    return [mu(params, q, lam, method) for q in range(params.rank)]

