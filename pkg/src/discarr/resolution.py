"""Free resolution of Z over the complement group of A(n, ell).

Degree q is the free module ``C_q = (+)_{|J| = q} C^J`` over subsets
``J`` of ``[ell+1, n]``, with ``C^J`` of rank ``prod_{j in J} (j - 1)``.
Its basis is indexed exactly like the degree-q Orlik-Solomon basis
(``J`` lexicographic, then ``I``), so boundary matrices and ``mu`` share
coordinates.

For ``J = (j_1 < ... < j_q)`` the block ``Delta_J`` has rows indexed by
``(i_1, ..., i_q)`` and columns by ``(i_2, ..., i_q)``:

    Delta_{(j)}  = column (gamma_{i,j} - 1)_i
    Delta_J      = -rho~_{j_q}(Delta_{(j_1..j_{q-1})})

The component of ``partial_q`` from ``C^J`` to ``C^{J - j_{p+1}}`` is
``d_p = prod_{a <= p} (j_a - 1)`` diagonal copies of
``Delta_{(j_{p+1}, ..., j_q)}``.  ``partial_q`` has shape
``dim C_q x dim C_{q-1}`` and ``partial_{q+1} @ partial_q = 0``.

Two routes build ``Delta_J``: over the group ring (exact words, practical
only for small n), and directly in Laurent polynomials by abelianizing at
the leaves of the recursion (used everywhere else).  They agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .combinatorics import (
    ArrangementParams,
    ParameterError,
    enumerate_basis,
    hyperplane_pairs,
    index_sets,
    module_rank,
    pair_index,
    weight_vector,
)
from .fox import (
    DomainError,
    GroupRingElement,
    LaurentPoly,
    Word,
    derivative_matrix,
    rho_letter,
    rho_tilde,
    word_exponent,
)
from .matrix import Matrix, block_diag


@dataclass(frozen=True)
class ResolutionLayout:
    """Offsets of the summands ``C^J`` inside ``C_q``."""

    params: ArrangementParams
    q: int

    @property
    def blocks(self) -> list[tuple[tuple[int, ...], int, int]]:
        """``(J, offset, rank)`` for each summand, in basis order."""
        out, off = [], 0
        for J in index_sets(self.params, self.q):
            m = module_rank(J)
            out.append((J, off, m))
            off += m
        return out

    @property
    def dim(self) -> int:
        return sum(m for _, _, m in self.blocks)

    def offset(self, J) -> int:
        for K, off, _ in self.blocks:
            if K == tuple(J):
                return off
        raise KeyError(J)


def _check_degree(params: ArrangementParams, q: int) -> None:
    if not 1 <= q <= params.rank:
        raise ParameterError(f"boundary degree must be in 1..{params.rank}, got {q}")


# -- group-ring route --------------------------------------------------------

def delta_group(J) -> Matrix:
    """``Delta_J`` over the group ring."""
    J = tuple(J)
    j1 = J[0]
    M = Matrix(j1 - 1, 1)
    for i in range(1, j1):
        M[i - 1, 0] = GroupRingElement.word(((i, j1, 1),)) - 1
    for j in J[1:]:
        M = -rho_tilde(M, j)
    return M


def _assemble(params: ArrangementParams, q: int, delta) -> Matrix:
    src, dst = ResolutionLayout(params, q), ResolutionLayout(params, q - 1)
    out = Matrix(src.dim, dst.dim)
    for J, off, _ in src.blocks:
        d = 1
        for p in range(q):
            tail = J[p:]
            rest = J[:p] + J[p + 1:]
            out.place(block_diag([delta(tail)] * d), off, dst.offset(rest))
            d *= J[p] - 1
    return out


def assemble_boundary_group(params: ArrangementParams, q: int) -> Matrix:
    """``partial_q`` with group-ring entries."""
    _check_degree(params, q)
    return _assemble(params, q, delta_group)


# -- abelianized routes -----------------------------------------------------

class RepBuilder:
    """``Delta_J`` over a commutative ring, abelianizing at the leaves.

    ``leaf(letter)`` gives the image of a single letter (a Laurent monomial
    or the scalar ``t_{i,j}^{+-1}``) and ``one`` the ring's unit.  Every step
    is a ring map applied to the group-ring recursion, so the result equals
    abelianizing (or evaluating) the group-ring matrices.
    """

    def __init__(self, params: ArrangementParams, leaf, one):
        self.params = params
        self.leaf = leaf
        self.one = one
        self._chain: dict = {}
        self._word: dict = {}
        self._delta: dict = {}

    def chain_rep(self, chain: tuple[int, ...], letter) -> Matrix:
        """``rho~_{j_k}( ... rho_{j_1}(letter))`` for ``chain = (j_1..j_k)``."""
        key = (chain, letter)
        if key in self._chain:
            return self._chain[key]
        if not chain:
            out = Matrix(1, 1, [{0: self.leaf(letter)}])
        else:
            j, rest = chain[0], chain[1:]
            d = module_rank(rest)
            R = rho_letter(letter, j)
            out = Matrix(R.nrows * d, R.ncols * d)
            for r, c, x in R.items():
                block = Matrix(d, d)
                for w, coeff in x.terms.items():
                    block = block + self.word_rep(rest, w).scale(coeff)
                out.place(block, r * d, c * d)
        self._chain[key] = out
        return out

    def word_rep(self, chain: tuple[int, ...], w: Word) -> Matrix:
        key = (chain, w)
        if key in self._word:
            return self._word[key]
        if not w:
            out = Matrix.identity(module_rank(chain), self.one)
        elif len(w) == 1:
            out = self.chain_rep(chain, w[0])
        else:
            h = len(w) // 2
            out = self.word_rep(chain, w[:h]) @ self.word_rep(chain, w[h:])
        self._word[key] = out
        return out

    def delta(self, J: tuple[int, ...]) -> Matrix:
        if J in self._delta:
            return self._delta[J]
        j1, chain = J[0], J[1:]
        d = module_rank(chain)
        sign = -1 if len(chain) % 2 else 1
        ident = Matrix.identity(d, self.one)
        out = Matrix((j1 - 1) * d, d)
        for i in range(1, j1):
            out.place((self.chain_rep(chain, (i, j1, 1)) - ident).scale(sign), (i - 1) * d, 0)
        self._delta[J] = out
        return out

    def boundary(self, q: int) -> Matrix:
        _check_degree(self.params, q)
        return _assemble(self.params, q, self.delta)


@lru_cache(maxsize=None)
def laurent_builder(params: ArrangementParams) -> RepBuilder:
    leaf = lambda l: LaurentPoly.monomial(word_exponent((l,), params))
    return RepBuilder(params, leaf, LaurentPoly.constant(params.N, 1))


def point_builder(params: ArrangementParams, t) -> RepBuilder:
    t = weight_vector(params, t)
    if any(not v for v in t):
        raise DomainError("torus coordinates must be invertible")
    idx = pair_index(params)
    inv = [v ** -1 for v in t]

    def leaf(l):
        try:
            k = idx[l[:2]]
        except KeyError:
            raise DomainError(f"gamma_{{{l[0]},{l[1]}}} is not a generator") from None
        return t[k] if l[2] == 1 else inv[k]

    return RepBuilder(params, leaf, t[0] ** 0)


def delta_laurent(params: ArrangementParams, J) -> Matrix:
    """``Delta_J`` with Laurent polynomial entries."""
    J = tuple(J)
    if not J or any(a >= b for a, b in zip(J, J[1:])) or J[0] <= params.ell or J[-1] > params.n:
        raise ParameterError(f"J={J} is not an increasing subset of [{params.ell + 1}, {params.n}]")
    return laurent_builder(params).delta(J)


@lru_cache(maxsize=None)
def boundary_laurent(params: ArrangementParams, q: int) -> Matrix:
    """``partial_q`` with Laurent entries, shape ``dim C_q x dim C_{q-1}``."""
    return laurent_builder(params).boundary(q)


def boundary_eval(params: ArrangementParams, q: int, t) -> Matrix:
    """``partial_q`` evaluated at the torus point ``t`` (global pair order)."""
    return point_builder(params, t).boundary(q)


def boundary_derivative(params: ArrangementParams, q: int, lam) -> Matrix:
    """Derivative of ``t -> partial_q(t)`` at ``t = 1`` in the direction ``lam``."""
    return derivative_matrix(boundary_laurent(params, q), weight_vector(params, lam))


def cochain_matrix(params: ArrangementParams, q: int, t) -> Matrix:
    """``delta^q(t) = (-1)^q partial_{q+1}(t)^T``, shape ``dim C_q x dim C_{q+1}``."""
    return cochain_from_boundary(boundary_eval(params, q + 1, t), q)


def cochain_from_boundary(partial: Matrix, q: int) -> Matrix:
    M = partial.T
    return -M if q % 2 else M


def cochain_complex(params: ArrangementParams, t) -> list[Matrix]:
    """``[delta^0(t), ..., delta^{n-ell-1}(t)]``."""
    return [cochain_from_boundary(d, q) for q, d in enumerate(boundary_chain(params, t))]


def boundary_chain(params: ArrangementParams, t) -> list[Matrix]:
    """``[partial_1(t), ..., partial_{n-ell}(t)]`` sharing one evaluation cache."""
    b = point_builder(params, t)
    return [b.boundary(q) for q in range(1, params.rank + 1)]


def module_dims(params: ArrangementParams) -> list[int]:
    return [len(enumerate_basis(params, q)) for q in range(params.rank + 1)]


# -- mapping cone ------------------------------------------------------------

def relabel(M: Matrix, sub: ArrangementParams, params: ArrangementParams) -> Matrix:
    """Rewrite Laurent entries over the variables of ``sub`` in those of ``params``."""
    idx = pair_index(params)
    where = [idx[p] for p in hyperplane_pairs(sub)]

    def move(p: LaurentPoly) -> LaurentPoly:
        terms = {}
        for e, c in p.terms.items():
            f = [0] * params.N
            for k, v in zip(where, e):
                f[k] = v
            terms[tuple(f)] = c
        return LaurentPoly(params.N, terms)

    return M.map(move)


@dataclass
class ConeBlocks:
    """``partial_q`` split along ``C_q = D_{q-1} (+) C^_q``.

    ``D`` collects the summands with ``ell + 1`` in ``J``, reordered so the
    index ``i_1`` (one of ``ell`` copies) is outermost and identified with
    ``ell`` copies of ``C^_{q-1}`` through the suspension sign
    ``(-1)^{q-1}``.  With that identification ``shift`` is minus ``ell``
    copies of the boundary of A(n, ell+1); without it (``suspend=False``)
    the copies appear with a plus sign.
    """

    shift: Matrix    # D_{q-1} -> D_{q-2}
    phi: Matrix      # D_{q-1} -> C^_{q-1}
    zero: Matrix     # C^_q -> D_{q-2}
    hat: Matrix      # C^_q -> C^_{q-1}


def _split(params: ArrangementParams, q: int):
    """Row orders for D (copy-major) and C^ inside ``C_q``."""
    h = params.ell + 1
    D, H = [], []
    for k, b in enumerate(enumerate_basis(params, q)):
        (D if b and b[0][1] == h else H).append((b, k))
    D.sort(key=lambda x: (x[0][0][0], [j for _, j in x[0][1:]], [i for i, _ in x[0][1:]]))
    return [k for _, k in D], [k for _, k in H]


def mapping_cone_blocks(params: ArrangementParams, q: int, suspend: bool = True) -> ConeBlocks:
    M = boundary_laurent(params, q)
    Dr, Hr = _split(params, q)
    Dc, Hc = _split(params, q - 1)
    shift, phi = M.submatrix(Dr, Dc), M.submatrix(Dr, Hc)
    if suspend:
        shift = -shift
        if (q - 1) % 2:
            phi = -phi
    return ConeBlocks(
        shift=shift,
        phi=phi,
        zero=M.submatrix(Hr, Dc),
        hat=M.submatrix(Hr, Hc),
    )


def cone_expected(params: ArrangementParams, q: int) -> tuple[Matrix, Matrix]:
    """The diagonal blocks predicted from A(n, ell+1): ``(shift, hat)``.

    ``shift`` is minus ``ell`` diagonal copies of ``partial^_{q-1}`` (empty
    for q = 1), ``hat`` is ``partial^_q`` (empty when ``q > n - ell - 1``).
    """
    sub = params.next()
    ell = params.ell
    Dr, Hr = _split(params, q)
    Dc, Hc = _split(params, q - 1)
    if sub is None or q == 1:
        shift = Matrix(len(Dr), len(Dc))
    else:
        shift = -block_diag([relabel(boundary_laurent(sub, q - 1), sub, params)] * ell)
    if sub is None or q > sub.rank:
        hat = Matrix(len(Hr), len(Hc))
    else:
        hat = relabel(boundary_laurent(sub, q), sub, params)
    return shift, hat


def verify_mapping_cone(params: ArrangementParams, q: int) -> list[str]:
    """Names of the cone identities that fail in degree q (empty when all hold)."""
    blocks = mapping_cone_blocks(params, q)
    shift, hat = cone_expected(params, q)
    bad = []
    if not blocks.zero.is_zero():
        bad.append("zero")
    if blocks.shift != shift:
        bad.append("shift")
    if blocks.hat != hat:
        bad.append("hat")
    return bad


# -- self-checks -------------------------------------------------------------

@dataclass
class ResolutionCheck:
    params: ArrangementParams
    seed: int
    shapes_ok: bool
    trivial_ok: bool
    failures: list[str]
    samples: int

    @property
    def ok(self) -> bool:
        return self.shapes_ok and self.trivial_ok and not self.failures


def random_rational_point(params: ArrangementParams, rng, heights=(2, 3)) -> tuple:
    """Small-height nonzero rationals; keeps entry growth in check at n = 6."""
    nums = [v for h in range(1, heights[0] + 1) for v in (h, -h)]
    return tuple(mpq(rng.choice(nums), rng.randint(1, heights[1])) for _ in range(params.N))


def verify_resolution(params: ArrangementParams, samples: int = 25, seed: int = 0, cone: bool = True) -> ResolutionCheck:
    """Shapes, vanishing at ``t = 1``, ``partial_{q+1} @ partial_q = 0`` at random
    rational points, and (optionally) the mapping-cone block identities."""
    rng = random.Random(seed)
    dims = module_dims(params)
    failures = []
    ones = boundary_chain(params, [1] * params.N)
    shapes_ok = all(M.shape == (dims[q + 1], dims[q]) for q, M in enumerate(ones))
    trivial_ok = all(M.is_zero() for M in ones)
    for s in range(samples):
        t = random_rational_point(params, rng)
        chain = boundary_chain(params, t)
        for q in range(len(chain) - 1):
            if not (chain[q + 1] @ chain[q]).is_zero():
                failures.append(f"sample {s}: partial_{q + 2} partial_{q + 1} != 0")
    if cone:
        for q in range(1, params.rank + 1):
            for name in verify_mapping_cone(params, q):
                failures.append(f"mapping cone degree {q}: {name} block")
    return ResolutionCheck(params, seed, shapes_ok, trivial_ok, failures, samples)
