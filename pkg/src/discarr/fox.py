"""Free-group words, group rings and Fox calculus for pure braid groups.

A letter is a triple ``(i, j, e)`` standing for ``gamma_{i,j}^e`` with
``e = +1`` or ``-1``; a word is a tuple of letters, always freely reduced.

The braid ``gamma_{r,s}`` acts on the free group ``G_j = <gamma_{1,j}, ...,
gamma_{j-1,j}>`` (for ``s < j``) by ``x -> gamma_{r,s}^{-1} x gamma_{r,s}``,
written explicitly as ``gamma_{i,j} -> z_i gamma_{i,j} z_i^{-1}`` with

    z_i = gamma_{r,j} gamma_{s,j}       if i = r or i = s
    z_i = [gamma_{r,j}, gamma_{s,j}]    if r < i < s
    z_i = 1                             otherwise

and ``[x, y] = x y x^-1 y^-1``.  This is a right action: the automorphism
of a word ``g_1 ... g_k`` applies ``g_1`` first.

Matrices over the group ring act on the right of row vectors, so
``rho_j(gamma beta) = rho_j(gamma) @ rho_j(beta)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .combinatorics import ArrangementParams, Pair, pair_index
from .matrix import Matrix
from .scalars import RATIONAL_TYPES, Fp, to_rational

Letter = tuple[int, int, int]
Word = tuple[Letter, ...]


class DomainError(ValueError):
    """A word or point outside the domain of an operation."""


# -- words -------------------------------------------------------------------

def gen(i: int, j: int, e: int = 1) -> Word:
    return ((i, j, e),)


def reduce_word(letters: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for i, j, e in letters:
        if out and out[-1] == (i, j, -e):
            out.pop()
        else:
            out.append((i, j, e))
    return tuple(out)


def inverse(w: Word) -> Word:
    return tuple((i, j, -e) for i, j, e in reversed(w))


def mul(*words: Word) -> Word:
    return reduce_word(l for w in words for l in w)


def commutator(x: Word, y: Word) -> Word:
    return mul(x, y, inverse(x), inverse(y))


def random_word(rng, letters: list[tuple[int, int]], length: int) -> Word:
    return reduce_word((*rng.choice(letters), rng.choice((1, -1))) for _ in range(length))


# -- group ring --------------------------------------------------------------

class GroupRingElement:
    """Finite combination of reduced words with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, w: Word, coeff=1) -> "GroupRingElement":
        return cls({reduce_word(w): coeff})

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({(): 1})

    @staticmethod
    def _coerce(x) -> "GroupRingElement":
        if isinstance(x, GroupRingElement):
            return x
        if isinstance(x, RATIONAL_TYPES):
            return GroupRingElement({(): x})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupRingElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = mul(u, v)
                terms[w] = terms.get(w, 0) + a * b
        return GroupRingElement(terms)

    def __rmul__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return self * other
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{format_word(w)}" for w, c in sorted(self.terms.items()))

    def augmentation(self):
        return sum(self.terms.values())


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return "".join(f"g{i}{j}" + ("" if e == 1 else "^-1") for i, j, e in w)


# -- Artin action ------------------------------------------------------------

@lru_cache(maxsize=None)
def artin_image(r: int, s: int, i: int, j: int, e: int = 1) -> Word:
    """Image of ``gamma_{i,j}`` under the automorphism of ``gamma_{r,s}^e``."""
    x = ((i, j, 1),)
    if s >= j:
        return x
    a, b = ((r, j, 1),), ((s, j, 1),)
    if e == 1:
        if i in (r, s):
            z = mul(a, b)
        elif r < i < s:
            z = commutator(a, b)
        else:
            return x
        return mul(z, x, inverse(z))
    # inverse automorphism: a -> b^-1 a b, b -> b^-1 a^-1 b a b
    A = mul(inverse(b), a, b)
    B = mul(inverse(b), inverse(a), b, a, b)
    if i == r:
        return A
    if i == s:
        return B
    if r < i < s:
        Z = commutator(A, B)
        return mul(inverse(Z), x, Z)
    return x


def artin_act(g: Pair, target: Pair) -> Word:
    """``gamma_{r,s}`` applied to the generator ``gamma_{i,j}``."""
    return artin_image(g[0], g[1], target[0], target[1], 1)


def _apply_letter(letter: Letter, w: Word) -> Word:
    r, s, e = letter
    out = []
    for i, j, f in w:
        img = artin_image(r, s, i, j, e)
        out.extend(img if f == 1 else inverse(img))
    return reduce_word(out)


def act(braid: Word, x):
    """Apply the automorphism of ``braid`` to a word or group-ring element."""
    if isinstance(x, GroupRingElement):
        terms: dict = {}
        for w, c in x.terms.items():
            v = act(braid, w)
            terms[v] = terms.get(v, 0) + c
        return GroupRingElement(terms)
    w = reduce_word(x)
    for letter in braid:
        w = _apply_letter(letter, w)
    return w


# -- Fox calculus ------------------------------------------------------------

def fox_derivative(w: Word, g: Pair) -> GroupRingElement:
    k, j = g
    terms: dict = {}
    prefix: list[Letter] = []
    for letter in w:
        if letter[1] != j:
            raise DomainError(f"letter {letter} is not in G_{j}")
        if letter[:2] == (k, j):
            if letter[2] == 1:
                key = reduce_word(prefix)
                terms[key] = terms.get(key, 0) + 1
            else:
                key = reduce_word(prefix + [letter])
                terms[key] = terms.get(key, 0) - 1
        prefix.append(letter)
    return GroupRingElement(terms)


def _check_braid(braid: Word, j: int) -> None:
    for r, s, _ in braid:
        if s >= j:
            raise DomainError(f"gamma_{{{r},{s}}} does not act on G_{j}")


def jacobian(braid: Word, j: int) -> Matrix:
    """``(d braid(gamma_{i,j}) / d gamma_{k,j})_{i,k}``, a (j-1) x (j-1) matrix."""
    _check_braid(braid, j)
    M = Matrix(j - 1, j - 1)
    for i in range(1, j):
        img = act(braid, ((i, j, 1),))
        for k in range(1, j):
            M[i - 1, k - 1] = fox_derivative(img, (k, j))
    return M


def apply_entrywise(braid: Word, M: Matrix) -> Matrix:
    """``braid~`` applied to every entry of a group-ring matrix."""
    return M.map(lambda x: act(braid, x))


def gr_identity(n: int) -> Matrix:
    return Matrix.identity(n, GroupRingElement.one())


@lru_cache(maxsize=None)
def rho_letter(letter: Letter, j: int) -> Matrix:
    r, s, e = letter
    if s >= j:
        return gr_identity(j - 1)
    g = GroupRingElement.word((letter,))
    return jacobian((letter,), j).map(lambda x: g * x)


def rho_matrix(braid: Word, j: int) -> Matrix:
    """``rho_j(braid)`` as the ordered product of the letter matrices."""
    M = gr_identity(j - 1)
    for letter in braid:
        M = M @ rho_letter(letter, j)
    return M


def rho_direct(braid: Word, j: int) -> Matrix:
    """``braid * J(braid)`` computed from the Jacobian of the whole word."""
    g = GroupRingElement.word(braid)
    return jacobian(braid, j).map(lambda x: g * x)


def rho_tilde(x, j: int):
    """Replace each group element by its ``rho_j`` matrix.

    A ring element maps to a (j-1) x (j-1) matrix; a matrix maps to the
    block matrix with the original index outer and the new index inner.
    """
    d = j - 1
    if isinstance(x, GroupRingElement):
        out = Matrix(d, d)
        for w, c in x.terms.items():
            out = out + rho_matrix(w, j).scale(c)
        return out
    out = Matrix(x.nrows * d, x.ncols * d)
    for r, c, v in x.items():
        out.place(rho_tilde(v, j), r * d, c * d)
    return out


# -- abelianization ----------------------------------------------------------

_WIDTH = 24
_HALF = 1 << (_WIDTH - 1)
_MASK = (1 << _WIDTH) - 1


def pack_exponent(e) -> int:
    """Encode an exponent vector as one integer; the encoding is additive."""
    key = 0
    for k, v in enumerate(e):
        if v:
            if not -_HALF < v < _HALF:
                raise OverflowError(f"exponent {v} too large")
            key += v << (_WIDTH * k)
    return key


@lru_cache(maxsize=1 << 18)
def unpack_exponent(key: int, nvars: int) -> tuple[int, ...]:
    out = []
    for _ in range(nvars):
        d = key & _MASK
        if d >= _HALF:
            d -= 1 << _WIDTH
        out.append(d)
        key = (key - d) >> _WIDTH
    return tuple(out)


class LaurentPoly:
    """Sparse Laurent polynomial in the torus coordinates (global pair order).

    Monomials are stored under packed integer keys so that multiplying
    monomials is integer addition; ``terms`` gives the exponent tuples.
    """

    __slots__ = ("nvars", "_t")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self._t = {pack_exponent(e): c for e, c in (terms or {}).items() if c}

    @classmethod
    def _packed(cls, nvars: int, packed: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._t = packed
        return p

    @classmethod
    def constant(cls, nvars: int, c) -> "LaurentPoly":
        return cls._packed(nvars, {0: c} if c else {})

    @classmethod
    def monomial(cls, exponent, coeff=1) -> "LaurentPoly":
        exponent = tuple(exponent)
        return cls(len(exponent), {exponent: coeff})

    @property
    def terms(self) -> dict[tuple[int, ...], object]:
        return {unpack_exponent(k, self.nvars): c for k, c in self._t.items()}

    def _coerce(self, x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, RATIONAL_TYPES):
            return LaurentPoly.constant(self.nvars, x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._t)
        for k, c in other._t.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                del terms[k]
        return LaurentPoly._packed(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._packed(self.nvars, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            if not other:
                return LaurentPoly._packed(self.nvars, {})
            return LaurentPoly._packed(self.nvars, {k: c * other for k, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        get = terms.get
        for k1, c1 in self._t.items():
            for k2, c2 in other._t.items():
                k = k1 + k2
                terms[k] = get(k, 0) + c1 * c2
        return LaurentPoly._packed(self.nvars, {k: c for k, c in terms.items() if c})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __repr__(self):
        return f"LaurentPoly({self.terms})"

    def eval_at(self, t):
        return eval_at(self, t)

    def derivative_at_one(self, lam):
        return derivative_at_one(self, lam)


def word_exponent(w: Word, params: ArrangementParams) -> tuple[int, ...]:
    idx = pair_index(params)
    e = [0] * params.N
    for i, j, f in w:
        try:
            e[idx[(i, j)]] += f
        except KeyError:
            raise DomainError(f"gamma_{{{i},{j}}} is not a generator for A({params.n},{params.ell})") from None
    return tuple(e)


def abelianize(x, params: ArrangementParams):
    """Group-ring element (or matrix of them) to Laurent polynomial form."""
    if isinstance(x, Matrix):
        return x.map(lambda v: abelianize(v, params))
    if isinstance(x, RATIONAL_TYPES):
        return LaurentPoly.constant(params.N, x)
    terms: dict = {}
    for w, c in x.terms.items():
        k = pack_exponent(word_exponent(w, params))
        terms[k] = terms.get(k, 0) + c
    return LaurentPoly._packed(params.N, {k: c for k, c in terms.items() if c})


def _check_point(t, nvars: int, what: str) -> None:
    if len(t) != nvars:
        raise DomainError(f"{what} has {len(t)} coordinates, expected {nvars}")


def _exact_point(t) -> list:
    # plain ints would turn into floats under negative powers
    return [v if isinstance(v, Fp) else to_rational(v) for v in t]


def eval_at(p: LaurentPoly, t, _powers: dict | None = None):
    """Substitute the torus point ``t`` (a sequence in the global pair order)."""
    _check_point(t, p.nvars, "torus point")
    if _powers is None:
        if any(not v for v in t):
            raise DomainError("torus coordinates must be invertible")
        t = _exact_point(t)
        _powers = {}
    total = 0
    for key, c in p._t.items():
        term = c
        for idx, k in enumerate(unpack_exponent(key, p.nvars)):
            if k:
                pw = _powers.get((idx, k))
                if pw is None:
                    pw = _powers[(idx, k)] = t[idx] ** k
                term = term * pw
        total = total + term
    return total


def derivative_at_one(p: LaurentPoly, lam):
    """Directional derivative at t = 1 along lambda: sum c_e <e, lambda>."""
    _check_point(lam, p.nvars, "weight vector")
    total = 0
    for key, c in p._t.items():
        s = sum(k * v for k, v in zip(unpack_exponent(key, p.nvars), lam) if k)
        if s:
            total = total + c * s
    return total


def eval_matrix(M: Matrix, t) -> Matrix:
    if any(not v for v in t):
        raise DomainError("torus coordinates must be invertible")
    t = _exact_point(t)
    powers: dict = {}
    return M.map(lambda p: eval_at(p, t, powers))


def derivative_matrix(M: Matrix, lam) -> Matrix:
    return M.map(lambda p: derivative_at_one(p, lam))


def rho_derivative(braid: Word, j: int, params: ArrangementParams, lam) -> Matrix:
    """Derivative at t = 1 of ``t -> rho_j(braid)(t)`` along ``lam``."""
    return derivative_matrix(abelianize(rho_matrix(braid, j), params), lam)


# -- closed forms for a single generator -----------------------------------

def gassner_generator(params: ArrangementParams, r: int, s: int, j: int, t) -> Matrix:
    """Evaluated Fox Jacobian of ``gamma_{r,s}`` acting on ``G_j``, in closed form.

    The middle rows ``r < i < s`` carry ``(1 - t_{s,j})(1 - t_{i,j})`` in
    column r and ``-(1 - t_{r,j})(1 - t_{i,j})`` in column s, which is what
    the fundamental formula forces.
    """
    idx = pair_index(params)
    T = lambda a, b: t[idx[(a, b)]]
    M = Matrix.identity(j - 1, 1)
    tr, ts = T(r, j), T(s, j)
    M[r - 1, r - 1] = 1 - tr + tr * ts
    M[r - 1, s - 1] = tr * (1 - tr)
    M[s - 1, r - 1] = 1 - ts
    M[s - 1, s - 1] = tr
    for i in range(r + 1, s):
        ti = T(i, j)
        M[i - 1, r - 1] = (1 - ts) * (1 - ti)
        M[i - 1, s - 1] = -(1 - tr) * (1 - ti)
    return M


def rho_generator_derivative(params: ArrangementParams, r: int, s: int, j: int, lam) -> Matrix:
    """Closed-form derivative at 1 of ``rho_j(gamma_{r,s})`` along ``lam``."""
    idx = pair_index(params)
    L = lambda a, b: lam[idx[(a, b)]]
    lrs = L(r, s)
    M = Matrix.identity(j - 1, 1).scale(lrs)
    M[r - 1, r - 1] = lrs + L(s, j)
    M[r - 1, s - 1] = -L(r, j)
    M[s - 1, r - 1] = -L(s, j)
    M[s - 1, s - 1] = lrs + L(r, j)
    return M
