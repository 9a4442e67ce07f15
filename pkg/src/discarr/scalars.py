"""Exact scalars: rationals (``gmpy2.mpq``) and prime-field elements."""

from __future__ import annotations

import numbers
from fractions import Fraction

from gmpy2 import is_prime, mpq, mpz

QQ = mpq
RATIONAL_TYPES = (int, Fraction, type(mpq(0)), type(mpz(0)))


def to_rational(v):
    """Coerce ints, Fractions and strings such as ``"-3/2"`` to ``mpq``."""
    if isinstance(v, Fp):
        raise TypeError("prime-field element where a rational was expected")
    if isinstance(v, str):
        return mpq(Fraction(v.strip()))
    if isinstance(v, numbers.Rational):
        return mpq(v)
    raise TypeError(f"not an exact rational: {v!r}")


def format_scalar(v) -> str:
    """Canonical string: ``"-3/2"``, ``"4"``; field elements as their residue."""
    if isinstance(v, Fp):
        return str(v.v)
    return str(mpq(v))


class ParameterError(ValueError):
    """Raised when (n, ell), a degree, a prime or a vector length is out of range."""


class Fp:
    """Element of the prime field F_p.  Ints coerce; other scalar kinds do not."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = int(v) % p

    def _other(self, x) -> int:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise TypeError(f"mixing F_{self.p} and F_{x.p}")
            return x.v
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot combine F_{self.p} element with {type(x).__name__}")

    def __add__(self, x):
        return Fp(self.v + self._other(x), self.p)

    __radd__ = __add__

    def __sub__(self, x):
        return Fp(self.v - self._other(x), self.p)

    def __rsub__(self, x):
        return Fp(self._other(x) - self.v, self.p)

    def __mul__(self, x):
        return Fp(self.v * self._other(x), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def inverse(self) -> "Fp":
        if not self.v:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, x):
        return self * Fp(self._other(x), self.p).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.v, k, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, x):
        try:
            return self.v == self._other(x) % self.p
        except TypeError:
            return False

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"


def check_prime(p: int) -> None:
    if not (isinstance(p, int) and p > 1 and is_prime(p)):
        raise ParameterError(f"{p} is not a prime")
