"""Betti numbers of the Orlik-Solomon complex and of rank-one local systems.

Also: the entrywise comparison of ``mu(lambda)`` with the derivative of the
resolution's boundary at the trivial point, resonance membership, and the
one-parameter-subgroup probe of cohomology jump loci near ``t = 1``.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Callable, Iterator, Sequence

from gmpy2 import mpq

from .combinatorics import (
    ArrangementParams,
    ParameterError,
    dims as os_dims,
    enumerate_basis,
    hyperplane_pairs,
    weight_vector,
)
from .linalg import (
    ConsensusReport,
    GradedComplexEval,
    InvariantError,
    admissible_primes,
    common_denominator,
    complex_betti,
    cyclotomic_point,
    euler_characteristic,
    multi_prime_betti,
    rank,
)
from .matrix import Matrix
from .orlik_solomon import mu, os_complex
from .resolution import boundary_derivative, cochain_complex
from .scalars import Fp, format_scalar, to_rational

THREADS_ENV = "DISCARR_THREADS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class BettiReport:
    params: ArrangementParams
    dims: list[int]
    betti: list[int]
    provenance: dict = field(default_factory=dict)
    consensus: ConsensusReport | None = None

    def __post_init__(self):
        if euler_characteristic(self.betti) != self.euler:
            raise InvariantError(f"Euler characteristic mismatch: betti {self.betti}, dims {self.dims}")
        if any(not 0 <= b <= d for b, d in zip(self.betti, self.dims)):
            raise InvariantError(f"Betti numbers {self.betti} out of range for dims {self.dims}")

    @property
    def euler(self) -> int:
        return euler_characteristic(self.dims)

    @property
    def warning(self) -> bool:
        return self.consensus is not None and not self.consensus.agree

    def as_dict(self) -> dict:
        prov = dict(self.provenance)
        if self.consensus is not None:
            prov["consensus"] = self.consensus.as_dict()
        return {"dims": self.dims, "betti": self.betti, "euler": self.euler, "provenance": prov}


def expected_euler(params: ArrangementParams) -> int:
    return prod(2 - j for j in range(params.ell + 1, params.n + 1))


def generic_betti(params: ArrangementParams) -> list[int]:
    """Betti numbers at a generic torus point: all in the top degree."""
    return [0] * params.rank + [prod(j - 2 for j in range(params.ell + 1, params.n + 1))]


def _vector_strings(v) -> list[str]:
    return [format_scalar(x) for x in v]


def os_betti(params: ArrangementParams, lam, method: str = "closed") -> BettiReport:
    lam = weight_vector(params, lam)
    cx = GradedComplexEval(os_dims(params), os_complex(params, lam, method))
    return BettiReport(params, cx.dims, complex_betti(cx), {"kind": "orlik-solomon", "lambda": _vector_strings(lam)})


def local_complex(params: ArrangementParams, t) -> GradedComplexEval:
    t = weight_vector(params, t)
    return GradedComplexEval(os_dims(params), cochain_complex(params, t))


def local_betti(params: ArrangementParams, t=None, lam=None, primes: Sequence[int] | None = None) -> BettiReport:
    """Betti numbers of ``H^*(M; L_t)``.

    Pass a torus point ``t`` (rational or prime-field entries), or rational
    weights ``lam``; the latter uses ``t = exp(-2 pi i lam)`` reduced modulo
    several primes ``p = 1 (mod m)`` and reports the consensus.
    """
    if (t is None) == (lam is None):
        raise ParameterError("give exactly one of t or lam")
    if t is not None:
        t = weight_vector(params, t)
        kind = f"mod-{t[0].p}" if isinstance(t[0], Fp) else "rational"
        cx = local_complex(params, t)
        return BettiReport(params, cx.dims, complex_betti(cx), {"kind": kind, "t": _vector_strings(t)})
    lam = weight_vector(params, lam)
    m = common_denominator(lam)
    prov = {"kind": "cyclotomic", "lambda": _vector_strings(lam), "m": m}
    if m == 1:
        cx = local_complex(params, [1] * params.N)
        return BettiReport(params, cx.dims, complex_betti(cx), prov)
    primes = list(primes) if primes else admissible_primes(m)
    gens = {}

    def build(p):
        pt = cyclotomic_point(params, lam, p)
        gens[p] = pt.g
        return local_complex(params, pt.t)

    consensus = multi_prime_betti(build, primes)
    prov["generators"] = {str(p): g for p, g in gens.items()}
    return BettiReport(params, os_dims(params), consensus.estimate, prov, consensus)


# -- linearization -----------------------------------------------------------

@dataclass
class Mismatch:
    degree: int
    row: tuple
    col: tuple
    mu_value: object
    derivative_value: object
    direction: int | None = None
    method: str = ""


@dataclass
class LinearizationReport:
    params: ArrangementParams
    lam: tuple | None
    equal: list[bool]
    first_mismatch: Mismatch | None = None

    @property
    def ok(self) -> bool:
        return all(self.equal)


def linearized_boundary(params: ArrangementParams, q: int, lam, sign: Callable[[int], int] | None = None) -> Matrix:
    """``(-1)^q`` times the transposed derivative of ``partial_{q+1}``; the sign is injectable."""
    s = (-1) ** q if sign is None else sign(q)
    D = boundary_derivative(params, q + 1, lam).T
    return D if s == 1 else -D


def verify_linearization(
    params: ArrangementParams,
    lam=None,
    sweep: bool = False,
    methods: Sequence[str] = ("closed", "naive"),
    sign: Callable[[int], int] | None = None,
) -> LinearizationReport:
    """Entrywise check of ``mu^q(lam) = (-1)^q [(partial_{q+1})_*(lam)]^T`` for every q.

    With ``sweep`` every coordinate direction is checked, which covers all
    weights since both sides are linear in ``lam``.
    """
    if sweep:
        directions = [[1 if i == k else 0 for i in range(params.N)] for k in range(params.N)]
    elif lam is None:
        raise ParameterError("give weights or request the coordinate sweep")
    else:
        directions = [lam]
    equal = [True] * params.rank
    first = None
    for d, v in enumerate(directions):
        v = weight_vector(params, v)
        for q in range(params.rank):
            rhs = linearized_boundary(params, q, v, sign)
            for method in methods:
                diff = mu(params, q, v, method).first_difference(rhs)
                if diff is None:
                    continue
                equal[q] = False
                if first is None or q < first.degree:
                    r, c, a, b = diff
                    first = Mismatch(
                        q,
                        enumerate_basis(params, q)[r],
                        enumerate_basis(params, q + 1)[c],
                        a,
                        b,
                        d if sweep else None,
                        method,
                    )
    return LinearizationReport(params, None if sweep else weight_vector(params, lam), equal, first)


# -- resonance ---------------------------------------------------------------

def _check_km(params: ArrangementParams, k: int, m: int) -> None:
    if not 1 <= k <= params.rank:
        raise ParameterError(f"degree k must be in 1..{params.rank}, got {k}")
    if m < 1:
        raise ParameterError(f"depth m must be >= 1, got {m}")


def resonance_membership(params: ArrangementParams, k: int, m: int, lam) -> bool:
    """``dim H^k(A, mu(lam)) >= m``, via ``rank mu^{k-1} + rank mu^k <= dim A^k - m``."""
    _check_km(params, k, m)
    lam = weight_vector(params, lam)
    r_in = rank(mu(params, k - 1, lam, "closed"))
    r_out = rank(mu(params, k, lam, "closed")) if k < params.rank else 0
    return r_in + r_out <= os_dims(params)[k] - m


@dataclass
class ProbeRow:
    u: object
    t: tuple
    betti_k: int
    hit: bool
    trivial: bool


@dataclass
class ProbeReport:
    params: ArrangementParams
    k: int
    m: int
    lam: tuple
    member: bool
    rows: list[ProbeRow]
    caveat: str = (
        "direction-wise samples at fixed u; agreement at sampled u does not certify generic agreement"
    )

    @property
    def agree(self) -> bool:
        return all(r.hit == self.member for r in self.rows if not r.trivial)


def tangent_cone_probe(params: ArrangementParams, k: int, m: int, lam, us: Sequence) -> ProbeReport:
    """Compare ``lam in R^m_k`` with ``dim H^k(M; L_{t(u)}) >= m`` along ``t(u) = u^lam``."""
    _check_km(params, k, m)
    lam = weight_vector(params, lam)
    if any(v.denominator != 1 for v in lam):
        raise ParameterError("the probe direction must be integral")
    member = resonance_membership(params, k, m, lam)
    rows = []
    for u in us:
        u = to_rational(u)
        if not u:
            raise ParameterError("u = 0 is not a torus point")
        t = tuple(u ** int(v) for v in lam)
        b = local_betti(params, t=t).betti[k]
        rows.append(ProbeRow(u, t, b, b >= m, u == 1))
    return ProbeReport(params, k, m, lam, member, rows)


@dataclass
class ScanSpec:
    """Weights to scan: a grid ``values^N`` or ``count`` random draws from ``values``.

    ``fixed`` pins coordinates (by pair) to restrict to a slice.  The
    origin is skipped unless ``include_origin``.
    """

    kind: str = "grid"
    values: tuple = (-2, -1, 0, 1, 2)
    count: int = 100
    seed: int = 0
    fixed: dict = field(default_factory=dict)
    include_origin: bool = False

    def points(self, params: ArrangementParams) -> Iterator[tuple]:
        free = [p for p in hyperplane_pairs(params) if p not in self.fixed]
        values = [to_rational(v) for v in self.values]

        def complete(choice):
            assign = dict(zip(free, choice))
            assign.update(self.fixed)
            return weight_vector(params, assign)

        if self.kind == "grid":
            for choice in itertools.product(values, repeat=len(free)):
                lam = complete(choice)
                if self.include_origin or any(lam):
                    yield lam
        elif self.kind == "random":
            # ``count`` points are emitted; skipped origins are redrawn
            if not (self.include_origin or any(values) or any(self.fixed.values())):
                raise ParameterError("every sample would be the excluded origin")
            rng = random.Random(self.seed)
            emitted = 0
            while emitted < self.count:
                lam = complete(tuple(rng.choice(values) for _ in free))
                if self.include_origin or any(lam):
                    emitted += 1
                    yield lam
        else:
            raise ParameterError(f"unknown sampler {self.kind!r}")


@dataclass
class ScanRecord:
    index: int
    lam: tuple
    betti: list[int]
    member: bool


@dataclass
class HitGroup:
    members: list[tuple]
    span_dim: int
    combos_tested: int
    combos_hit: int


def _scan_one(args) -> ScanRecord:
    params, k, m, index, lam = args
    report = os_betti(params, lam)
    return ScanRecord(index, lam, report.betti, report.betti[k] >= m)


def resonance_scan(
    params: ArrangementParams, k: int, m: int, spec: ScanSpec | None = None, workers: int | None = None
) -> list[ScanRecord]:
    """Resonance membership of every sampled weight, in sample order."""
    _check_km(params, k, m)
    spec = spec or ScanSpec()
    jobs = [(params, k, m, i, lam) for i, lam in enumerate(spec.points(params))]
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_scan_one(j) for j in jobs]


def group_hits(
    params: ArrangementParams,
    k: int,
    m: int,
    records: Sequence[ScanRecord],
    seed: int = 0,
    trials: int = 3,
    checks: int = 10,
) -> list[HitGroup]:
    """Greedy grouping of hits whose random rational combinations stay resonant.

    Evidence for the linear structure of the resonance variety, not a
    decomposition: a hit joins the first group where ``trials`` sampled
    combinations with the group's first member are again hits.  Each group
    is then probed with ``checks`` convex combinations of two random members.
    """
    rng = random.Random(seed)

    def combine(x, y, a, b):
        return tuple(a * u + b * v for u, v in zip(x, y))

    groups: list[list[tuple]] = []
    for rec in records:
        if not rec.member:
            continue
        for g in groups:
            ok = True
            for _ in range(trials):
                a, b = mpq(rng.randint(1, 9), rng.randint(1, 5)), mpq(rng.randint(-9, 9), rng.randint(1, 5))
                combo = combine(g[0], rec.lam, a, b)
                if any(combo) and not resonance_membership(params, k, m, combo):
                    ok = False
                    break
            if ok:
                g.append(rec.lam)
                break
        else:
            groups.append([rec.lam])
    out = []
    for g in groups:
        tested = hit = 0
        if len(g) > 1:
            for _ in range(checks):
                x, y = rng.sample(g, 2)
                c = mpq(rng.randint(1, 9), 10)
                combo = combine(x, y, c, 1 - c)
                if any(combo):
                    tested += 1
                    hit += resonance_membership(params, k, m, combo)
        out.append(HitGroup(g, rank(Matrix.from_dense([list(v) for v in g])), tested, hit))
    return out


# -- sandwich ----------------------------------------------------------------

@dataclass
class SandwichReport:
    params: ArrangementParams
    lam: tuple
    lower: list[int]
    middle: list[int]
    upper: list[int]
    local: BettiReport

    @property
    def warning(self) -> bool:
        return self.local.warning


def sandwich_check(params: ArrangementParams, lam, primes: Sequence[int] | None = None) -> SandwichReport:
    """``dim H^k(A, mu(lam)) <= dim H^k(M; L_t) <= dim A^k`` with ``t = exp(-2 pi i lam)``.

    A violation raises :class:`InvariantError`: the inequalities are a
    theorem, so a failure means a bug.
    """
    lam = weight_vector(params, lam)
    lower = os_betti(params, lam).betti
    local = local_betti(params, lam=lam, primes=primes)
    upper = os_dims(params)
    for k, (a, b, c) in enumerate(zip(lower, local.betti, upper)):
        if not a <= b <= c:
            raise InvariantError(f"sandwich violated in degree {k}: {a} <= {b} <= {c} fails", k)
    return SandwichReport(params, lam, lower, local.betti, upper, local)


# -- generic points ----------------------------------------------------------

GENERIC_POOL = tuple(mpq(a, b) for a in (-9, -7, -5, -4, -3, 3, 4, 5, 7, 9) for b in (1, 2, 3, 5, 7))


def random_torus_point(params: ArrangementParams, rng: random.Random) -> tuple:
    return tuple(rng.choice(GENERIC_POOL) for _ in range(params.N))


@dataclass
class GenericCheck:
    params: ArrangementParams
    expected: list[int]
    attempts: list[tuple[tuple, list[int]]]

    @property
    def ok(self) -> bool:
        return any(b == self.expected for _, b in self.attempts)


def generic_vanishing(params: ArrangementParams, seed: int = 0, retries: int = 2) -> GenericCheck:
    """Betti numbers at a random rational point; up to ``retries`` fresh points
    are tried before declaring failure."""
    rng = random.Random(seed)
    expected = generic_betti(params)
    attempts = []
    for _ in range(1 + retries):
        t = random_torus_point(params, rng)
        b = local_betti(params, t=t).betti
        attempts.append((t, b))
        if b == expected:
            break
    return GenericCheck(params, expected, attempts)
