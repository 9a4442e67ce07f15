"""Acceptance criteria, one test each.  Every check is exact; each test
prints a PASS/FAIL line that is repeated in the terminal summary."""

import random
import time

import pytest
from gmpy2 import mpq

import conftest
from discarr.cohomology import (
    ScanSpec,
    generic_betti,
    generic_vanishing,
    local_betti,
    resonance_scan,
    sandwich_check,
    tangent_cone_probe,
    verify_linearization,
)
from discarr.combinatorics import ArrangementParams, dims, poincare_coefficients
from discarr.fox import (
    LaurentPoly,
    abelianize,
    apply_entrywise,
    gassner_generator,
    jacobian,
    mul,
    random_word,
    rho_derivative,
    rho_generator_derivative,
)
from discarr.linalg import InvariantError, admissible_primes
from discarr.orlik_solomon import mu_closed_form, mu_naive, os_complex
from discarr.resolution import boundary_chain, verify_resolution
from oracles import fundamental_formula_holds, symmetric_middle_rows


def all_params(max_n, min_n=2):
    return [ArrangementParams(n, ell) for n in range(min_n, max_n + 1) for ell in range(1, n)]


def report(k, name, ok, start, budget=None, detail=""):
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        ok = False
        detail = f"{detail}; over the {budget:.0f}s budget" if detail else f"over the {budget:.0f}s budget"
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {name} [{elapsed:.1f}s]"
    if detail:
        line += f" ({detail})"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def random_weights(P, rng, num=5, den=4):
    return [mpq(rng.randint(-num, num), rng.randint(1, den)) for _ in range(P.N)]


def test_criterion_01_dimension_law():
    start = time.perf_counter()
    bad = [(P.n, P.ell) for P in all_params(7) if dims(P) != poincare_coefficients(P)]
    report(1, "basis counts equal Poincare coefficients for n <= 7", not bad, start, 10, f"failures {bad}" if bad else "27 cases")


def test_criterion_02_complex_laws():
    start = time.perf_counter()
    rng = random.Random(2)
    bad = []
    for P in all_params(6):
        for s in range(50):
            maps = os_complex(P, random_weights(P, rng))
            if any(not (a @ b).is_zero() for a, b in zip(maps, maps[1:])):
                bad.append(f"mu A({P.n},{P.ell}) sample {s}")
    for P in all_params(6):
        rep = verify_resolution(P, samples=25, seed=2, cone=False)
        if not rep.ok:
            bad.append(f"boundary A({P.n},{P.ell}): {rep.failures[:2]}")
    report(2, "mu o mu = 0 (50 weights) and boundary o boundary = 0 (25 points) for n <= 6", not bad, start, 120,
           "; ".join(bad))


def test_criterion_03_closed_form_vs_oracle():
    start = time.perf_counter()
    rng = random.Random(3)
    bad = []
    for P in all_params(5):
        for s in range(20):
            lam = random_weights(P, rng)
            for q in range(P.rank + 1):
                if mu_closed_form(P, q, lam) != mu_naive(P, q, lam):
                    bad.append(f"A({P.n},{P.ell}) q={q} sample {s}")
    report(3, "closed-form mu equals wedge-with-omega mu, n <= 5, 20 weights", not bad, start, None, "; ".join(bad[:5]))


def test_criterion_04_linearization():
    start = time.perf_counter()
    bad = []
    for P in all_params(5):
        rep = verify_linearization(P, sweep=True)
        if not rep.ok:
            bad.append(f"A({P.n},{P.ell}) first mismatch {rep.first_mismatch}")
    report(4, "mu^q = (-1)^q transpose of the boundary derivative, n <= 5, all directions", not bad, start, 300,
           "; ".join(bad))


def test_criterion_05_trivial_system():
    start = time.perf_counter()
    bad = []
    for P in all_params(6):
        if any(not M.is_zero() for M in boundary_chain(P, [1] * P.N)):
            bad.append(f"A({P.n},{P.ell}) boundary at 1")
        if local_betti(P, t=[1] * P.N).betti != dims(P):
            bad.append(f"A({P.n},{P.ell}) betti at 1")
    report(5, "boundary vanishes at t = 1 and local Betti numbers equal dims, n <= 6", not bad, start, None,
           "; ".join(bad))


GENERIC_CASES = all_params(6)


def test_criterion_06_generic_vanishing():
    start = time.perf_counter()
    bad, retried = [], 0
    for P in GENERIC_CASES:
        check = generic_vanishing(P, seed=6, retries=2)
        retried += len(check.attempts) - 1
        if not check.ok:
            bad.append(f"A({P.n},{P.ell}) got {[b for _, b in check.attempts]} expected {check.expected}")
    spot = {(4, 2): 2, (5, 2): 6, (5, 3): 6}
    for (n, ell), top in spot.items():
        if generic_betti(ArrangementParams(n, ell))[-1] != top:
            bad.append(f"top Betti number of A({n},{ell}) is not {top}")
    report(6, "generic rational t concentrates cohomology in the top degree", not bad, start, None,
           "; ".join(bad) or f"{len(GENERIC_CASES)} cases, {retried} retries")


@pytest.mark.xfail(strict=True, reason="the printed middle rows of the Gassner matrix are wrong when s - r >= 2")
def test_criterion_07_gassner():
    start = time.perf_counter()
    P = ArrangementParams(6, 1)
    x = [LaurentPoly.monomial(tuple(int(i == k) for i in range(P.N))) for k in range(P.N)]
    rng = random.Random(7)
    printed_bad, corrected_bad, derivative_bad, total = [], [], [], 0
    for j in range(3, 7):
        for s in range(2, j):
            for r in range(1, s):
                total += 1
                J = abelianize(jacobian(((r, s, 1),), j), P)
                if J != symmetric_middle_rows(P, r, s, j, x):
                    printed_bad.append((r, s, j))
                if J != gassner_generator(P, r, s, j, x):
                    corrected_bad.append((r, s, j))
                for _ in range(3):
                    lam = random_weights(P, rng)
                    if rho_derivative(((r, s, 1),), j, P, lam) != rho_generator_derivative(P, r, s, j, lam):
                        derivative_bad.append((r, s, j))
                        break
    detail = (
        f"printed matrix differs for {len(printed_bad)}/{total} generators, exactly those with s - r >= 2: "
        f"{all(s - r >= 2 for r, s, _ in printed_bad)}; with middle rows (1-t_sj)(1-t_ij), -(1-t_rj)(1-t_ij) "
        f"{total - len(corrected_bad)}/{total} agree; derivative at 1 agrees for {total - len(derivative_bad)}/{total}"
    )
    report(7, "Fox Jacobians of generators equal the printed Gassner matrices, j <= 6",
           not (printed_bad or derivative_bad), start, None, detail)


def test_criterion_08_resonance_and_tangent_cone():
    start = time.perf_counter()
    P = ArrangementParams(3, 1)
    recs = resonance_scan(P, 1, 1, ScanSpec(values=(-2, -1, 0, 1, 2)))
    hits = {r.lam for r in recs if r.member}
    expected = {r.lam for r in recs if sum(r.lam) == 0 and any(r.lam)}
    us = [mpq(2), mpq(3), mpq(5, 2)]
    resonant = tangent_cone_probe(P, 1, 1, [1, 1, -2], us)
    generic = tangent_cone_probe(P, 1, 1, [1, 1, 1], us)
    ok = (
        hits == expected
        and resonant.member
        and all(r.betti_k >= 1 for r in resonant.rows)
        and not generic.member
        and all(r.betti_k == 0 for r in generic.rows)
    )
    detail = (f"{len(hits)} hits of {len(recs)}; H^1 along (1,1,-2): {[r.betti_k for r in resonant.rows]}, "
              f"along (1,1,1): {[r.betti_k for r in generic.rows]}")
    report(8, "grid scan finds the sum-zero plane and the probe agrees", ok, start, 60, detail)


def test_criterion_09_sandwich():
    start = time.perf_counter()
    rng = random.Random(9)
    bad, warnings = [], 0
    for s in range(10):
        P = ArrangementParams(*rng.choice([(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)]))
        m = rng.choice([2, 3])
        lam = [mpq(rng.randint(-2 * m, 2 * m), m) for _ in range(P.N)]
        lam[rng.randrange(P.N)] = mpq(rng.choice([1, -1]), m)
        primes = admissible_primes(m, 3)
        try:
            rep = sandwich_check(P, lam, primes)
        except InvariantError as e:
            bad.append(f"sample {s}: {e}")
            continue
        warnings += rep.warning
        if len(rep.local.consensus.per_prime) < 3:
            bad.append(f"sample {s}: fewer than 3 primes")
    report(9, "H(A, mu) <= H(M; L_t) <= A per degree on 10 cyclotomic weights", not bad, start, None,
           "; ".join(bad) or f"{warnings} consensus warnings")


def test_criterion_10_fox_identities():
    start = time.perf_counter()
    rng = random.Random(10)
    bad = []
    for j in range(2, 7):
        fiber = [(i, j) for i in range(1, j)]
        for s in range(100):
            w = random_word(rng, fiber, rng.randint(0, 12))
            if not fundamental_formula_holds(w, j):
                bad.append(f"fundamental formula j={j} word {w}")
        if j < 3:
            continue
        braids = [(r, t) for t in range(2, j) for r in range(1, t)]
        for s in range(100):
            g = random_word(rng, braids, rng.randint(1, 2))
            b = random_word(rng, braids, rng.randint(1, 2))
            if jacobian(mul(g, b), j) != apply_entrywise(b, jacobian(g, j)) @ jacobian(b, j):
                bad.append(f"chain rule j={j} pair {g} {b}")
    report(10, "fundamental formula (100 words) and Jacobian chain rule (100 pairs) per j <= 6", not bad, start, None,
           "; ".join(bad[:3]))
