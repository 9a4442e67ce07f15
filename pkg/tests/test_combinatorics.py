import itertools
from math import comb

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from discarr.combinatorics import (
    AdmissibleSet,
    ArrangementParams,
    ParameterError,
    admissible_sets,
    dims,
    enumerate_basis,
    hyperplane_pairs,
    index_sets,
    is_admissible,
    module_rank,
    pair_index,
    poincare_coefficients,
    restrict_vector,
    weight_vector,
)
from strategies import params


def test_pair_order_example():
    assert hyperplane_pairs(ArrangementParams(4, 2)) == ((1, 3), (2, 3), (1, 4), (2, 4), (3, 4))


@pytest.mark.parametrize("n,ell", [(1, 1), (3, 0), (3, 3), (2, 2)])
def test_bad_parameters(n, ell):
    with pytest.raises(ParameterError):
        ArrangementParams(n, ell)


@given(params(7))
def test_N_counts_pairs(P):
    assert P.N == comb(P.n, 2) - comb(P.ell, 2) == len(hyperplane_pairs(P))
    assert [pair_index(P)[p] for p in hyperplane_pairs(P)] == list(range(P.N))


def test_small_bases():
    assert enumerate_basis(ArrangementParams(3, 1), 1) == (((1, 2),), ((1, 3),), ((2, 3),))
    assert enumerate_basis(ArrangementParams(3, 1), 2) == (((1, 2), (1, 3)), ((1, 2), (2, 3)))
    assert enumerate_basis(ArrangementParams(3, 1), 3) == ()
    assert enumerate_basis(ArrangementParams(3, 2), 0) == ((),)


def test_dims_examples():
    assert dims(ArrangementParams(4, 1)) == [1, 6, 11, 6]
    assert dims(ArrangementParams(3, 1)) == [1, 3, 2]
    assert dims(ArrangementParams(5, 2)) == poincare_coefficients(ArrangementParams(5, 2))


@given(params(7))
def test_dims_match_poincare(P):
    assert dims(P) == poincare_coefficients(P)


@given(params(6))
def test_basis_sorted_and_nbc(P):
    for q in range(P.rank + 1):
        B = enumerate_basis(P, q)
        keys = [(tuple(j for _, j in b), tuple(i for i, _ in b)) for b in B]
        assert keys == sorted(keys)
        assert len(set(B)) == len(B)
        for b in B:
            assert all(1 <= i < j and j > P.ell for i, j in b)
            assert all(b[k][1] < b[k + 1][1] for k in range(len(b) - 1))


@given(params(6))
def test_summand_ranks(P):
    for q in range(P.rank + 1):
        assert sum(module_rank(J) for J in index_sets(P, q)) == len(enumerate_basis(P, q))


def _admissible_by_definition(I, J, m, ell):
    """Every position set and value assignment, filtered by the direct check."""
    q = len(J)
    found = set()
    for size in range(1, q + 1):
        for pos in itertools.combinations(range(1, q + 1), size):
            for vals in itertools.product(*(range(1, J[s - 1]) for s in pos)):
                K = AdmissibleSet(pos, vals)
                if is_admissible(I, J, m, ell, K):
                    found.add(K)
    return found


@given(st.data())
def test_admissible_search_complete(data):
    P = data.draw(params(6))
    q = data.draw(st.integers(1, P.rank))
    J = data.draw(st.sampled_from(index_sets(P, q)))
    I = tuple(data.draw(st.integers(1, j - 1)) for j in J)
    m = data.draw(st.integers(1, P.ell))
    found = admissible_sets(I, J, m, P.ell)
    assert set(found) == _admissible_by_definition(I, J, m, P.ell)
    assert all(K.positions[-1] == q for K in found)


def test_admissible_example():
    # one slot: {k_1, i_1} must equal {m, ell + 1} = {1, 2}
    assert admissible_sets((2,), (3,), 1, 1) == (AdmissibleSet((1,), (1,)),)
    assert admissible_sets((1,), (3,), 1, 1) == (AdmissibleSet((1,), (2,)),)
    assert admissible_sets((3,), (4,), 1, 1) == ()


def test_admissible_needs_valid_m():
    with pytest.raises(ParameterError):
        admissible_sets((1,), (3,), 2, 1)


def test_weight_vector_coercion():
    P = ArrangementParams(3, 1)
    v = weight_vector(P, [1, "-3/2", mpq(2, 3)])
    assert v == (1, mpq(-3, 2), mpq(2, 3))
    assert weight_vector(P, {(1, 3): 5}) == (0, 5, 0)
    with pytest.raises(ParameterError, match="N=3"):
        weight_vector(P, [1, 2])
    with pytest.raises(ParameterError):
        weight_vector(P, {(1, 4): 1})


def test_restrict_vector():
    P, sub = ArrangementParams(4, 1), ArrangementParams(4, 2)
    v = list(range(P.N))
    assert restrict_vector(P, sub, v) == tuple(pair_index(P)[p] for p in hyperplane_pairs(sub))
