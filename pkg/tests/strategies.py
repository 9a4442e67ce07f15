from gmpy2 import mpq
from hypothesis import strategies as st

from discarr.combinatorics import ArrangementParams


def params(max_n=5, min_n=2):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.integers(1, n - 1).map(lambda ell: ArrangementParams(n, ell))
    )


def rationals(max_num=6, max_den=4, nonzero=False):
    nums = st.integers(-max_num, max_num)
    if nonzero:
        nums = nums.filter(bool)
    return st.builds(mpq, nums, st.integers(1, max_den))


def vectors(P, **kw):
    return st.lists(rationals(**kw), min_size=P.N, max_size=P.N).map(tuple)


def param_and_vector(max_n=5, **kw):
    return params(max_n).flatmap(lambda P: vectors(P, **kw).map(lambda v: (P, v)))
