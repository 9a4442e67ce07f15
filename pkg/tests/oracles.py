"""Independent reference computations shared by several test files."""

from discarr.combinatorics import pair_index
from discarr.fox import GroupRingElement, fox_derivative, gassner_generator, gen


def fundamental_formula_holds(w, j):
    """sum_k (dw/dx_k)(x_k - 1) = w - 1 in Z[G_j]."""
    total = GroupRingElement()
    for k in range(1, j):
        total = total + fox_derivative(w, (k, j)) * (GroupRingElement.word(gen(k, j)) - 1)
    return total == GroupRingElement.word(w) - 1


def symmetric_middle_rows(P, r, s, j, t):
    """Gassner matrix with (1 - t_{i,j})(1 - t_{r,j}) in column r and its negative
    in column s for every middle row r < i < s."""
    idx = pair_index(P)
    M = gassner_generator(P, r, s, j, t)
    for i in range(r + 1, s):
        u = (1 - t[idx[(i, j)]]) * (1 - t[idx[(r, j)]])
        M[i - 1, r - 1] = u
        M[i - 1, s - 1] = -u
    return M
