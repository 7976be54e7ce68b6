from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dglie.linalg import Echelon, Q, Solver, Subspace, kernel, rank, solve, vadd, vclean


def dense_rank(rows):
    """Oracle: plain Fraction Gaussian elimination on a dense matrix."""
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def as_vectors(rows):
    return [{j: Fraction(x) for j, x in enumerate(r) if x} for r in rows]


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=6))


def test_q_parses_rationals():
    assert Q("3/4") == Fraction(3, 4)
    assert Q(-2) == Fraction(-2)
    with pytest.raises((TypeError, ValueError)):
        Q(0.5)


def test_vector_helpers():
    assert vadd({1: 1}, {1: -1, 2: 3}) == {2: 3}
    assert vclean({1: 0, 2: Fraction(1, 2)}) == {2: Fraction(1, 2)}


def test_rank_small_cases():
    assert rank([]) == 0
    assert rank([{0: 1}, {0: 2}]) == 1
    assert rank([{0: 1, 1: 1}, {0: 1, 1: -1}, {0: 1}]) == 2


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_dense_oracle(rows):
    assert rank(as_vectors(rows)) == dense_rank(rows)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_vectors_are_in_kernel_and_have_right_count(rows):
    cols = as_vectors(rows)
    ker = kernel(cols)
    assert len(ker) == len(cols) - dense_rank(rows)
    for v in ker:
        total = {}
        for i, c in v.items():
            total = vadd(total, cols[i], c)
        assert not total


@settings(max_examples=60, deadline=None)
@given(matrices, st.lists(st.integers(-2, 2), min_size=6, max_size=6))
def test_solve_reconstructs_combinations(rows, coeffs):
    cols = as_vectors(rows)
    target = {}
    for c, col in zip(coeffs, cols):
        target = vadd(target, col, c)
    x = solve(cols, target)
    assert x is not None
    back = {}
    for i, c in x.items():
        back = vadd(back, cols[i], c)
    assert back == target
    solver = Solver(cols)
    assert solver(target) is not None


def test_solve_reports_unreachable_target():
    assert solve([{0: 1}], {1: 1}) is None


def test_echelon_and_subspace_agree_on_membership():
    vecs = [{0: 2, 1: 4}, {1: 1, 2: 1}]
    e, s = Echelon(), Subspace(vecs)
    for v in vecs:
        e.add(v)
    assert e.contains({0: 1, 1: 3, 2: 1})
    assert not s.remainder({0: 1, 1: 3, 2: 1})
    assert s.remainder({2: 1})


def test_subspace_remainder_is_linear():
    s = Subspace([{0: 1, 1: 1}])
    a, b = {0: 3, 2: 1}, {1: 5, 2: -2}
    lhs = s.remainder(vadd(a, b, 7))
    rhs = vadd(s.remainder(a), s.remainder(b), 7)
    assert lhs == rhs
