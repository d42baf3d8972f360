from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from logtorelli.fields import GF, QQ
from logtorelli.gradedlinalg import (
    Matrix,
    Subspace,
    det,
    inverse,
    kernel,
    member,
    rank,
    rref,
    solve,
    subspace_equal,
)

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices())
def test_rref_is_idempotent(rows):
    R, piv, r = rref(Matrix(rows))
    R2, piv2, r2 = rref(R)
    assert R2 == R and piv2 == piv and r2 == r


@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(Matrix(rows)) == sp.Matrix(rows).rank()


@given(matrices())
def test_rank_of_transpose(rows):
    M = Matrix(rows)
    assert rank(M) == rank(M.T)


@given(matrices())
def test_kernel_vectors_are_killed(rows):
    M = Matrix(rows)
    K = kernel(M)
    assert K.dim == M.ncols - rank(M)
    for v in K.basis:
        assert all(x == 0 for x in M.apply(v))


@given(matrices(), st.integers(0, 10**6))
def test_rank_mod_p_never_exceeds_rational_rank(rows, seed):
    p = 10007
    assert rank(Matrix(rows, GF(p))) <= rank(Matrix(rows))


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_large_rank_prefilter(r, seed):
    # 80 x 70 product of random factors: rank r with overwhelming probability
    rng = np.random.default_rng(seed)
    A = rng.integers(-3, 4, size=(80, r))
    B = rng.integers(-3, 4, size=(r, 70))
    rows = (A @ B).tolist()
    expect = sp.Matrix(rows).rank() if r < 6 else np.linalg.matrix_rank(A @ B)
    assert rank(Matrix(rows)) == expect


def test_rank_deficient_large_matrix_uses_exact_path():
    rows = [[i * j for j in range(80)] for i in range(80)]
    assert rank(Matrix(rows)) == 1


def test_solve_and_inconsistent():
    M = Matrix([[1, 2], [2, 4]])
    assert solve(M, [3, 6]) == (3, 0)
    assert solve(M, [3, 7]) is None


def test_inverse_and_det():
    M = Matrix([[2, 1], [7, 4]])
    assert inverse(M) == Matrix([[4, -1], [-7, 2]])
    assert det(M) == 1
    with pytest.raises(ValueError):
        inverse(Matrix([[1, 2], [2, 4]]))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(rows):
    assert det(Matrix(rows)) == sp.Matrix(rows).det()


def test_subspace_canonical_basis():
    S = Subspace([[1, 1, 0], [0, 1, 1]], 3)
    T = Subspace([[1, 2, 1], [1, 0, -1], [2, 2, 0]], 3)
    assert S == T and subspace_equal(S, T)
    assert member(S, [1, 0, -1])
    assert not member(S, [1, 0, 0])
    assert S.basis == ((1, 0, -1), (0, 1, 1))


def test_subspace_dimension_mismatch():
    with pytest.raises(ValueError):
        member(Subspace([[1, 0]], 2), [1, 0, 0])


def test_fp_matrix():
    F = GF(5)
    M = Matrix([[1, 2], [3, 1]], F)  # det = -5 = 0 mod 5
    assert rank(M) == 1
    assert Matrix([[Fraction(1, 2)]], F)[0, 0] == F(3)
