import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from logtorelli.errors import UnsupportedInput
from logtorelli.fields import GF
from logtorelli.gradedlinalg import Subspace, subspace_equal
from logtorelli.jacobi import (
    is_smooth,
    jacobi_piece,
    log_derivation_dims,
    partials_independent,
    smoothness_degree,
)
from logtorelli.polyring import HomPoly, coeff_vector, parse_poly, substitute_linear
from test_polyring import P, random_change, random_form

FERMAT = P("x^3 + y^3 + z^3")


def span(*texts, names="xyz"):
    polys = [parse_poly(t, list(names)) for t in texts]
    return Subspace([coeff_vector(g) for g in polys], len(coeff_vector(polys[0])))


def test_jacobi_piece_examples():
    assert jacobi_piece(FERMAT).piece == span("x^2", "y^2", "z^2")
    assert jacobi_piece(P("x^3 + 0*y^3")).dim == 1
    assert jacobi_piece(P("x^2 + y^2 + z^2")).piece == span("x", "y", "z")
    assert P("x^2") in jacobi_piece(FERMAT)
    assert P("x*y") not in jacobi_piece(FERMAT)


def test_partials_independent():
    assert partials_independent(FERMAT)
    assert not partials_independent(P("x^3 + 0*y*z^2"))
    assert partials_independent(parse_poly("x^2*y - y^3", ["x", "y"]))


@pytest.mark.parametrize("text, smooth", [
    ("x^3 + y^3 + z^3", True),
    ("x*y*z", False),
    ("x^3 + y^3 + 0*z^3", False),
    ("y^2*z - x^3 - x*z^2", True),
    ("y^2*z - x^3", False),
    ("x^2 + y^2 + z^2", True),
    ("x^2 + y^2 + 0*z^2", False),
    ("x + 2*y", True),
    ("x^4 + y^4 + z^4 + x*y*z^2", True),
])
def test_is_smooth_examples(text, smooth):
    f = P(text)
    assert is_smooth(f) is smooth
    assert oracles.groebner_smooth(f) is smooth


def test_smoothness_degree():
    assert smoothness_degree(3, 3) == 4
    assert smoothness_degree(4, 5) == 13


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([3, 4]))
def test_is_smooth_against_groebner(seed, k):
    rng = random.Random(seed)
    f = random_form(rng, 3, k, lo=-1, hi=1)
    if f.is_zero():
        return
    assert is_smooth(f) == oracles.groebner_smooth(f)


def test_smooth_implies_partials_independent():
    rng = random.Random(11)
    for _ in range(30):
        f = random_form(rng, 3, 3, lo=-1, hi=1)
        if not f.is_zero() and is_smooth(f):
            assert partials_independent(f)


def test_quadric_shortcut_matches_general_rank():
    from logtorelli.jacobi import _macaulay_full
    rng = random.Random(3)
    for _ in range(20):
        f = random_form(rng, 3, 2, lo=-1, hi=1)
        if not f.is_zero():
            assert is_smooth(f) == _macaulay_full(f)


def test_is_smooth_over_fp():
    F = GF(7)
    assert is_smooth(P("x^3 + y^3 + z^3", field=F))
    assert not is_smooth(P("x*y*z", field=F))


def test_log_derivation_dims_fermat():
    # frozen from the sympy oracle
    assert log_derivation_dims(FERMAT, 5).dims == (0, 0, 3, 9, 17, 27)
    assert oracles.log_derivation_dims(FERMAT, 3) == [0, 0, 3, 9]


def test_log_derivation_rotation_field():
    f = parse_poly("x^2 + y^2", ["x", "y"])
    assert log_derivation_dims(f, 1).dims[1] == 1


@pytest.mark.parametrize("text", ["y^2*z - x^3 - x*z^2", "x*y*z", "x^3 + y^3 + 0*z^3",
                                  "x^4 + y^4 + z^4 + x*y*z^2"])
def test_log_derivation_dims_against_oracle(text):
    f = P(text)
    assert list(log_derivation_dims(f, 3).dims) == oracles.log_derivation_dims(f, 3)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**9))
def test_invariance_under_change(seed):
    rng = random.Random(seed)
    f = random_form(rng, 3, 3, lo=-1, hi=1)
    if f.is_zero():
        return
    A = random_change(rng, 3)
    g = substitute_linear(f, A)
    assert is_smooth(g) == is_smooth(f)
    assert log_derivation_dims(g, 3) == log_derivation_dims(f, 3)
    Jf, Jg = jacobi_piece(f), jacobi_piece(g)
    assert Jf.dim == Jg.dim
    # J(f o A) is the image of J(f) under h -> h o A
    moved = Subspace([coeff_vector(substitute_linear(h, A))
                      for h in (HomPoly(3, 2, dict(zip(_mons(), v))) for v in Jf.piece.basis)],
                     6)
    assert subspace_equal(moved, Jg.piece)


def _mons():
    from logtorelli.polyring import monomials
    return monomials(3, 2)


def test_constant_rejected():
    with pytest.raises((UnsupportedInput, ValueError)):
        is_smooth(HomPoly(3, 0, {(0, 0, 0): 1}))
