import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from logtorelli.errors import NotSmoothError, PreconditionError
from logtorelli.fields import GF
from logtorelli.gradedlinalg import Matrix
from logtorelli.jacobi import is_smooth, partials_independent
from logtorelli.polyring import (
    CoordinateChange,
    HomPoly,
    embed_variables,
    monomials,
    parse_poly,
    substitute_linear,
)
from logtorelli.sebastiani import (
    NOT_ST,
    ST,
    NeedsExtension,
    NotST,
    PencilRoot,
    STDecomposition,
    alignment_change,
    extract_decomposition,
    find_singular_member,
    is_st,
    jacobi_transfer_matrix,
    mixed_hessian_vanishes,
    split_completely,
    split_from_pencil_member,
    splitting_coordinates,
    st_space,
    supports_split,
    verify_decomposition,
)
from test_polyring import P, random_change, random_form

FERMAT = P("x^3 + y^3 + z^3")
WEIERSTRASS = P("y^2*z - x^3 - x*z^2")
XY = ["x", "y"]


@pytest.mark.parametrize("text, dim", [
    ("x^3 + y^3 + z^3", 3),
    ("x^2 + y^2 + z^2", 6),
    ("y^2*z - x^3 - x*z^2", 1),
    ("x^3 + x*y^2 + y^3 + z^3", 3),
    ("x^4 + y^4 + z^4 + x*y*z^2", 1),
])
def test_st_space_dims_match_oracle(text, dim):
    f = P(text)
    assert st_space(f).dim == dim
    assert oracles.st_space_dim(f) == dim


def test_st_space_fermat_basis():
    assert [str(g) for g in st_space(FERMAT).members()] == [str(P(t)) for t in ("x^3", "y^3", "z^3")]
    assert FERMAT in st_space(FERMAT)


@pytest.mark.parametrize("text, verdict", [
    ("x^3 + y^3 + z^3", ST),
    ("x^2 + y^2 + z^2", ST),
    ("y^2*z - x^3 - x*z^2", NOT_ST),
    ("x + y + z", ST),
])
def test_is_st_examples(text, verdict):
    assert is_st(P(text)).verdict == verdict


def test_is_st_singular_rejected():
    with pytest.raises(NotSmoothError):
        is_st(P("x*y*z"))


def test_pencil_roots_fermat():
    g = P("x^3 + 2*y^3 + 2*z^3")
    roots = find_singular_member(FERMAT, g)
    assert {r.point for r in roots} == {(1, -1), (1, Fraction(-1, 2))}
    members = {str(r.member(FERMAT, g)) for r in roots}
    assert members == {str(P("-y^3 - z^3")), str(P("1/2*x^3"))}


def test_pencil_roots_binary_quadric():
    roots = find_singular_member(parse_poly("x^2 + y^2", XY), parse_poly("x*y", XY))
    assert {r.point for r in roots} == {(1, 2), (1, -2)}


def test_pencil_roots_point_at_infinity():
    roots = find_singular_member(FERMAT, P("x^3"))
    assert (0, 1) in {r.point for r in roots}


def test_pencil_irrational_roots_deferred():
    f = parse_poly("x^2 + y^2", XY)
    roots = find_singular_member(f, parse_poly("x*y + 1/2*x^2", XY))
    assert all(not r.is_rational for r in roots)
    with pytest.raises(ValueError):
        roots[0].member(f, f)


def test_pencil_dependent_inputs_rejected():
    with pytest.raises(PreconditionError):
        find_singular_member(FERMAT, FERMAT.scale(2))


def test_pencil_over_fp():
    F = GF(101)
    f = P("x^2 + y^2 + z^2", field=F)
    g = P("x*y + z^2", field=F)
    for r in find_singular_member(f, g):
        if r.is_rational:
            assert not partials_independent(r.member(f, g))


def test_splitting_coordinates():
    change, l = splitting_coordinates(P("x^3"))
    assert l == 1
    h = substitute_linear(P("x^3"), change)
    assert h.support_variables() == {2}
    F = P("x^3 + 3*x^2*y + 3*x*y^2 + y^3")  # (x+y)^3
    change, l = splitting_coordinates(F)
    assert l == 1
    h = substitute_linear(F, change)
    assert h.support_variables() == {2}
    with pytest.raises(PreconditionError):
        splitting_coordinates(FERMAT)


def test_transfer_matrix():
    a = jacobi_transfer_matrix(P("z^3"), FERMAT, 1)
    assert a == Matrix([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    a = jacobi_transfer_matrix(P("y^3 + z^3"), FERMAT, 0)
    assert a.submatrix([1, 2], [1, 2]) == Matrix.identity(2)
    with pytest.raises(PreconditionError):
        jacobi_transfer_matrix(P("x*y*z"), FERMAT, 0)


def test_alignment_change_identity_when_split():
    F = P("y^3 + z^3")
    a = jacobi_transfer_matrix(F, FERMAT, 0)
    assert alignment_change(FERMAT, F, a, 0) == CoordinateChange.identity(3)


def test_alignment_change_unshears():
    f = P("2*x^3 + 3*x^2*y + 3*x*y^2 + y^3 + z^3")  # x^3 + (x+y)^3 + z^3
    F = P("x^3 + 3*x^2*y + 3*x*y^2 + y^3 + z^3")
    d = split_from_pencil_member(f, F)
    assert verify_decomposition(f, d)


def test_verify_decomposition_rejects_tampering():
    d = STDecomposition(CoordinateChange.identity(3), 0, P("x^3"), P("y^3 + z^3"))
    assert verify_decomposition(FERMAT, d)
    bad = STDecomposition(CoordinateChange.identity(3), 0, P("x^3 + x*y^2"), P("y^3 + z^3"))
    assert not verify_decomposition(FERMAT, bad)
    with pytest.raises(ValueError):
        CoordinateChange([[1, 0, 0], [0, 1, 0], [0, 0, 0]])


def test_extract_fermat():
    d = extract_decomposition(FERMAT)
    assert isinstance(d, STDecomposition)
    assert verify_decomposition(FERMAT, d)


def test_extract_not_st():
    assert isinstance(extract_decomposition(WEIERSTRASS), NotST)


def test_extract_needs_extension():
    res = extract_decomposition(parse_poly("x^3 + x*y^2 + y^3", XY))
    assert isinstance(res, NeedsExtension) and res.deferred


def test_extract_is_reproducible():
    f = substitute_linear(P("x^4 + y^4 + z^4"), random_change(random.Random(2), 3))
    a = extract_decomposition(f, seed=5)
    b = extract_decomposition(f, seed=5)
    assert a.change == b.change and a.f1 == b.f1


def test_linear_form_splits():
    f = P("x + 2*y - z")
    d = extract_decomposition(f)
    assert verify_decomposition(f, d)


def test_split_completely_fermat_quartic():
    f = parse_poly("x^4 + y^4 + z^4 + w^4", list("xyzw"))
    s = split_completely(substitute_linear(f, random_change(random.Random(8), 4)))
    assert len(s.blocks) == 4 and not any(s.blocked)


def _split_then_shear(rng, n, k):
    l = rng.randint(0, n - 2)
    while True:
        f1 = random_form(rng, l + 1, k)
        f2 = random_form(rng, n - l - 1, k)
        f = embed_variables(f1, range(l + 1), n) + embed_variables(f2, range(l + 1, n), n)
        if is_smooth(f):
            break
    return f, random_change(rng, n)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**9))
def test_split_shear_roundtrip(seed):
    rng = random.Random(seed)
    f, A = _split_then_shear(rng, 3, rng.choice([3, 4]))
    g = substitute_linear(f, A)
    assert is_st(g).is_st
    res = extract_decomposition(g, seed=seed)
    assert isinstance(res, (STDecomposition, NeedsExtension))
    if isinstance(res, STDecomposition):
        assert verify_decomposition(g, res)
        h = substitute_linear(g, res.change)
        assert mixed_hessian_vanishes(h, res.split_l) == supports_split(h, res.split_l) is True


def test_forward_direction_witness():
    f1, f2 = P("x^3 + x*y^2"), P("z^3")
    f = f1 + f2
    assert (f1 + f2.scale(2)) in st_space(f)


# -- exhaustive catalog oracle -------------------------------------------------

def _binary_cubics():
    for coeffs in itertools.product((-1, 0, 1), repeat=4):
        f = HomPoly(2, 3, dict(zip(monomials(2, 3), coeffs)))
        if not f.is_zero() and is_smooth(f):
            yield f


def test_catalog_oracle_binary_cubics():
    checked = 0
    for f in _binary_cubics():
        if oracles.catalog_split(f) is not None:
            assert is_st(f).is_st
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("text", [
    "x^3 + y^3 + z^3",
    "2*x^3 + 3*x^2*y + 3*x*y^2 + y^3 + z^3",
    "x^2*y + z^3 + y^3",
])
def test_catalog_oracle_ternary(text):
    f = P(text)
    assert oracles.catalog_split(f, range(-1, 2)) is not None
    assert is_st(f).is_st


def test_catalog_oracle_finds_nothing_for_weierstrass():
    assert oracles.catalog_split(WEIERSTRASS, range(-1, 2)) is None
    assert not is_st(WEIERSTRASS).is_st


def test_needs_extension_is_certified_by_field_algebra():
    res = extract_decomposition(parse_poly("x^3 + x*y^2 + y^3", XY))
    assert res.certified


def test_idempotents_split_sums_of_irreducible_blocks():
    # both blocks need cube roots to split further; the block split itself is rational
    names = list("xyzw")
    f = parse_poly("x^3 + x*y^2 + y^3 + z^3 + 2*z*w^2 + w^3", names)
    g = substitute_linear(f, random_change(random.Random(12), 4))
    d = extract_decomposition(g)
    assert isinstance(d, STDecomposition) and verify_decomposition(g, d)
    s = split_completely(g)
    assert sorted(len(b) for b in s.blocks) == [2, 2] and all(s.blocked)


def test_idempotents_of_diagonal_matrix():
    from logtorelli.sebastiani import _idempotents
    M = Matrix([[2, 0, 0], [0, 2, 0], [0, 0, 5]])
    idems = _idempotents(M)
    assert sorted(tuple(E[i, i] for i in range(3)) for E in idems) == [(0, 0, 1), (1, 1, 0)]
    for E in idems:
        assert E @ E == E
