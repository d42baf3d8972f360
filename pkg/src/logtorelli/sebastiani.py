"""Sebastiani-Thom detection and constructive splitting.

A form ``f`` is of Sebastiani-Thom (ST) type when some invertible linear
change turns it into ``f1(X_0..X_l) + f2(X_{l+1}..X_n)``.

Detection uses the space ``S(f)`` of forms ``g`` of the same degree whose
partials all lie in the span of the partials of ``f``. ``f`` itself is
always in ``S(f)``; for smooth ``f`` of degree >= 2 the form is ST exactly
when ``dim S(f) >= 2``:

* if ``f = f1 + f2`` then ``f1 + 2*f2`` lies in ``S(f)`` and is independent
  of ``f``;
* conversely a generic member ``g`` of ``S(f)`` independent of ``f`` is
  smooth (smoothness is open and ``f`` is a member), so ``f`` and ``g`` are
  distinct smooth divisors with equal Jacobi ideals, and the pencil argument
  below produces an explicit split.

Extraction runs that pencil argument literally: find a member ``F`` of the
pencil ``lam*f + mu*g`` with dependent partials, move the dependent
directions to the front, express the partials of ``F`` through those of
``f``, shear the front coordinates so the back partials of ``f`` land in
the Jacobi span of ``F``, and read the split off a block-diagonal Hessian.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Optional, Union

import sympy

from . import upoly
from .errors import (
    DegeneratePencil,
    InternalConsistencyError,
    NotSmoothError,
    PreconditionError,
    TransferDegenerate,
)
from .fields import PrimeField
from .jacobi import is_smooth, jacobi_closure, jacobi_piece, partials_independent
from .gradedlinalg import Matrix, Subspace, det, kernel, member, solve
from .polyring import (
    CoordinateChange,
    HomPoly,
    coeff_vector,
    embed_variables,
    format_poly,
    from_coeff_vector,
    graded_dim,
    hessian,
    partial_derivative,
    restrict_variables,
    substitute_linear,
)

__all__ = [
    "STSpace",
    "STResult",
    "PencilRoot",
    "STDecomposition",
    "NeedsExtension",
    "NotST",
    "FullSplit",
    "st_space",
    "is_st",
    "find_singular_member",
    "splitting_coordinates",
    "jacobi_transfer_matrix",
    "alignment_change",
    "split_from_pencil_member",
    "extract_decomposition",
    "verify_decomposition",
    "supports_split",
    "mixed_hessian_vanishes",
    "split_completely",
]

ST = "ST"
NOT_ST = "NOT_ST"


@dataclass(frozen=True)
class STSpace:
    """Forms whose partials lie in the Jacobi span of ``f``."""

    f: HomPoly
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def members(self) -> list[HomPoly]:
        """The canonical (RREF) basis as polynomials."""
        f = self.f
        return [from_coeff_vector(v, f.nvars, f.degree, f.field) for v in self.space.basis]

    def __contains__(self, g: HomPoly) -> bool:
        return member(self.space, coeff_vector(g, self.f.degree))


@dataclass(frozen=True)
class STResult:
    verdict: str
    st_dim: int
    justification: str

    @property
    def is_st(self) -> bool:
        return self.verdict == ST


def _format_univariate(coeffs) -> str:
    """``t^2 - 9*t - 3`` style text for a coefficient list, constant first."""
    out = ""
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        neg = c < 0 if not hasattr(c, "p") else False
        mag = -c if neg else c
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"


@dataclass(frozen=True)
class PencilRoot:
    """A point ``(lam : mu)`` of the pencil where the partials become dependent.

    Rational points are normalized so the first nonzero coordinate is 1.
    Points not defined over the base field are kept together as ``deferred``:
    the square-free polynomial in ``t = mu/lam`` (constant term first) whose
    roots they are.
    """

    point: Optional[tuple] = None
    deferred: Optional[tuple] = None

    @property
    def is_rational(self) -> bool:
        return self.point is not None

    def member(self, f: HomPoly, g: HomPoly) -> HomPoly:
        if self.point is None:
            raise ValueError("deferred roots have no member over the base field")
        lam, mu = self.point
        return f.scale(lam) + g.scale(mu)

    def describe(self) -> str:
        if self.point is not None:
            return f"({self.point[0]}:{self.point[1]})"
        return "roots of " + _format_univariate(self.deferred) + " (t = mu/lam)"


@dataclass(frozen=True)
class STDecomposition:
    """``substitute_linear(f, change) == f1 + f2`` with f1 in X_0..X_l, f2 in the rest."""

    change: CoordinateChange
    split_l: int
    f1: HomPoly
    f2: HomPoly
    trace: dict = dc_field(default_factory=dict, compare=False, hash=False)

    @property
    def blocks(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        n = self.f1.nvars
        return tuple(range(self.split_l + 1)), tuple(range(self.split_l + 1, n))


@dataclass(frozen=True)
class NeedsExtension:
    """ST certified by ``dim S(f) >= 2`` but every split found needs irrational roots.

    ``certified`` is set when the transfer algebra of S(f) is a field, which
    proves that no split exists over the base field at all; otherwise the
    candidate budget ran out.
    """

    st_dim: int
    deferred: tuple[PencilRoot, ...]
    certified: bool = False


@dataclass(frozen=True)
class NotST:
    st_dim: int


ExtractionResult = Union[STDecomposition, NeedsExtension, NotST]


# -- the ST space -----------------------------------------------------------

def st_space(f: HomPoly) -> STSpace:
    if f.degree < 1:
        raise ValueError("need a form of degree >= 1")
    space = jacobi_closure(jacobi_piece(f).piece, f.nvars, f.degree)
    if not member(space, coeff_vector(f)):
        raise InternalConsistencyError("f is missing from its own ST space")
    return STSpace(f, space)


def is_st(f: HomPoly) -> STResult:
    """ST verdict for a smooth form, with the dimension of ``S(f)`` as evidence."""
    if f.degree < 1:
        raise ValueError("need a form of degree >= 1")
    if not is_smooth(f):
        raise NotSmoothError()
    dim = st_space(f).dim
    if f.nvars == 1:
        return STResult(NOT_ST, dim, "a form in one variable has no two variable blocks")
    if f.degree == 1:
        return STResult(ST, dim, "linear forms are always split")
    if dim >= 2:
        return STResult(ST, dim, f"dim S(f) = {dim} >= 2: a generic member independent "
                                 "of f is a second smooth form with the same Jacobi ideal")
    return STResult(NOT_ST, dim, "dim S(f) = 1: only multiples of f share its Jacobi ideal; "
                                 "a split f1 + f2 would contribute f1 + 2*f2")


# -- a pencil member with dependent partials --------------------------------

def _pencil_minor(Ap, Bp, cols, field):
    """det(lam*A' + mu*B') on the given columns, as coefficients of t = mu/lam."""
    m = len(cols)
    ts = list(range(m + 1))
    vals = []
    for t in ts:
        tt = field(t)
        vals.append(det(Matrix([[a[c] + tt * b[c] for c in cols] for a, b in zip(Ap, Bp)],
                               field, m)))
    return upoly.interpolate(ts, vals, field)


def find_singular_member(f: HomPoly, g: HomPoly, seed: int = 0) -> list[PencilRoot]:
    """Points of the pencil ``lam*f + mu*g`` where the partials become dependent.

    These are the common roots of all maximal minors of the matrix of
    partial-derivative coefficient rows. The rows are first expressed in a
    basis of their joint span, which leaves the rank of every member
    unchanged and keeps the number of minors small.
    """
    if f.nvars != g.nvars or f.degree != g.degree or f.field != g.field:
        raise PreconditionError("pencil needs two forms in the same graded piece")
    if f.degree < 1:
        raise PreconditionError("pencil needs forms of degree >= 1")
    field = f.field
    if Subspace([coeff_vector(f), coeff_vector(g)], graded_dim(f.nvars, f.degree),
                field).dim < 2:
        raise PreconditionError("f and g are linearly dependent: no pencil")
    n1 = f.nvars
    if field.characteristic and field.characteristic <= n1:
        raise PreconditionError("field too small to interpolate the pencil minors")
    A = [coeff_vector(partial_derivative(f, i)) for i in range(n1)]
    B = [coeff_vector(partial_derivative(g, i)) for i in range(n1)]
    joint = Subspace(A + B, len(A[0]), field)
    r = joint.dim
    if r < n1:
        raise DegeneratePencil("every member of the pencil has dependent partials")
    Ap = [[a[c] for c in joint.pivots] for a in A]
    Bp = [[b[c] for c in joint.pivots] for b in B]

    common = None
    lam_order = None
    for cols in combinations(range(r), n1):
        u = _pencil_minor(Ap, Bp, cols, field)
        if not u:
            continue
        order = n1 - (len(u) - 1)  # multiplicity of lam as a factor of the binary form
        lam_order = order if lam_order is None else min(lam_order, order)
        common = upoly.monic(u) if common is None else upoly.gcd(common, u)
        if lam_order == 0 and len(common) == 1:
            break
    if common is None:
        raise DegeneratePencil("all maximal minors vanish identically")

    roots: list[PencilRoot] = []
    core = upoly.squarefree_part(common)
    if isinstance(field, PrimeField):
        ts = upoly.roots_mod_p(core, field, seed=seed)
    else:
        ts = upoly.rational_roots(core)
    zero, one = field.zero, field.one
    for t in ts:
        roots.append(PencilRoot(point=(one, field(t))))
        core = upoly.divmod_(core, [-field(t), one])[0]
    if lam_order:
        roots.append(PencilRoot(point=(zero, one)))
    if upoly.degree(core) >= 1:
        roots.append(PencilRoot(deferred=tuple(core)))
    for root in roots:
        if root.is_rational and partials_independent(root.member(f, g)):
            raise InternalConsistencyError(f"pencil point {root.describe()} is not singular")
    return roots


def splitting_coordinates(F: HomPoly) -> tuple[CoordinateChange, int]:
    """Coordinates in which the first ``l+1`` partials of F vanish identically.

    The first columns of the change are a basis of the relations among the
    partials; the basis is completed by standard vectors in index order.
    """
    if F.is_zero():
        raise PreconditionError("F is zero")
    n1 = F.nvars
    field = F.field
    cols = Matrix([coeff_vector(partial_derivative(F, i)) for i in range(n1)], field).T
    rel = kernel(cols)
    if rel.dim == 0:
        raise PreconditionError("partials of F are independent: nothing to split")
    l = rel.dim - 1
    chosen = [list(v) for v in rel.basis]
    for j in range(n1):
        if len(chosen) == n1:
            break
        e = [field.one if i == j else field.zero for i in range(n1)]
        if Subspace(chosen + [e], n1, field).dim > len(chosen):
            chosen.append(e)
    A = Matrix(chosen, field).T
    return CoordinateChange(A), l


# -- express the partials of F through those of f ---------------------------

def _express_partials(F: HomPoly, f: HomPoly) -> Optional[Matrix]:
    """Matrix ``a`` with ``dF/dx_i = sum_j a[i][j] df/dx_j``, or None."""
    n1 = f.nvars
    P = Matrix([coeff_vector(partial_derivative(f, j)) for j in range(n1)], f.field).T
    rows = []
    for i in range(n1):
        a_i = solve(P, coeff_vector(partial_derivative(F, i)))
        if a_i is None:
            return None
        rows.append(a_i)
    return Matrix(rows, f.field, n1)


def jacobi_transfer_matrix(F: HomPoly, f: HomPoly, l: int) -> Matrix:
    """Matrix ``a`` with ``dF/dx_i = sum_j a[i][j] df/dx_j``.

    Raises :class:`TransferDegenerate` when the lower-right block
    ``a[l+1:, l+1:]`` is singular, which smoothness of f rules out.
    """
    n1 = f.nvars
    a = _express_partials(F, f)
    if a is None:
        raise PreconditionError("a partial of F is not in the Jacobi span of f")
    block = a.submatrix(range(l + 1, n1), range(l + 1, n1))
    if not det(block):
        raise TransferDegenerate("lower-right block of the transfer matrix is singular "
                                 "(f must be singular)", a)
    return a


# -- shear the front coordinates -------------------------------------------

def alignment_change(f: HomPoly, F: HomPoly, a: Matrix, l: int) -> CoordinateChange:
    """Change ``x_j = X_j + sum_{i>l} b[i][j] X_i`` (j <= l) aligning f with J(F).

    ``b`` solves ``a[l+1:, l+1:] @ b = a[l+1:, :l+1]``; afterwards every
    ``df/dX_i`` with ``i > l`` lies in the Jacobi span of F. Both
    postconditions are recomputed before returning.
    """
    n1 = f.nvars
    back = range(l + 1, n1)
    A2 = a.submatrix(back, back)
    A1 = a.submatrix(back, range(l + 1))
    b_cols = []
    for j in range(l + 1):
        col = solve(A2, [A1[i, j] for i in range(A1.nrows)])
        if col is None:
            raise PreconditionError("no shear solves the alignment system")
        b_cols.append(col)
    field = f.field
    rows = [[field.one if r == c else field.zero for c in range(n1)] for r in range(n1)]
    for j in range(l + 1):
        for k, i in enumerate(back):
            rows[j][i] = b_cols[j][k]
    change = CoordinateChange(Matrix(rows, field))

    f_new = substitute_linear(f, change)
    F_new = substitute_linear(F, change)
    for i in range(l + 1):
        if not partial_derivative(F_new, i).is_zero():
            raise InternalConsistencyError(f"dF/dX_{i} does not vanish after alignment")
    JF = jacobi_piece(F_new).piece
    for i in back:
        if not member(JF, coeff_vector(partial_derivative(f_new, i))):
            raise InternalConsistencyError(f"df/dX_{i} is not in J(F) after alignment")
    return change


# -- read off the split -----------------------------------------------------

def mixed_hessian_vanishes(h: HomPoly, l: int) -> bool:
    """All ``d2h/dX_i dX_j`` with ``i <= l < j`` are identically zero."""
    if h.degree < 2:
        return True
    H = hessian(h)
    return all(H[i][j].is_zero() for i in range(l + 1) for j in range(l + 1, h.nvars))


def supports_split(h: HomPoly, l: int) -> bool:
    """No monomial of ``h`` involves variables from both blocks."""
    for m, _ in h.items():
        if any(m[: l + 1]) and any(m[l + 1:]):
            return False
    return True


def _split_parts(h: HomPoly, l: int) -> tuple[HomPoly, HomPoly]:
    front, back = {}, {}
    for m, c in h.items():
        if any(m[l + 1:]):
            back[m] = c
        else:
            front[m] = c
    return (HomPoly(h.nvars, h.degree, front, h.field),
            HomPoly(h.nvars, h.degree, back, h.field))


def verify_decomposition(f: HomPoly, d: STDecomposition) -> bool:
    n1 = f.nvars
    l = d.split_l
    if not (0 <= l <= n1 - 2):
        return False
    if d.change.n != n1 or d.f1.nvars != n1 or d.f2.nvars != n1:
        return False
    if d.f1.is_zero() or d.f2.is_zero():
        return False
    if not d.f1.support_variables() <= set(range(l + 1)):
        return False
    if not d.f2.support_variables() <= set(range(l + 1, n1)):
        return False
    h = substitute_linear(f, d.change)
    if h != d.f1 + d.f2:
        return False
    return mixed_hessian_vanishes(h, l)


def split_from_pencil_member(f: HomPoly, F: HomPoly) -> STDecomposition:
    """Run the splitting steps for a pencil member F with dependent partials."""
    S, l = splitting_coordinates(F)
    f_s = substitute_linear(f, S)
    F_s = substitute_linear(F, S)
    a = jacobi_transfer_matrix(F_s, f_s, l)
    C = alignment_change(f_s, F_s, a, l)
    change = S @ C
    h = substitute_linear(f, change)
    hess_ok = mixed_hessian_vanishes(h, l)
    supp_ok = supports_split(h, l)
    if hess_ok != supp_ok:
        raise InternalConsistencyError("Hessian and support criteria disagree")
    if not hess_ok:
        raise InternalConsistencyError("mixed Hessian block does not vanish")
    f1, f2 = _split_parts(h, l)
    d = STDecomposition(change, l, f1, f2, trace={"pencil_member": format_poly(F)})
    if not verify_decomposition(f, d):
        raise InternalConsistencyError("extracted decomposition fails verification")
    return d


def _linear_split(f: HomPoly) -> STDecomposition:
    """A linear form ``c.x`` becomes ``X_0 + X_1``."""
    n1 = f.nvars
    field = f.field
    c = coeff_vector(f)
    # first column v with c.v = 1, then a basis of the hyperplane c.v = 0
    piv = next(i for i, x in enumerate(c) if x)
    v = [field.zero] * n1
    v[piv] = field.one / c[piv]
    hyper = kernel(Matrix([c], field, n1)).basis
    B = Matrix([v] + [list(r) for r in hyper], field).T
    shear = Matrix([[1 if (i == j or (i, j) == (0, 1)) else 0 for j in range(n1)]
                    for i in range(n1)], field)
    change = CoordinateChange(B @ shear)
    h = substitute_linear(f, change)
    f1, f2 = _split_parts(h, 0)
    d = STDecomposition(change, 0, f1, f2, trace={"linear": True})
    if not verify_decomposition(f, d):
        raise InternalConsistencyError("linear split failed verification")
    return d


def _matrix_polynomial(coeffs, M: Matrix) -> Matrix:
    """``sum_i coeffs[i] * M^i`` by Horner's rule."""
    field = M.field
    n = M.nrows
    acc = Matrix.zeros(n, n, field)
    for c in reversed(coeffs):
        acc = acc @ M
        acc = Matrix([[x + (c if i == j else 0) for j, x in enumerate(r)]
                      for i, r in enumerate(acc.rows)], field, n)
    return acc


def _charpoly_factors(M: Matrix):
    field = M.field
    t = sympy.Symbol("t")
    rows = [[sympy.Rational(field.to_int(x)) if field.characteristic
             else sympy.Rational(x.numerator, x.denominator) for x in r] for r in M.rows]
    chi_expr = sympy.Matrix(rows).charpoly(t).as_expr()
    opts = {"modulus": field.characteristic} if field.characteristic else {"domain": "QQ"}
    chi = sympy.Poly(chi_expr, t, **opts)
    return chi, chi.factor_list()[1], opts, t


def _poly_coeffs(e, field) -> list:
    return [field(_to_fraction(c)) for c in reversed(e.all_coeffs())]


def _generates_field(M: Matrix, dim: int) -> bool:
    """Whether K[M] is a field of dimension ``dim``.

    True when the characteristic polynomial is a power of one irreducible
    ``p`` of degree ``dim`` with ``p(M) = 0``.
    """
    _, factors, _, _ = _charpoly_factors(M)
    if len(factors) != 1 or factors[0][0].degree() != dim:
        return False
    P = _matrix_polynomial(_poly_coeffs(factors[0][0], M.field), M)
    return all(not x for r in P.rows for x in r)


def _idempotents(M: Matrix) -> list[Matrix]:
    """Idempotents of K[M], one per irreducible factor of the characteristic polynomial.

    Uses the Chinese remainder theorem: for ``chi = prod p_i^m_i`` the
    element ``e_i`` with ``e_i = 1 mod p_i^m_i`` and ``e_i = 0`` modulo the
    other factors satisfies ``e_i(M)^2 = e_i(M)``.
    """
    field = M.field
    chi, factors, opts, t = _charpoly_factors(M)
    if len(factors) < 2:
        return []
    out = []
    for i, (p_i, m_i) in enumerate(factors):
        local = p_i ** m_i
        rest = sympy.Poly(1, t, **opts)
        for j, (p_j, m_j) in enumerate(factors):
            if j != i:
                rest = rest * p_j ** m_j
        s, _, h = sympy.gcdex(rest, local)
        e = (s * rest).rem(chi).quo_ground(h.LC())
        out.append(_matrix_polynomial(_poly_coeffs(e, field), M))
    return out


def _to_fraction(c):
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


@dataclass(frozen=True)
class _TransferAlgebra:
    """What a generic transfer matrix of S(f) says about rational splits."""

    idempotents: tuple[Matrix, ...]
    is_field: bool


def _transfer_algebra(f: HomPoly, S: STSpace, seed: int) -> _TransferAlgebra:
    """Analyse the algebra of transfer matrices ``M_g`` (``dg = M_g df``) of S(f).

    A split ``f = f1 + f2`` over the base field puts the projection onto
    the f1 block into this algebra as an idempotent. Conversely, if a
    generic element generates a field of dimension ``dim S(f)``, there are
    no idempotents and no split exists without extending the field.
    """
    members = S.members()
    rng = random.Random(seed)
    for _ in range(3):
        g = HomPoly.zero(f.nvars, f.degree, f.field)
        for b in members:
            g = g + b.scale(rng.randint(-9, 9))
        M = _express_partials(g, f)
        if M is None:
            continue
        idems = _idempotents(M)
        if idems:
            return _TransferAlgebra(tuple(idems), False)
        if _generates_field(M, S.dim):
            return _TransferAlgebra((), True)
    return _TransferAlgebra((), False)


def _idempotent_candidates(f: HomPoly, S: STSpace, algebra: _TransferAlgebra):
    """Members ``f + g_E`` where ``g_E`` has an idempotent transfer matrix E.

    For ``f = sum f_i`` the form ``g_E`` is the sum of the pieces selected
    by E, so ``f + g_E`` is smooth and its pencil with f has the rational
    singular point ``t = -1``.
    """
    n1 = f.nvars
    grad = [partial_derivative(f, j) for j in range(n1)]
    inv_k = f.field.one / f.field(f.degree)
    for E in algebra.idempotents:
        gE = HomPoly.zero(n1, f.degree, f.field)
        for j in range(n1):
            row = HomPoly.zero(n1, f.degree - 1, f.field)
            for l in range(n1):
                if E[j, l]:
                    row = row + grad[l].scale(E[j, l])
            gE = gE + HomPoly.variable(j, n1, f.field) * row
        cand = f + gE.scale(inv_k)
        if cand in S:
            yield cand


def _candidates(f: HomPoly, S: STSpace, algebra: _TransferAlgebra, attempts: int, seed: int):
    """Members of S(f) independent of f: basis vectors, small shifts, then random."""
    basis = [b for b in S.members()
             if Subspace([coeff_vector(f), coeff_vector(b)], len(coeff_vector(f)),
                         f.field).dim == 2]
    for b in basis:
        yield b
    yield from _idempotent_candidates(f, S, algebra)
    for c in (1, -1, 2, -2, 3, -3):
        for b in basis:
            yield f + b.scale(c)
    members = S.members()
    rng = random.Random(seed)
    for _ in range(attempts):
        g = f.scale(rng.randint(1, 3))
        for b in members:
            g = g + b.scale(rng.randint(-5, 5))
        if Subspace([coeff_vector(f), coeff_vector(g)], len(coeff_vector(f)),
                    f.field).dim == 2:
            yield g


def extract_decomposition(f: HomPoly, attempts: int = 32, seed: int = 0) -> ExtractionResult:
    """Split a smooth form, report it is not ST, or report the split needs roots
    outside the base field.

    ``attempts`` bounds the randomized candidates tried after the
    deterministic ones; ``seed`` makes them reproducible.
    """
    if f.degree < 1:
        raise ValueError("need a form of degree >= 1")
    if not is_smooth(f):
        raise NotSmoothError()
    S = st_space(f)
    if f.degree == 1:
        if f.nvars < 2:
            return NotST(S.dim)
        return _linear_split(f)
    if S.dim < 2:
        return NotST(S.dim)

    algebra = _transfer_algebra(f, S, seed)
    deferred: list[PencilRoot] = []
    tried = 0
    for g in _candidates(f, S, algebra, attempts, seed):
        if algebra.is_field and deferred:
            # no idempotents: no pencil has a rational singular member
            break
        tried += 1
        if not is_smooth(g) or not partials_independent(g):
            continue
        try:
            roots = find_singular_member(f, g, seed=seed)
        except PreconditionError:
            continue
        for root in roots:
            if not root.is_rational:
                if root not in deferred:
                    deferred.append(root)
                continue
            F = root.member(f, g)
            try:
                d = split_from_pencil_member(f, F)
            except PreconditionError:
                continue
            d.trace.update({"partner": format_poly(g), "pencil_point": root.describe(),
                            "candidates_tried": tried, "st_dim": S.dim})
            return d
    if deferred:
        return NeedsExtension(S.dim, tuple(deferred), algebra.is_field)
    raise InternalConsistencyError(
        f"dim S(f) = {S.dim} but no candidate pencil produced a split")


# -- recursive splitting ----------------------------------------------------

@dataclass(frozen=True)
class FullSplit:
    """``f`` after ``change`` is the sum of ``parts``, each in its own variable block."""

    change: CoordinateChange
    blocks: tuple[tuple[int, ...], ...]
    parts: tuple[HomPoly, ...]
    blocked: tuple[bool, ...]  # True where a part is ST but needs a field extension


def _block_diag(changes: list[CoordinateChange], field) -> CoordinateChange:
    n = sum(c.n for c in changes)
    rows = [[field.zero] * n for _ in range(n)]
    off = 0
    for c in changes:
        for i in range(c.n):
            for j in range(c.n):
                rows[off + i][off + j] = c.matrix[i, j]
        off += c.n
    return CoordinateChange(Matrix(rows, field))


def split_completely(f: HomPoly, attempts: int = 32, seed: int = 0) -> FullSplit:
    """Split repeatedly until no block is ST over the base field."""
    n1 = f.nvars
    res = extract_decomposition(f, attempts, seed) if n1 >= 2 else NotST(1)
    if not isinstance(res, STDecomposition):
        return FullSplit(CoordinateChange.identity(n1, f.field), (tuple(range(n1)),), (f,),
                         (isinstance(res, NeedsExtension),))
    front, back = res.blocks
    sub = []
    for block, part in ((front, res.f1), (back, res.f2)):
        sub.append(split_completely(restrict_variables(part, block), attempts, seed))
    change = res.change @ _block_diag([s.change for s in sub], f.field)
    blocks, parts, blocked = [], [], []
    off = 0
    for s in sub:
        span = tuple(off + i for i in range(s.change.n))
        for b, p, x in zip(s.blocks, s.parts, s.blocked):
            blocks.append(tuple(off + i for i in b))
            parts.append(embed_variables(p, span, n1))
            blocked.append(x)
        off += s.change.n
    total = substitute_linear(f, change)
    if total != sum(parts[1:], parts[0]):
        raise InternalConsistencyError("recursive split does not reassemble f")
    return FullSplit(change, tuple(blocks), tuple(parts), tuple(blocked))
