"""Torelli verdicts, the Jacobi jump criterion and reconstruction from J(f).

A smooth hypersurface ``V(f)`` is Torelli exactly when ``f`` is not of
Sebastiani-Thom type. The sheaf of logarithmic vector fields is only seen
here through finite-dimensional shadows:

* the jump indicator of a degree ``k-1`` divisor ``E = V(g)`` is the
  dimension of ``{c : sum c_i df/dx_i in K*g}``, positive exactly when
  ``g`` lies in the Jacobi piece of ``f``;
* the isomorphism class along a split pencil ``mu*f1 + nu*f2`` is probed by
  the Hilbert function of the module of derivations killing the member.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence, Union

from .errors import InternalConsistencyError, PreconditionError
from .jacobi import (
    JacobiPiece,
    is_smooth,
    jacobi_closure,
    jacobi_piece,
    log_derivation_dims,
)
from .gradedlinalg import Matrix, Subspace, kernel, member
from .polyring import HomPoly, coeff_vector, format_poly, from_coeff_vector, partial_derivative
from .sebastiani import (
    NeedsExtension,
    STDecomposition,
    extract_decomposition,
    is_st,
)

__all__ = [
    "Status",
    "TorelliVerdict",
    "JumpReport",
    "JacobiFamily",
    "PencilInvariance",
    "torelli_verdict",
    "jacobi_jump_indicator",
    "jump_locus_filter",
    "divisors_with_jacobi_piece",
    "pencil_hilbert_invariance",
    "describe_family",
]


class Status(str, enum.Enum):
    TORELLI = "TORELLI"
    NOT_TORELLI = "NOT_TORELLI"
    UNSUPPORTED = "UNSUPPORTED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TorelliVerdict:
    status: Status
    witness: Optional[Union[STDecomposition, NeedsExtension]] = None
    # (f1, f2) in split coordinates: every mu*f1 + nu*f2 with mu*nu != 0 has
    # an isomorphic sheaf of logarithmic vector fields
    family: Optional[tuple[HomPoly, HomPoly]] = None
    justification: dict = dc_field(default_factory=dict)


def torelli_verdict(f: HomPoly, attempts: int = 32, seed: int = 0) -> TorelliVerdict:
    if f.degree < 1:
        return TorelliVerdict(Status.UNSUPPORTED,
                              justification={"reason": "constant polynomial"})
    if not is_smooth(f):
        return TorelliVerdict(Status.UNSUPPORTED, justification={
            "smooth": False,
            "reason": "singular divisor: Theorem applies to smooth divisors only"})
    st = is_st(f)
    just = {"smooth": True, "st_dim": st.st_dim, "st_verdict": st.verdict,
            "st_reason": st.justification}
    if not st.is_st:
        return TorelliVerdict(Status.TORELLI, justification=just)
    res = extract_decomposition(f, attempts=attempts, seed=seed)
    if isinstance(res, STDecomposition):
        just["decomposition"] = "verified"
        return TorelliVerdict(Status.NOT_TORELLI, res, (res.f1, res.f2), just)
    if isinstance(res, NeedsExtension):
        just["decomposition"] = "needs field extension"
        return TorelliVerdict(Status.NOT_TORELLI, res, None, just)
    raise InternalConsistencyError("ST verdict without a split or an extension certificate")


# -- jumps -------------------------------------------------------------------

@dataclass(frozen=True)
class JumpReport:
    g: Optional[HomPoly]
    indicator_dim: int
    jumped: bool
    error: Optional[str] = None


def jacobi_jump_indicator(f: HomPoly, g: HomPoly, check_smooth: bool = True) -> JumpReport:
    """Dimension of ``{c in K^{n+1} : sum c_i df/dx_i in K*g}``.

    For smooth f the partials are independent, so the value is 1 when g lies
    in the Jacobi piece of f and 0 otherwise.
    """
    if g.nvars != f.nvars or g.field != f.field:
        raise ValueError("f and g live in different rings")
    if g.degree != f.degree - 1:
        raise ValueError(f"g must have degree {f.degree - 1}, got {g.degree}")
    if g.is_zero():
        raise ValueError("g must be nonzero")
    if check_smooth and not is_smooth(f):
        raise PreconditionError("jump indicator needs a smooth f")
    # unknowns (c_0, ..., c_n, t): sum c_i df/dx_i - t*g = 0
    cols = [coeff_vector(partial_derivative(f, i)) for i in range(f.nvars)]
    cols.append(tuple(-x for x in coeff_vector(g)))
    dim = kernel(Matrix(cols, f.field).T).dim
    return JumpReport(g, dim, dim > 0)


def jump_locus_filter(f: HomPoly, candidates: Iterable[HomPoly]) -> list[JumpReport]:
    """Jump reports in input order; bad candidates get a report with ``error`` set."""
    if not is_smooth(f):
        raise PreconditionError("jump locus needs a smooth f")
    out = []
    for g in candidates:
        try:
            out.append(jacobi_jump_indicator(f, g, check_smooth=False))
        except ValueError as exc:
            out.append(JumpReport(g, 0, False, str(exc)))
    return out


# -- reconstruction ----------------------------------------------------------

@dataclass(frozen=True)
class JacobiFamily:
    """All forms of degree k whose partials lie in J.

    The smooth members whose Jacobi piece is exactly J are the divisors with
    Jacobi ideal J; ``is_full_member`` decides that for a given form and
    ``basis_full`` records it for each RREF basis vector.
    """

    J: Subspace
    nvars: int
    k: int
    space: Subspace
    basis_full: tuple[bool, ...]

    @property
    def dim(self) -> int:
        return self.space.dim

    def members(self) -> list[HomPoly]:
        return [from_coeff_vector(v, self.nvars, self.k, self.space.field)
                for v in self.space.basis]

    def __contains__(self, g: HomPoly) -> bool:
        return member(self.space, coeff_vector(g, self.k))

    def is_full_member(self, g: HomPoly) -> bool:
        if g not in self or g.is_zero():
            return False
        return is_smooth(g) and jacobi_piece(g).piece == self.J


def divisors_with_jacobi_piece(J: Union[JacobiPiece, Subspace], k: Optional[int] = None,
                               nvars: Optional[int] = None) -> JacobiFamily:
    if isinstance(J, JacobiPiece):
        k = J.k if k is None else k
        nvars = J.nvars if nvars is None else nvars
        J = J.piece
    if k is None or nvars is None:
        raise ValueError("a bare subspace needs k and nvars")
    space = jacobi_closure(J, nvars, k)
    fam = JacobiFamily(J, nvars, k, space, ())
    full = tuple(fam.is_full_member(g) for g in fam.members())
    return JacobiFamily(J, nvars, k, space, full)


# -- pencil invariance -------------------------------------------------------

@dataclass(frozen=True)
class PencilInvariance:
    invariant: bool
    tables: tuple[tuple[tuple, tuple[int, ...]], ...]


def pencil_hilbert_invariance(f1: HomPoly, f2: HomPoly, samples: Sequence[tuple],
                              d_max: int) -> PencilInvariance:
    """Hilbert functions of ``mu*f1 + nu*f2`` over the samples, and whether they agree."""
    if f1.nvars != f2.nvars or f1.degree != f2.degree or f1.field != f2.field:
        raise PreconditionError("f1 and f2 must lie in the same graded piece")
    if f1.support_variables() & f2.support_variables():
        raise PreconditionError("f1 and f2 share variables")
    tables = []
    for mu, nu in samples:
        mu, nu = f1.field(mu), f1.field(nu)
        if not mu or not nu:
            raise ValueError(f"sample ({mu}, {nu}) has a zero coordinate")
        h = f1.scale(mu) + f2.scale(nu)
        tables.append(((mu, nu), log_derivation_dims(h, d_max).dims))
    first = tables[0][1] if tables else None
    return PencilInvariance(all(t == first for _, t in tables), tuple(tables))


def describe_family(verdict: TorelliVerdict, var_names=None) -> Optional[str]:
    if verdict.family is None:
        return None
    f1, f2 = verdict.family
    return f"mu*({format_poly(f1, var_names)}) + nu*({format_poly(f2, var_names)})"
