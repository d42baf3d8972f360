"""Jacobi-ideal computations in a single graded degree.

Everything here reduces to ranks and kernels of coefficient matrices whose
rows are products ``monomial * df/dx_i`` written in the monomial basis of
some graded piece. Ranks do not change under field extension, so answers
computed over QQ hold over the complex numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fields import Field
from .gradedlinalg import Matrix, Subspace, det, kernel, rank
from .polyring import (
    HomPoly,
    coeff_vector,
    graded_dim,
    monomial_index,
    monomials,
    partial_derivative,
)

__all__ = [
    "JacobiPiece",
    "HilbertFunction",
    "jacobi_piece",
    "partials_independent",
    "is_smooth",
    "smoothness_degree",
    "log_derivation_dims",
    "jacobi_closure",
]


@dataclass(frozen=True)
class JacobiPiece:
    """Span of the first partials of a degree-``k`` form inside ``A_{k-1}``."""

    nvars: int
    k: int
    piece: Subspace

    @property
    def field(self) -> Field:
        return self.piece.field

    @property
    def dim(self) -> int:
        return self.piece.dim

    def __contains__(self, g: HomPoly) -> bool:
        if g.nvars != self.nvars or g.degree != self.k - 1:
            raise ValueError("candidate is not in the degree k-1 piece")
        return coeff_vector(g) in self.piece


@dataclass(frozen=True)
class HilbertFunction:
    """Dimensions of the degree pieces of the module of derivations killing f."""

    dims: tuple[int, ...]

    def __getitem__(self, d: int) -> int:
        return self.dims[d]

    def __len__(self):
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)


@lru_cache(maxsize=256)
def jacobi_piece(f: HomPoly) -> JacobiPiece:
    if f.degree < 1:
        raise ValueError("Jacobi piece needs degree >= 1")
    vectors = [coeff_vector(partial_derivative(f, i)) for i in range(f.nvars)]
    return JacobiPiece(f.nvars, f.degree,
                       Subspace(vectors, graded_dim(f.nvars, f.degree - 1), f.field))


def partials_independent(f: HomPoly) -> bool:
    return jacobi_piece(f).dim == f.nvars


def smoothness_degree(nvars: int, k: int) -> int:
    """First degree in which the partials of a smooth form fill the whole piece."""
    return nvars * (k - 2) + 1


def _multiples_rows(polys, target_degree: int):
    """Coefficient rows of ``u * p`` for every p and every monomial u of the right degree."""
    rows = []
    for p in polys:
        nvars = p.nvars
        idx = monomial_index(nvars, target_degree)
        zero = p.field.zero
        mult = monomials(nvars, target_degree - p.degree)
        for u in mult:
            row = [zero] * len(idx)
            for m, c in p.items():
                row[idx[tuple(a + b for a, b in zip(u, m))]] = c
            rows.append(row)
    return rows


def _quadric_matrix(f: HomPoly) -> Matrix:
    n = f.nvars
    half = f.field(1) / f.field(2)
    rows = [[f.field.zero] * n for _ in range(n)]
    for m, c in f.items():
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            rows[nz[0]][nz[0]] = c
        else:
            i, j = nz
            rows[i][j] = rows[j][i] = c * half
    return Matrix(rows, f.field, n)


@lru_cache(maxsize=512)
def is_smooth(f: HomPoly) -> bool:
    """Whether ``V(f)`` has no singular point over the algebraic closure.

    The partials have no common projective zero exactly when their multiples
    span all of ``A_D`` for ``D = (n+1)(k-2)+1``; that degree is one past the
    socle degree of the Artinian quotient by a regular sequence of n+1 forms
    of degree k-1.
    """
    k = f.degree
    if k == 0:
        raise ValueError("a constant does not define a hypersurface")
    if f.is_zero():
        return False
    if k == 1:
        return True
    if k == 2:
        return bool(det(_quadric_matrix(f)))
    return _macaulay_full(f)


def _macaulay_full(f: HomPoly) -> bool:
    D = smoothness_degree(f.nvars, f.degree)
    grads = [partial_derivative(f, i) for i in range(f.nvars)]
    if any(g.is_zero() for g in grads):
        return False
    rows = _multiples_rows(grads, D)
    ncols = graded_dim(f.nvars, D)
    return rank(Matrix(rows, f.field, ncols)) == ncols


def log_derivation_dims(f: HomPoly, d_max: int) -> HilbertFunction:
    """Dimensions of the degree pieces of ``{delta : delta f = 0}``.

    Entry ``d`` is the kernel dimension of ``(A_d)^{n+1} -> A_{d+k-1}``,
    ``(delta_0, ..., delta_n) -> sum delta_i * df/dx_i``.
    """
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    if f.degree < 1:
        raise ValueError("need a form of degree >= 1")
    grads = [partial_derivative(f, i) for i in range(f.nvars)]
    dims = []
    for d in range(d_max + 1):
        target = d + f.degree - 1
        rows = _multiples_rows(grads, target)
        r = rank(Matrix(rows, f.field, graded_dim(f.nvars, target)))
        dims.append(len(rows) - r)
    return HilbertFunction(tuple(dims))


def jacobi_closure(J: Subspace, nvars: int, k: int) -> Subspace:
    """``{g in A_k : dg/dx_j in J for all j}`` for a subspace J of ``A_{k-1}``.

    Membership in J is imposed through the RREF of J: a vector lies in J iff
    its reduction against the basis vanishes in the non-pivot coordinates.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    src = monomials(nvars, k)
    tgt_idx = monomial_index(nvars, k - 1)
    ntgt = len(tgt_idx)
    if J.ambient_dim != ntgt:
        raise ValueError(f"J has ambient dimension {J.ambient_dim}, expected {ntgt}")
    field = J.field
    zero = field.zero
    pivots = set(J.pivots)
    free_cols = [q for q in range(ntgt) if q not in pivots]
    rows = []
    for j in range(nvars):
        # derivative matrix D_j: column s (source monomial) -> (target row, factor)
        image = [[] for _ in range(ntgt)]
        for s, m in enumerate(src):
            if m[j]:
                t = tgt_idx[m[:j] + (m[j] - 1,) + m[j + 1:]]
                image[t].append((s, field(m[j])))
        for q in free_cols:
            row = [zero] * len(src)
            for s, a in image[q]:
                row[s] = row[s] + a
            for b, pc in zip(J.basis, J.pivots):
                coef = b[q]
                if coef:
                    for s, a in image[pc]:
                        row[s] = row[s] - coef * a
            if any(row):
                rows.append(row)
    if not rows:
        return Subspace([[int(i == j) for j in range(len(src))] for i in range(len(src))],
                        len(src), field)
    return kernel(Matrix(rows, field, len(src)))
