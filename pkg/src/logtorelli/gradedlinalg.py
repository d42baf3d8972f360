"""Exact dense linear algebra over QQ and F_p.

Matrices are small immutable row-major grids of field scalars. All
elimination runs on Python integers internally: over QQ rows are scaled to
integer vectors and eliminated fraction-free (with content removal), over
F_p plain residues are used. Only the final normalization produces
fractions again, so results are exact and the RREF is canonical.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

import numpy as np

from .fields import QQ, Field, PrimeField

__all__ = [
    "Matrix",
    "Subspace",
    "rref",
    "rank",
    "kernel",
    "solve",
    "inverse",
    "det",
    "member",
    "subspace_equal",
]

# primes below 2**31 used for the rank prefilter over QQ
_FILTER_PRIMES = (2147483647, 2147483629, 2147483587)


class Matrix:
    """Rectangular matrix over one exact field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, rows, field: Field = QQ, ncols: Optional[int] = None):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("matrix rows must all have the same length")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], field, n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        if isinstance(ij, tuple):
            i, j = ij
            return self.rows[i][j]
        return self.rows[ij]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}], {self.field!r})"

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)) if self.nrows else [], self.field, self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        cols = list(zip(*other.rows)) if other.nrows else [() for _ in range(other.ncols)]
        out = []
        for r in self.rows:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), zero) for c in cols])
        return Matrix(out, self.field, other.ncols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product M v."""
        if len(v) != self.ncols:
            raise ValueError("vector length does not match matrix columns")
        zero = self.field.zero
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), zero) for r in self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], self.field, len(cols))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        return Matrix([a + b for a, b in zip(self.rows, other.rows)], self.field,
                      self.ncols + other.ncols)


# -- integer kernels ---------------------------------------------------------

def _int_rows_qq(rows) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if x.denominator != 1:
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def _content(row: list[int]) -> int:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    return g


def _gauss_jordan_int(rows: list[list[int]], ncols: int):
    """Fraction-free Gauss-Jordan on integer rows; returns (rows, pivots)."""
    rows = [r[:] for r in rows if any(r)]
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == len(rows):
            break
        for i in range(pr, len(rows)):
            if rows[i][c]:
                break
        else:
            continue
        rows[pr], rows[i] = rows[i], rows[pr]
        prow = rows[pr]
        pv = prow[c]
        for i in range(len(rows)):
            if i == pr:
                continue
            r = rows[i]
            a = r[c]
            if not a:
                continue
            g = gcd(pv, a)
            s, t = pv // g, a // g
            new = [s * x - t * y for x, y in zip(r, prow)]
            cg = _content(new)
            if cg > 1:
                new = [x // cg for x in new]
            rows[i] = new
        pivots.append(c)
        pr += 1
    return rows[:pr], pivots


def _gauss_jordan_mod(rows: list[list[int]], ncols: int, p: int):
    rows = [[x % p for x in r] for r in rows]
    rows = [r for r in rows if any(r)]
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == len(rows):
            break
        for i in range(pr, len(rows)):
            if rows[i][c]:
                break
        else:
            continue
        rows[pr], rows[i] = rows[i], rows[pr]
        inv = pow(rows[pr][c], -1, p)
        prow = [x * inv % p for x in rows[pr]]
        rows[pr] = prow
        for i in range(len(rows)):
            if i != pr:
                a = rows[i][c]
                if a:
                    rows[i] = [(x - a * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        pr += 1
    return rows[:pr], pivots


def _rank_mod_p_numpy(rows: list[list[int]], ncols: int, p: int) -> int:
    """Rank of an integer matrix reduced mod p (p < 2**31)."""
    if not rows or not ncols:
        return 0
    a = np.array([[x % p for x in r] for r in rows], dtype=np.int64)
    m = a.shape[0]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:, c].copy()
        idx = np.nonzero(below)[0]
        if idx.size:
            rows_idx = r + 1 + idx
            a[rows_idx] = (a[rows_idx] - np.outer(below[idx], a[r])) % p
        r += 1
    return r


def _rref_rows(M: Matrix):
    field = M.field
    if isinstance(field, PrimeField):
        p = field.p
        rows, piv = _gauss_jordan_mod([[x.v for x in r] for r in M.rows], M.ncols, p)
        return [tuple(field(x) for x in r) for r in rows], piv
    rows, piv = _gauss_jordan_int(_int_rows_qq(M.rows), M.ncols)
    out = []
    for r, c in zip(rows, piv):
        d = r[c]
        out.append(tuple(Fraction(x, d) for x in r))
    return out, piv


# -- public operations -------------------------------------------------------

def rref(M: Matrix):
    """Canonical reduced row echelon form.

    Returns ``(R, pivots, rank)`` where ``R`` has the same shape as ``M``
    (zero rows at the bottom) and ``pivots`` lists the pivot columns.
    """
    rows, piv = _rref_rows(M)
    zero_row = tuple(M.field.zero for _ in range(M.ncols))
    full = rows + [zero_row] * (M.nrows - len(rows))
    return Matrix(full, M.field, M.ncols), tuple(piv), len(piv)


def rank(M: Matrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    field = M.field
    if isinstance(field, PrimeField):
        ints = [[x.v for x in r] for r in M.rows]
        if M.nrows * M.ncols > 4000:
            return _rank_mod_p_numpy(ints, M.ncols, field.p)
        return len(_gauss_jordan_mod(ints, M.ncols, field.p)[1])
    ints = _int_rows_qq(M.rows)
    full = min(M.nrows, M.ncols)
    if M.nrows * M.ncols > 4000:
        # rank mod p never exceeds the rational rank, so a full-rank hit is exact
        if _rank_mod_p_numpy(ints, M.ncols, _FILTER_PRIMES[0]) == full:
            return full
    return len(_gauss_jordan_int(ints, M.ncols)[1])


def kernel(M: Matrix) -> "Subspace":
    """Right null space ``{v : M v = 0}``."""
    rows, piv = _rref_rows(M)
    field = M.field
    free = [c for c in range(M.ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [field.zero] * M.ncols
        v[f] = field.one
        for r, c in zip(rows, piv):
            v[c] = -r[f]
        basis.append(v)
    return Subspace(basis, M.ncols, field)


def solve(M: Matrix, b: Sequence):
    """One solution of ``M x = b`` or ``None`` if the system is inconsistent.

    Free variables are set to zero, so the answer is the particular solution
    read off the RREF of the augmented matrix.
    """
    if len(b) != M.nrows:
        raise ValueError("right-hand side length does not match matrix rows")
    field = M.field
    aug = Matrix([list(r) + [field(x)] for r, x in zip(M.rows, b)], field, M.ncols + 1)
    rows, piv = _rref_rows(aug)
    if piv and piv[-1] == M.ncols:
        return None
    x = [field.zero] * M.ncols
    for r, c in zip(rows, piv):
        x[c] = r[M.ncols]
    return tuple(x)


def inverse(M: Matrix) -> Matrix:
    n = M.nrows
    if M.ncols != n:
        raise ValueError("only square matrices are invertible")
    field = M.field
    aug = M.hstack(Matrix.identity(n, field))
    rows, piv = _rref_rows(aug)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return Matrix([r[n:] for r in rows], field, n)


def det(M: Matrix):
    """Determinant by exact elimination."""
    n = M.nrows
    if M.ncols != n:
        raise ValueError("determinant needs a square matrix")
    field = M.field
    a = [list(r) for r in M.rows]
    d = field.one
    for c in range(n):
        for i in range(c, n):
            if a[i][c]:
                break
        else:
            return field.zero
        if i != c:
            a[c], a[i] = a[i], a[c]
            d = -d
        pv = a[c][c]
        d = d * pv
        for i in range(c + 1, n):
            if a[i][c]:
                t = a[i][c] / pv
                a[i] = [x - t * y for x, y in zip(a[i], a[c])]
    return d


class Subspace:
    """Linear subspace of K^N stored by its canonical RREF basis.

    Two subspaces are equal exactly when their bases coincide entry-wise.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, vectors, ambient_dim: int, field: Field = QQ):
        vectors = [list(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise ValueError("vector length does not match the ambient dimension")
        self.field = field
        self.ambient_dim = ambient_dim
        if vectors:
            rows, piv = _rref_rows(Matrix(vectors, field, ambient_dim))
        else:
            rows, piv = [], []
        self.basis = tuple(rows)
        self.pivots = tuple(piv)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def basis_matrix(self) -> Matrix:
        return Matrix(self.basis, self.field, self.ambient_dim)

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after subtracting its projection along the pivots."""
        v = [self.field(x) for x in v]
        for row, c in zip(self.basis, self.pivots):
            a = v[c]
            if a:
                v = [x - a * y for x, y in zip(v, row)]
        return tuple(v)

    def __contains__(self, v) -> bool:
        return member(self, v)

    def coordinates(self, v: Sequence):
        """Coefficients of ``v`` in the RREF basis, or None if ``v`` is outside."""
        if not member(self, v):
            return None
        return tuple(self.field(v[c]) for c in self.pivots)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return subspace_equal(self, other)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field!r})"


def member(S: Subspace, v: Sequence) -> bool:
    if len(v) != S.ambient_dim:
        raise ValueError(f"vector of length {len(v)} in ambient dimension {S.ambient_dim}")
    return not any(S.reduce(v))


def subspace_equal(S: Subspace, T: Subspace) -> bool:
    if S.ambient_dim != T.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    return S.basis == T.basis
