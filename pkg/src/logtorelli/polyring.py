"""Sparse homogeneous polynomials over an exact field.

A :class:`HomPoly` is an immutable map from exponent tuples to nonzero
coefficients, all of one total degree. Monomials of a graded piece are
ordered graded-lexicographically with ``x0 > x1 > ... > xn``; that order
fixes coefficient vectors, printing and every RREF pivot downstream.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Mapping, Optional, Sequence

from .errors import UnsupportedInput
from .fields import QQ, Field
from .gradedlinalg import Matrix, inverse

__all__ = [
    "HomPoly",
    "CoordinateChange",
    "PolyParseError",
    "PolySyntaxError",
    "InhomogeneousError",
    "UnknownVariableError",
    "CoefficientError",
    "UnsupportedCharacteristic",
    "monomials",
    "monomial_index",
    "graded_dim",
    "default_var_names",
    "parse_poly",
    "format_poly",
    "partial_derivative",
    "substitute_linear",
    "hessian",
    "coeff_vector",
    "from_coeff_vector",
    "euler_apply",
    "restrict_variables",
    "embed_variables",
]


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree ``d`` in ``nvars`` variables, largest first."""
    if nvars == 0:
        return ((),) if d == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int) -> dict:
    return {m: i for i, m in enumerate(monomials(nvars, d))}


def graded_dim(nvars: int, d: int) -> int:
    """Dimension of the degree-``d`` piece of a polynomial ring in ``nvars`` variables."""
    if d < 0:
        return 0
    if nvars == 0:
        return int(d == 0)
    return comb(nvars + d - 1, d)


def default_var_names(nvars: int) -> list[str]:
    if nvars <= 4:
        return ["x", "y", "z", "w"][:nvars]
    return [f"x{i}" for i in range(nvars)]


class UnsupportedCharacteristic(UnsupportedInput):
    """The field characteristic divides into the degree range (p <= k)."""


class HomPoly:
    """Homogeneous polynomial of a declared degree in ``nvars`` variables."""

    __slots__ = ("nvars", "degree", "field", "_terms", "_hash")

    def __init__(self, nvars: int, degree: int, terms: Optional[Mapping] = None,
                 field: Field = QQ):
        if nvars < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        p = field.characteristic
        if p and p <= degree:
            raise UnsupportedCharacteristic(
                f"F_{p} requires p > degree, got degree {degree}")
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != nvars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {nvars} variables")
            if sum(m) != degree:
                raise ValueError(f"monomial {m} is not of degree {degree}")
            c = field(c)
            if c:
                clean[m] = c
        self.nvars = nvars
        self.degree = degree
        self.field = field
        self._terms = clean
        self._hash = None

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, degree: int, field: Field = QQ) -> "HomPoly":
        return cls(nvars, degree, {}, field)

    @classmethod
    def variable(cls, i: int, nvars: int, field: Field = QQ) -> "HomPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, 1, {tuple(e): 1}, field)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1, field: Field = QQ) -> "HomPoly":
        return cls(len(exps), sum(exps), {tuple(exps): coeff}, field)

    # -- accessors -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, m) -> object:
        return self._terms.get(tuple(m), self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def support_variables(self) -> set[int]:
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def _check_compatible(self, other: "HomPoly"):
        if self.nvars != other.nvars or self.field != other.field:
            raise ValueError("polynomials live in different rings")

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, HomPoly):
            if other == 0:
                return self
            return NotImplemented
        self._check_compatible(other)
        if self.degree != other.degree:
            raise ValueError("sum of polynomials of different degrees is not homogeneous")
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return HomPoly(self.nvars, self.degree, out, self.field)

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return HomPoly(self.nvars, self.degree, {m: -c for m, c in self._terms.items()},
                       self.field)

    def __sub__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "HomPoly":
        c = self.field(c)
        if not c:
            return HomPoly.zero(self.nvars, self.degree, self.field)
        return HomPoly(self.nvars, self.degree, {m: c * v for m, v in self._terms.items()},
                       self.field)

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            self._check_compatible(other)
            out = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    out[m] = out.get(m, 0) + c1 * c2
            return HomPoly(self.nvars, self.degree + other.degree, out, self.field)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int) -> "HomPoly":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = HomPoly(self.nvars, 0, {(0,) * self.nvars: 1}, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.degree == other.degree
                and self.field == other.field and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.degree, self.field,
                               frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation -----------------------------------------
    def derivative(self, i: int) -> "HomPoly":
        return partial_derivative(self, i)

    def gradient(self) -> list["HomPoly"]:
        return [partial_derivative(self, i) for i in range(self.nvars)]

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = self.field.zero
        for m, c in self._terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * x ** e
            total = total + t
        return total

    def change_field(self, field: Field) -> "HomPoly":
        """Coefficient-wise image in another field (e.g. reduction mod p)."""
        return HomPoly(self.nvars, self.degree,
                       {m: field(c) for m, c in self._terms.items()}, field)

    def sorted_terms(self):
        return sorted(self._terms.items(), reverse=True)

    def __repr__(self):
        return f"HomPoly({format_poly(self)!r}, nvars={self.nvars}, {self.field!r})"

    def __str__(self):
        return format_poly(self)


# -- calculus ---------------------------------------------------------------

def partial_derivative(f: HomPoly, i: int) -> HomPoly:
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range for {f.nvars} variables")
    if f.degree == 0:
        raise ValueError("derivative of a constant has negative degree")
    out = {}
    for m, c in f.items():
        e = m[i]
        if e:
            dm = m[:i] + (e - 1,) + m[i + 1:]
            out[dm] = c * e
    return HomPoly(f.nvars, f.degree - 1, out, f.field)


def hessian(f: HomPoly) -> tuple[tuple[HomPoly, ...], ...]:
    grad = f.gradient()
    n = f.nvars
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            h = partial_derivative(grad[i], j)
            rows[i][j] = rows[j][i] = h
    return tuple(tuple(r) for r in rows)


def euler_apply(f: HomPoly) -> HomPoly:
    """Sum of ``x_i * df/dx_i``; equals ``degree * f`` by Euler's identity."""
    p = f.field.characteristic
    if p and f.degree % p == 0:
        raise UnsupportedCharacteristic(
            f"Euler identity is degenerate: characteristic {p} divides degree {f.degree}")
    if f.degree == 0:
        return HomPoly.zero(f.nvars, 0, f.field)
    total = HomPoly.zero(f.nvars, f.degree, f.field)
    for i in range(f.nvars):
        total = total + HomPoly.variable(i, f.nvars, f.field) * partial_derivative(f, i)
    return total


# -- coefficient vectors ----------------------------------------------------

def coeff_vector(f: HomPoly, d: Optional[int] = None) -> tuple:
    if d is not None and d != f.degree:
        raise ValueError(f"polynomial has degree {f.degree}, not {d}")
    zero = f.field.zero
    return tuple(f._terms.get(m, zero) for m in monomials(f.nvars, f.degree))


def from_coeff_vector(vec: Sequence, nvars: int, d: int, field: Field = QQ) -> HomPoly:
    mons = monomials(nvars, d)
    if len(vec) != len(mons):
        raise ValueError(f"expected {len(mons)} coefficients for degree {d}, got {len(vec)}")
    return HomPoly(nvars, d, {m: c for m, c in zip(mons, vec) if c}, field)


# -- coordinate changes -----------------------------------------------------

class CoordinateChange:
    """Invertible linear change ``x_j = sum_i matrix[j][i] * X_i``."""

    __slots__ = ("matrix", "inverse")

    def __init__(self, matrix, field: Optional[Field] = None):
        if not isinstance(matrix, Matrix):
            matrix = Matrix(matrix, field or QQ)
        elif field is not None and matrix.field != field:
            matrix = Matrix(matrix.rows, field)
        if matrix.nrows != matrix.ncols:
            raise ValueError("coordinate change must be square")
        self.matrix = matrix
        try:
            self.inverse = inverse(matrix)
        except ValueError:
            raise ValueError("coordinate change matrix is singular") from None

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "CoordinateChange":
        return cls(Matrix.identity(n, field))

    @classmethod
    def permutation(cls, perm: Sequence[int], field: Field = QQ) -> "CoordinateChange":
        """Change with ``x_{perm[i]} = X_i``."""
        n = len(perm)
        rows = [[0] * n for _ in range(n)]
        for i, j in enumerate(perm):
            rows[j][i] = 1
        return cls(Matrix(rows, field))

    @property
    def n(self) -> int:
        return self.matrix.nrows

    @property
    def field(self) -> Field:
        return self.matrix.field

    def __matmul__(self, other: "CoordinateChange") -> "CoordinateChange":
        """Composition: substituting ``A @ B`` equals substituting A then B."""
        return CoordinateChange(self.matrix @ other.matrix)

    def inverted(self) -> "CoordinateChange":
        return CoordinateChange(self.inverse)

    def __call__(self, f: HomPoly) -> HomPoly:
        return substitute_linear(f, self)

    def __eq__(self, other):
        if not isinstance(other, CoordinateChange):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"CoordinateChange({[list(r) for r in self.matrix.rows]})"


def substitute_linear(f: HomPoly, A) -> HomPoly:
    """Replace each ``x_j`` by the linear form ``sum_i A[j][i] X_i``."""
    M = A.matrix if isinstance(A, CoordinateChange) else A
    if M.nrows != f.nvars or M.ncols != f.nvars:
        raise ValueError(f"change of size {M.shape} for {f.nvars} variables")
    n = f.nvars
    field = f.field
    if M.field != field:
        M = Matrix(M.rows, field)
    forms = [HomPoly(n, 1, {tuple(int(k == i) for k in range(n)): M[j, i]
                            for i in range(n)}, field) for j in range(n)]
    powers = [{0: HomPoly(n, 0, {(0,) * n: 1}, field)} for _ in range(n)]

    def power(j, e):
        cache = powers[j]
        if e not in cache:
            cache[e] = power(j, e - 1) * forms[j]
        return cache[e]

    out: dict = {}
    for m, c in f.items():
        prod = None
        for j, e in enumerate(m):
            if e:
                pe = power(j, e)
                prod = pe if prod is None else prod * pe
        if prod is None:
            prod = power(0, 0)
        for mm, cc in prod.items():
            out[mm] = out.get(mm, 0) + c * cc
    return HomPoly(n, f.degree, out, field)


# -- variable blocks --------------------------------------------------------

def restrict_variables(f: HomPoly, indices: Sequence[int]) -> HomPoly:
    """View ``f`` as a polynomial in the listed variables only."""
    idx = list(indices)
    other = set(range(f.nvars)) - set(idx)
    out = {}
    for m, c in f.items():
        if any(m[i] for i in other):
            raise ValueError("polynomial depends on variables outside the block")
        out[tuple(m[i] for i in idx)] = c
    return HomPoly(len(idx), f.degree, out, f.field)


def embed_variables(f: HomPoly, indices: Sequence[int], nvars: int) -> HomPoly:
    """Inverse of :func:`restrict_variables`: place ``f``'s variables at ``indices``."""
    if len(indices) != f.nvars:
        raise ValueError("one target index per variable required")
    out = {}
    for m, c in f.items():
        e = [0] * nvars
        for i, k in zip(indices, m):
            e[i] = k
        out[tuple(e)] = c
    return HomPoly(nvars, f.degree, out, f.field)


# -- parsing and printing ---------------------------------------------------

class PolyParseError(ValueError):
    """Any failure turning text into a homogeneous polynomial."""


class PolySyntaxError(PolyParseError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}")


class InhomogeneousError(PolyParseError):
    pass


class UnknownVariableError(PolyParseError):
    pass


class CoefficientError(PolyParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^])|(\S))")
_DEFAULT_ALIASES = {"x": 0, "y": 1, "z": 2, "w": 3}
_DEFAULT_ALIASES.update({f"x{i}": i for i in range(10)})


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(4) is not None:
            raise PolySyntaxError(f"unexpected character {m.group(4)!r}", m.start(4), text)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append((m.group(3), m.group(3), m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, lookup):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.lookup = lookup

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind=None):
        tok = self.peek()
        if tok is None:
            raise PolySyntaxError("unexpected end of input", len(self.text), self.text)
        if kind is not None and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind}, found {tok[1]!r}", tok[2], self.text)
        self.i += 1
        return tok

    def expression(self):
        terms = []
        sign = 1
        tok = self.peek()
        if tok is not None and tok[0] in "+-":
            self.take()
            sign = -1 if tok[0] == "-" else 1
        terms.append(self.term(sign))
        while (tok := self.peek()) is not None:
            if tok[0] not in "+-":
                raise PolySyntaxError(f"expected '+' or '-', found {tok[1]!r}", tok[2],
                                      self.text)
            self.take()
            terms.append(self.term(-1 if tok[0] == "-" else 1))
        return terms

    def term(self, sign):
        exps: dict[int, int] = {}
        start = self.peek()[2] if self.peek() else len(self.text)
        coeff = self.factor(exps, sign)
        while (tok := self.peek()) is not None and tok[0] == "*":
            self.take()
            coeff = self.factor(exps, coeff)
        return coeff, exps, start

    def factor(self, exps, coeff):
        """Consume one factor; returns the updated term coefficient."""
        tok = self.take()
        if tok[0] == "int":
            num = int(tok[1])
            nxt = self.peek()
            if nxt is not None and nxt[0] == "/":
                self.take()
                den_tok = self.take("int")
                den = int(den_tok[1])
                if den == 0:
                    raise PolySyntaxError("zero denominator", den_tok[2], self.text)
                return coeff * Fraction(num, den)
            return coeff * num
        elif tok[0] == "name":
            idx = self.lookup(tok[1], tok[2])
            e = 1
            nxt = self.peek()
            if nxt is not None and nxt[0] == "^":
                self.take()
                e = int(self.take("int")[1])
            exps[idx] = exps.get(idx, 0) + e
            return coeff
        raise PolySyntaxError(f"unexpected {tok[1]!r}", tok[2], self.text)


def parse_poly(text: str, var_names: Optional[Sequence[str]] = None,
               field: Field = QQ) -> HomPoly:
    """Parse a homogeneous polynomial.

    Grammar::

        expression := ['+'|'-'] term (('+'|'-') term)*
        term       := factor ('*' factor)*
        factor     := integer ['/' integer] | variable ['^' integer]

    With ``var_names=None`` the aliases ``x, y, z, w`` and ``x0 .. x9`` name
    variables 0.. and the ring has as many variables as the largest index
    used. Raises a :class:`PolyParseError` subclass on bad input.
    """
    if var_names is not None:
        names = list(var_names)
        if not names:
            raise ValueError("need at least one variable name")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        table = {v: i for i, v in enumerate(names)}
    else:
        table = _DEFAULT_ALIASES

    def lookup(name, pos):
        if name not in table:
            raise UnknownVariableError(f"unknown variable {name!r} at position {pos}")
        return table[name]

    terms = _Parser(text, lookup).expression()
    if var_names is not None:
        nvars = len(var_names)
    else:
        used = [i for _, exps, _ in terms for i in exps]
        nvars = max(used) + 1 if used else 1

    degrees = {sum(exps.values()) for _, exps, _ in terms}
    if len(degrees) > 1:
        raise InhomogeneousError(
            f"inhomogeneous polynomial: terms of degrees {sorted(degrees)}")
    degree = degrees.pop()
    out: dict = {}
    for c, exps, pos in terms:
        try:
            c = field(c)
        except (ValueError, ZeroDivisionError) as exc:
            raise CoefficientError(f"coefficient at position {pos}: {exc}") from None
        m = tuple(exps.get(i, 0) for i in range(nvars))
        out[m] = out.get(m, 0) + c
    return HomPoly(nvars, degree, out, field)


def _format_monomial(m, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: HomPoly, var_names: Optional[Sequence[str]] = None) -> str:
    """Canonical text form; parses back to the same polynomial."""
    names = list(var_names) if var_names is not None else default_var_names(f.nvars)
    if f.is_zero():
        if f.degree == 0:
            return "0"
        return "0*" + _format_monomial((f.degree,) + (0,) * (f.nvars - 1), names)
    out = []
    for k, (m, c) in enumerate(f.sorted_terms()):
        mono = _format_monomial(m, names)
        if f.field.characteristic:
            neg, mag = False, str(c)
        else:
            neg, mag = c < 0, str(abs(c))
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
