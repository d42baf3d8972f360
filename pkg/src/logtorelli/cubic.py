"""Vanishing of the j-invariant of a smooth plane cubic.

j = 0 exactly when the degree-4 SL3-invariant of ternary cubics vanishes.
Instead of transcribing a classical formula the invariant is derived here:
degree-4 polynomials in the 10 cubic coefficients killed by the Lie algebra
sl3 form a one-dimensional space. The diagonal (torus) part acts on
monomials by their weight, so its kernel is spanned by weight-(4,4,4)
monomials; the six root operators then cut out the invariant line with one
exact kernel computation.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InternalConsistencyError, NotSmoothError, UnsupportedInput
from .jacobi import is_smooth
from .gradedlinalg import Matrix, kernel
from .polyring import HomPoly, coeff_vector, monomial_index, monomials
from .sebastiani import is_st

__all__ = [
    "TernaryCubicInvariant",
    "CorollaryRecord",
    "derive_invariant",
    "invariant_polynomial",
    "annihilates",
    "evaluate_invariant",
    "cubic_invariant",
    "j_is_zero",
    "corollary_check",
]

CUBIC_MONOMIALS = monomials(3, 3)
_NCOEF = len(CUBIC_MONOMIALS)  # 10
_INV_DEGREE = 4


def _weight(e) -> tuple[int, int, int]:
    w = [0, 0, 0]
    for k, m in zip(e, CUBIC_MONOMIALS):
        if k:
            for i in range(3):
                w[i] += k * m[i]
    return tuple(w)


def _root_operator(i: int, j: int):
    """Action of ``x_i d/dx_j`` on cubic coefficients: list of (target, source, factor)."""
    idx = monomial_index(3, 3)
    out = []
    for s, m in enumerate(CUBIC_MONOMIALS):
        if m[j]:
            t = list(m)
            t[j] -= 1
            t[i] += 1
            out.append((idx[tuple(t)], s, m[j]))
    return out


def _apply_derivation(P: dict, action) -> dict:
    """Image of ``P(a)`` under the derivation sending ``a_t`` to ``sum factor * a_s``."""
    out: dict = {}
    for e, c in P.items():
        for t, s, factor in action:
            if e[t]:
                ne = list(e)
                ne[t] -= 1
                ne[s] += 1
                ne = tuple(ne)
                out[ne] = out.get(ne, 0) + c * e[t] * factor
    return {e: c for e, c in out.items() if c}


def annihilates(P: dict) -> bool:
    """Whether P is killed by all eight basis operators of sl3."""
    for i in range(3):
        for j in range(3):
            if i != j and _apply_derivation(P, _root_operator(i, j)):
                return False
    for i, j in ((0, 1), (1, 2)):
        for e, c in P.items():
            w = _weight(e)
            if c and w[i] != w[j]:
                return False
    return True


def derive_invariant(shuffle_seed: Optional[int] = None) -> dict:
    """Normalized degree-4 invariant as ``{exponent tuple over the 10 coefficients: value}``.

    ``shuffle_seed`` permutes the equation rows before elimination; the
    canonical result does not depend on it.
    """
    zero_weight = [e for e in monomials(_NCOEF, _INV_DEGREE)
                   if _weight(e) == (_INV_DEGREE,) * 3]
    col = {e: k for k, e in enumerate(zero_weight)}
    rows: dict = {}
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            action = _root_operator(i, j)
            for k, e in enumerate(zero_weight):
                for te, c in _apply_derivation({e: 1}, action).items():
                    rows.setdefault((i, j, te), [0] * len(zero_weight))[k] += c
    row_list = list(rows.values())
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(row_list)
    ker = kernel(Matrix(row_list, ncols=len(zero_weight)))
    if ker.dim != 1:
        raise InternalConsistencyError(
            f"expected a one-dimensional space of quartic invariants, got {ker.dim}")
    vec = ker.basis[0]
    lead = next(x for x in vec if x)
    P = {e: Fraction(vec[col[e]]) / lead for e in zero_weight if vec[col[e]]}
    if not annihilates(P):
        raise InternalConsistencyError("derived invariant is not killed by sl3")
    return P


_lock = threading.Lock()
_invariant: Optional[dict] = None


def invariant_polynomial() -> dict:
    """The cached invariant, derived on first use."""
    global _invariant
    with _lock:
        if _invariant is None:
            _invariant = derive_invariant()
    return _invariant


def evaluate_invariant(coeffs, P: Optional[dict] = None):
    P = invariant_polynomial() if P is None else P
    total = Fraction(0)
    for e, c in P.items():
        t = c
        for a, k in zip(coeffs, e):
            if k:
                t *= Fraction(a) ** k
        total += t
    return total


@dataclass(frozen=True)
class TernaryCubicInvariant:
    coefficients: tuple
    S_value: Fraction

    @property
    def vanishes(self) -> bool:
        return self.S_value == 0


def _check_cubic(f: HomPoly):
    if f.nvars != 3 or f.degree != 3:
        raise UnsupportedInput("need a ternary cubic")
    if f.field.characteristic:
        raise UnsupportedInput("the cubic invariant is only used in characteristic 0")


def cubic_invariant(f: HomPoly) -> TernaryCubicInvariant:
    _check_cubic(f)
    coeffs = coeff_vector(f)
    return TernaryCubicInvariant(coeffs, evaluate_invariant(coeffs))


def j_is_zero(f: HomPoly) -> bool:
    _check_cubic(f)
    if not is_smooth(f):
        raise NotSmoothError()
    return cubic_invariant(f).vanishes


@dataclass(frozen=True)
class CorollaryRecord:
    st: bool
    j_zero: bool
    st_dim: int
    S_value: Fraction

    @property
    def agree(self) -> bool:
        return self.st == self.j_zero


def corollary_check(f: HomPoly) -> CorollaryRecord:
    """Compare the ST verdict with vanishing of j; they must agree on smooth cubics."""
    _check_cubic(f)
    st = is_st(f)
    inv = cubic_invariant(f)
    return CorollaryRecord(st.is_st, inv.vanishes, st.st_dim, inv.S_value)
