"""Independent oracles built on sympy and plain dict arithmetic.

Nothing here imports the package's linear algebra; the point is to check
its answers by a different route.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp

from logtorelli.polyring import HomPoly

SYMS = sp.symbols("x0:6")


def to_sympy(f: HomPoly):
    xs = SYMS[: f.nvars]
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * sp.Mul(*[x ** e for x, e in zip(xs, m)])
                    for m, c in f.items()])


def _generic(nvars, d, name):
    """Generic form of degree d with unknown coefficients and its coefficient symbols."""
    xs = SYMS[:nvars]
    mons = [m for m in itertools.product(range(d + 1), repeat=nvars) if sum(m) == d]
    cs = sp.symbols(f"{name}0:{len(mons)}")
    g = sum(c * sp.Mul(*[x ** e for x, e in zip(xs, m)]) for c, m in zip(cs, mons))
    return g, cs


def _linear_equations(expr, xs):
    return sp.Poly(sp.expand(expr), *xs).coeffs() if sp.expand(expr) != 0 else []


def st_space_dim(f: HomPoly) -> int:
    """dim {g : every dg/dx_j is a combination of the partials of f}, by sympy nullspace."""
    xs = SYMS[: f.nvars]
    F = to_sympy(f)
    n, k = f.nvars, f.degree
    g, gc = _generic(n, k, "g")
    lam = sp.symbols(f"l0:{n * n}")
    eqs = []
    for j in range(n):
        rhs = sum(lam[j * n + i] * sp.diff(F, xs[i]) for i in range(n))
        eqs += _linear_equations(sp.diff(g, xs[j]) - rhs, xs)
    unknowns = list(gc) + list(lam)
    A, _ = sp.linear_eq_to_matrix(eqs, unknowns)
    ns = A.nullspace()
    if not ns:
        return 0
    proj = sp.Matrix.hstack(*[v[: len(gc), :] for v in ns])
    return proj.rank()


def in_jacobi_span(f: HomPoly, g: HomPoly) -> bool:
    xs = SYMS[: f.nvars]
    F, G = to_sympy(f), to_sympy(g)
    lam = sp.symbols(f"l0:{f.nvars}")
    eqs = _linear_equations(G - sum(l * sp.diff(F, x) for l, x in zip(lam, xs)), xs)
    return bool(sp.linsolve(eqs, lam)) if eqs else True


def binary_form_smooth(f: HomPoly) -> bool:
    """A binary form is smooth iff it is nonzero and square-free over the algebraic closure."""
    F = to_sympy(f)
    if F == 0:
        return False
    _, factors = sp.sqf_list(F, *SYMS[:2])
    return all(mult == 1 for _, mult in factors)


def groebner_smooth(f: HomPoly) -> bool:
    """Partials have no common projective zero iff every x_i^N lies in their ideal."""
    xs = SYMS[: f.nvars]
    F = to_sympy(f)
    G = sp.groebner([sp.diff(F, x) for x in xs], *xs, order="grevlex")
    if list(G.exprs) == [1]:
        return True
    # socle degree of the Jacobian ring bounds N
    N = f.nvars * (f.degree - 2) + 1
    return all(G.contains(x ** N) for x in xs)


def log_derivation_dims(f: HomPoly, d_max: int) -> list[int]:
    xs = SYMS[: f.nvars]
    F = to_sympy(f)
    parts = [sp.diff(F, x) for x in xs]
    out = []
    for d in range(d_max + 1):
        unknowns, total = [], 0
        for i, p in enumerate(parts):
            g, cs = _generic(f.nvars, d, f"c{i}_")
            unknowns += cs
            total += g * p
        eqs = _linear_equations(total, xs)
        if not eqs:
            out.append(len(unknowns))
            continue
        A, _ = sp.linear_eq_to_matrix(eqs, unknowns)
        out.append(len(unknowns) - A.rank())
    return out


# -- exhaustive split search over integer changes ----------------------------

def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def substitute(terms: dict, A, n: int) -> dict:
    """``f(A X)`` with ``x_j = sum_i A[j][i] X_i`` on plain dicts."""
    lin = []
    for j in range(n):
        lin.append({tuple(int(t == i) for t in range(n)): A[j][i] for i in range(n) if A[j][i]})
    one = {(0,) * n: 1}
    powers = []
    for L in lin:
        ps = [one]
        for _ in range(max((m[len(powers)] for m in terms), default=0)):
            ps.append(_pmul(ps[-1], L))
        powers.append(ps)
    out: dict = {}
    for m, c in terms.items():
        t = {(0,) * n: c}
        for j, e in enumerate(m):
            if e:
                t = _pmul(t, powers[j][e])
        for mm, cc in t.items():
            out[mm] = out.get(mm, 0) + cc
    return {m: c for m, c in out.items() if c}


def _splits(terms: dict, n: int) -> bool:
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in terms]
    for l in range(1, n):
        left = set(range(l))
        if all(s <= left or not (s & left) for s in supports) and \
                any(s <= left for s in supports) and any(not (s & left) for s in supports):
            return True
    return False


def _det(A) -> int:
    n = len(A)
    if n == 1:
        return A[0][0]
    return sum((-1) ** j * A[0][j] * _det([r[:j] + r[j + 1:] for r in A[1:]])
               for j in range(n) if A[0][j])


def catalog_split(f: HomPoly, entries=range(-2, 3)):
    """First integer change in the catalog splitting f, or None.

    Only contiguous splits ``{X_0..X_{l-1}} | rest`` are checked; permutations
    are already inside the catalog.
    """
    n = f.nvars
    terms = {m: Fraction(c) for m, c in f.items()}
    for flat in itertools.product(entries, repeat=n * n):
        A = [flat[i * n:(i + 1) * n] for i in range(n)]
        if _det(A) == 0:
            continue
        if _splits(substitute(terms, A, n), n):
            return A
    return None


def expand_change(f: HomPoly, A) -> dict:
    return substitute({m: Fraction(c) for m, c in f.items()}, A, f.nvars)
