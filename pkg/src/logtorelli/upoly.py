"""Dense univariate polynomials as coefficient lists (constant term first).

Only what the pencil root search needs: gcd, square-free part, rational
roots over QQ and roots in F_p.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

from sympy import divisors

from .fields import Field, PrimeField


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a) -> int:
    return len(trim(a)) - 1


def sub(a, b, zero):
    n = max(len(a), len(b))
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return trim(x - y for x, y in zip(a, b))


def mul(a, b, zero):
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    zero = b[0] * 0
    q = [zero] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        c = r[-1] / lead
        s = len(r) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            r[s + i] = r[s + i] - c * y
        r = trim(r)
    return trim(q), r


def monic(a):
    a = trim(a)
    if not a:
        return a
    lead = a[-1]
    return [x / lead for x in a]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(a):
    return trim(x * i for i, x in enumerate(a) if i)


def evaluate(a, t):
    acc = t * 0
    for x in reversed(a):
        acc = acc * t + x
    return acc


def squarefree_part(a):
    a = trim(a)
    if len(a) <= 1:
        return monic(a)
    g = gcd(a, derivative(a))
    return monic(divmod_(a, g)[0])


def interpolate(xs, ys, field: Field):
    """Coefficients of the unique polynomial of degree < len(xs) through the points."""
    n = len(xs)
    coef = [field(y) for y in ys]
    xs = [field(x) for x in xs]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    zero = field.zero
    poly = [zero] * n
    # Newton form to monomial form
    acc = [coef[n - 1]]
    for i in range(n - 2, -1, -1):
        acc = sub(mul(acc, [-xs[i], field.one], zero), [-coef[i]], zero)
    for i, c in enumerate(acc):
        poly[i] = c
    return trim(poly)


def rational_roots(a) -> list[Fraction]:
    """All rational roots of a nonzero rational polynomial, ascending."""
    a = trim(a)
    if len(a) <= 1:
        return []
    den = 1
    for x in a:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in a]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[-1])
    for q in divisors(an):
        for p in divisors(a0):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if r not in roots and evaluate(ints, r) == 0:
                    roots.add(r)
    return sorted(roots)


def _powmod(base, e, m, zero):
    result = [zero + 1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, zero), m)[1]
        e >>= 1
        if e:
            base = divmod_(mul(base, base, zero), m)[1]
    return result


def roots_mod_p(a, field: PrimeField, seed: int = 0) -> list:
    """Roots in F_p of a nonzero polynomial over F_p (distinct, ascending)."""
    a = monic(a)
    if len(a) <= 1:
        return []
    zero, one = field.zero, field.one
    p = field.p
    t = [zero, one]
    tp = _powmod(t, p, a, zero)
    h = gcd(a, sub(tp, t, zero))
    rng = random.Random(seed)
    out = []

    def split(h):
        if degree(h) <= 0:
            return
        if degree(h) == 1:
            out.append(-h[0] / h[1])
            return
        if p == 2:
            for r in (zero, one):
                if not evaluate(h, r):
                    out.append(r)
            return
        while True:
            c = field(rng.randrange(p))
            w = _powmod([c, one], (p - 1) // 2, h, zero)
            d = gcd(h, sub(w, [one], zero))
            if 0 < degree(d) < degree(h):
                split(d)
                split(divmod_(h, d)[0])
                return

    split(h)
    return sorted(out, key=lambda x: x.v)
