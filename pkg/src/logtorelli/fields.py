"""Exact coefficient fields: the rationals and prime fields F_p.

Rational scalars are plain :class:`fractions.Fraction` values. Prime-field
scalars are :class:`ModP` instances carrying their modulus, so generic code
can use ``+ - * /`` without knowing which field it runs over.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral, Rational

__all__ = ["Field", "QQ", "GF", "ModP", "PrimeField", "parse_field"]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    # deterministic Miller-Rabin for p < 3.3e24
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Field:
    """Base class for coefficient field descriptors."""

    characteristic: int = 0
    name: str = ""

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def to_int(self, value) -> int:
        """Integer representative (only meaningful for F_p)."""
        raise NotImplementedError

    def format(self, value) -> str:
        return str(value)

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "QQ"

    def __call__(self, value):
        if isinstance(value, ModP):
            raise TypeError("cannot coerce an F_p element into QQ")
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (Integral, Rational, str)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into QQ")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __reduce__(self):
        return (_qq, ())


def _qq():
    return QQ


QQ = RationalField()


class ModP:
    """Element of F_p, stored as its canonical representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise TypeError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, Integral):
            return int(other) % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError(f"division by zero in F_{self.p}")
            return ModP(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ZeroDivisionError):
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class PrimeField(Field):
    """The prime field F_p for a prime p < 2**31."""

    def __init__(self, p: int):
        p = int(p)
        if not (2 <= p < 2**31) or not _is_prime(p):
            raise ValueError(f"F_p needs a prime p < 2^31, got {p}")
        self.characteristic = p
        self.p = p
        self.name = f"GF({p})"

    def __call__(self, value):
        if isinstance(value, ModP):
            if value.p != self.p:
                raise TypeError(f"cannot coerce F_{value.p} element into F_{self.p}")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Integral):
            return ModP(int(value), self.p)
        if isinstance(value, Rational):
            value = Fraction(value)
            if value.denominator % self.p == 0:
                raise ValueError(f"coefficient {value} is not in F_{self.p}")
            return ModP(value.numerator * pow(value.denominator, -1, self.p), self.p)
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def to_int(self, value) -> int:
        return value.v

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse a field descriptor: ``q`` for the rationals or ``fp:<prime>``."""
    t = text.strip().lower()
    if t in ("q", "qq"):
        return QQ
    if t.startswith("fp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise ValueError(f"bad prime in field descriptor {text!r}") from None
        return GF(p)
    raise ValueError(f"unknown field descriptor {text!r} (use 'q' or 'fp:<prime>')")
