"""Exact coefficient fields.

Two fields are supported: the rationals (backed by ``gmpy2.mpq``) and prime
fields F_p.  Elements of both support the ordinary arithmetic operators, so
the rest of the package is written against plain ``+ - * /``.
"""
from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq, is_prime


class FieldError(ValueError):
    pass


class RationalField:
    characteristic = 0
    name = "rational"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, x) -> mpq:
        if isinstance(x, str):
            return mpq(Fraction(x))
        if isinstance(x, float):
            raise FieldError("floating point coefficients are not exact")
        return mpq(x)

    def to_fraction(self, x) -> Fraction:
        x = mpq(x)
        return Fraction(int(x.numerator), int(x.denominator))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


class Fp:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction) or type(other) is type(mpq(0)):
            den = int(other.denominator) % self.p
            if den == 0:
                raise ZeroDivisionError("denominator divisible by the characteristic")
            return int(other.numerator) * pow(den, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return Fp(pow(self.v, -1, self.p), self.p) ** (-e)
        return Fp(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "%d mod %d" % (self.v, self.p)

    def __str__(self):
        return str(self.v)


class PrimeField:
    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not is_prime(p):
            raise FieldError("%d is not prime" % p)
        self.characteristic = p
        self.name = "prime:%d" % p
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, x) -> Fp:
        p = self.characteristic
        if isinstance(x, Fp):
            return Fp(x.v, p)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, int):
            return Fp(x, p)
        if isinstance(x, float):
            raise FieldError("floating point coefficients are not exact")
        return self.one * x

    def to_fraction(self, x) -> Fraction:
        return Fraction(int(self(x).v))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("prime", self.characteristic))

    def __repr__(self):
        return "PrimeField(%d)" % self.characteristic


QQ = RationalField()


def field_from_descriptor(desc: str | None):
    """Parse ``"rational"`` or ``"prime:p"``."""
    if desc is None or desc == "rational":
        return QQ
    if desc.startswith("prime:"):
        try:
            p = int(desc.split(":", 1)[1])
        except ValueError:
            raise FieldError("bad field descriptor %r" % desc) from None
        return PrimeField(p)
    raise FieldError("bad field descriptor %r" % desc)
