"""Coefficient fields: exact rationals and prime fields.

Rational coefficients are stored as Python ``int`` whenever they are
integral and as :class:`fractions.Fraction` otherwise, so integer-only
arithmetic (the common case after normalization) stays on the fast path.
Prime-field coefficients are plain ints in ``[0, p)``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class FieldError(ValueError):
    pass


class UnsupportedCharacteristic(FieldError):
    """Raised when an algorithm is unsound in the field's characteristic."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


class Field:
    """A coefficient field. ``p == 0`` means the rationals."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    @property
    def char(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def name(self) -> str:
        return "rationals" if self.p == 0 else f"fp:{self.p}"

    # -- element handling -------------------------------------------------
    def __call__(self, x) -> int | Fraction:
        """Coerce ``x`` (int, Fraction, or string like ``'3/4'``) into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            if isinstance(x, int):
                return x
            if isinstance(x, Rational):
                x = Fraction(x)
                return x.numerator if x.denominator == 1 else x
            raise FieldError(f"cannot coerce {x!r} to a rational")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Rational):
            x = Fraction(x)
            den = x.denominator % self.p
            if den == 0:
                raise FieldError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise FieldError(f"cannot coerce {x!r} to GF({self.p})")

    def reduce(self, c):
        if self.p:
            return c % self.p
        if type(c) is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def div(self, a, b):
        if self.p:
            b %= self.p
            if b == 0:
                raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
            return a * pow(b, -1, self.p) % self.p
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if type(a) is int and type(b) is int:
            q, r = divmod(a, b)
            if r == 0:
                return q
        q = Fraction(a) / b
        return q.numerator if q.denominator == 1 else q

    def inv(self, a):
        return self.div(1, a)

    def fmt(self, c) -> str:
        return str(c)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(spec: str) -> Field:
    """Parse ``rationals``/``qq``/``q`` or ``fp:P``/``gf(P)``."""
    s = spec.strip().lower()
    if s in ("rationals", "qq", "q", "rational"):
        return QQ
    for prefix in ("fp:", "gf:", "f"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return Field(int(s[len(prefix):]))
    if s.startswith("gf(") and s.endswith(")"):
        return Field(int(s[3:-1]))
    raise FieldError(f"unknown field {spec!r}")
