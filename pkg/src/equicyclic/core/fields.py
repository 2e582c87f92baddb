"""Exact scalar fields: the rationals and prime fields F_p.

Elements are plain Python objects (``Fraction`` for Q, ``int`` in ``[0, p)``
for F_p) so that arithmetic stays fast; a :class:`Field` instance knows how to
normalize, invert, parse and print them.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """The field Q (``p == 0``) or F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")
        self.p = p

    def __repr__(self) -> str:
        return "Field(Q)" if self.p == 0 else f"Field(F_{self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F_{self.p}"

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def __call__(self, value):
        """Coerce an int, Fraction or string into this field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in F_{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def reduce(self, x):
        """Normalize the result of raw Python arithmetic on field elements."""
        return x % self.p if self.p else x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def sign(self, exponent: int):
        """(-1)^exponent as a field element."""
        return self.one if exponent % 2 == 0 else self.neg(self.one)

    def fmt(self, x) -> str:
        if self.p:
            return str(int(x) % self.p)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=None)
def field(p: int = 0) -> Field:
    return Field(p)


Q = field(0)


def parse_field(value) -> Field:
    """Accepts ``"Q"``, ``"F_5"``, ``"F5"``, ``5`` or ``0``."""
    if isinstance(value, Field):
        return value
    if isinstance(value, int):
        return field(value)
    s = str(value).strip()
    if s in ("Q", "QQ"):
        return Q
    if s.startswith("F"):
        s = s[1:].lstrip("_")
    return field(int(s))
