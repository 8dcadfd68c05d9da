"""Exact coefficient fields: the rationals by default, a prime field opt-in.

Field elements support +, -, *, / and truthiness (nonzero test), so the
linear algebra routines stay generic. No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class RationalField:
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_int(n: int) -> Fraction:
        return Fraction(n)

    @staticmethod
    def from_fraction(num: int, den: int = 1) -> Fraction:
        return Fraction(num, den)

    @staticmethod
    def sample(rng, span: int) -> Fraction:
        """Uniform over the 2*span+1 integers centered at zero."""
        return Fraction(rng.randint(-span, span))

    def __repr__(self):
        return "QQ"


class GFElement:
    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def __add__(self, other):
        return GFElement(self.p, self.v + other.v)

    def __sub__(self, other):
        return GFElement(self.p, self.v - other.v)

    def __mul__(self, other):
        return GFElement(self.p, self.v * other.v)

    def __neg__(self):
        return GFElement(self.p, -self.v)

    def __truediv__(self, other):
        if other.v == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return GFElement(self.p, self.v * pow(other.v, self.p - 2, self.p))

    def __eq__(self, other):
        return isinstance(other, GFElement) and self.p == other.p and self.v == other.v

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"


class PrimeField:
    def __init__(self, p: int = 32003):
        self.p = p
        self.name = f"GF({p})"
        self.zero = GFElement(p, 0)
        self.one = GFElement(p, 1)

    def from_int(self, n: int) -> GFElement:
        return GFElement(self.p, n)

    def from_fraction(self, num: int, den: int = 1) -> GFElement:
        return GFElement(self.p, num) / GFElement(self.p, den)

    def sample(self, rng, span: int) -> GFElement:
        width = min(self.p, 2 * span + 1)
        return GFElement(self.p, rng.randrange(width))

    def __repr__(self):
        return self.name


QQ = RationalField()
