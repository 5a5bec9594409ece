"""Exact lattice arithmetic in Z^2 and Q^2.

Everything here is integer or ``Fraction`` valued; nothing in the engine
touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple, Union

Rat = Fraction
RatLike = Union[int, str, Fraction]


class IntVec2(NamedTuple):
    x: int
    y: int

    def __add__(self, other):
        return IntVec2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return IntVec2(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return IntVec2(-self.x, -self.y)

    def __mul__(self, k):
        return IntVec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __str__(self):
        return f"({self.x},{self.y})"


ZERO = IntVec2(0, 0)


class RatPoint(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: RatLike, y: RatLike) -> "RatPoint":
        return cls(to_rat(x), to_rat(y))

    def __add__(self, other):
        return RatPoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return RatPoint(self.x - other[0], self.y - other[1])

    def shifted(self, u, t) -> "RatPoint":
        """The point ``self + t*u``."""
        return RatPoint(self.x + t * u[0], self.y + t * u[1])

    def __str__(self):
        return f"({format_rat(self.x)},{format_rat(self.y)})"


def vec(u) -> IntVec2:
    if isinstance(u, IntVec2):
        return u
    x, y = u
    if int(x) != x or int(y) != y:
        raise ValueError(f"not an integral vector: {u!r}")
    return IntVec2(int(x), int(y))


def wedge(u, v):
    """u.x*v.y - u.y*v.x; works for integer and rational pairs alike."""
    return u[0] * v[1] - u[1] * v[0]


def primitive_decompose(u) -> tuple[int, IntVec2]:
    """Split ``u`` as ``k * u0`` with ``u0`` primitive and ``k >= 0``.

    The zero vector maps to ``(0, (0, 0))``.  The sign lives on ``u0``.
    """
    u = vec(u)
    k = gcd(u.x, u.y)
    if k == 0:
        return 0, ZERO
    return k, IntVec2(u.x // k, u.y // k)


def to_rat(value: RatLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"expected an exact rational 'p/q', got {value!r}")
        return Fraction(s)
    raise TypeError(f"cannot make an exact rational from {value!r}")


def format_rat(r) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"
