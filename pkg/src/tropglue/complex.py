"""The dual intersection complex of a triple-product degeneration.

The complex is the closed triangle with corners C1=(0,0), C2=(1,0),
C3=(0,1); corner Ci stands for the component M_i, the open side Sij for
M_i ∩ M_j and the open interior for M_1 ∩ M_2 ∩ M_3.  ``Plane`` mode
replaces the triangle by all of R^2 (no faces).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InvalidContactError, OutOfDomainError
from .lattice import ZERO, IntVec2, RatPoint, vec, wedge


class FaceId(str, Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    S12 = "S12"
    S13 = "S13"
    S23 = "S23"
    INT = "INT"

    def __str__(self):
        return self.value

    @property
    def is_corner(self):
        return self in CORNERS

    @property
    def is_side(self):
        return self in SIDES


CORNERS = {
    FaceId.C1: RatPoint(Fraction(0), Fraction(0)),
    FaceId.C2: RatPoint(Fraction(1), Fraction(0)),
    FaceId.C3: RatPoint(Fraction(0), Fraction(1)),
}

SIDES = {
    FaceId.S12: (FaceId.C1, FaceId.C2),
    FaceId.S13: (FaceId.C1, FaceId.C3),
    FaceId.S23: (FaceId.C2, FaceId.C3),
}

# divisors meeting each corner, in the order the contact rule reports them
CORNER_DIVISORS = {
    FaceId.C1: ("D12", "D13"),
    FaceId.C2: ("D12", "D23"),
    FaceId.C3: ("D13", "D23"),
}

# Interior contact orders are zero/pole orders along the two C*-directions.
DIVISORS = ("D12", "D13", "D23", "D123", "Lfiber", "L12", "L13")


class Mode(str, Enum):
    TRIANGLE = "Triangle"
    PLANE = "Plane"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Domain:
    mode: Mode = Mode.TRIANGLE
    twist: IntVec2 = ZERO

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "twist", vec(self.twist))
        if self.mode is Mode.PLANE and not self.twist.is_zero():
            raise ValueError("a twist vector only makes sense in Triangle mode")

    @classmethod
    def plane(cls):
        return cls(Mode.PLANE)

    @classmethod
    def triangle(cls, twist=ZERO):
        return cls(Mode.TRIANGLE, twist)

    @property
    def is_plane(self):
        return self.mode is Mode.PLANE


class ContactData(dict):
    """Contact orders of one edge with the divisors adjacent to its vertex."""

    def key(self):
        """Hashable normal form; zero orders are dropped."""
        return tuple(sorted((d, o) for d, o in self.items() if o != 0))


def classify_point(p, domain: Domain | None = None) -> FaceId:
    """Face whose relative interior contains ``p``."""
    if domain is not None and domain.is_plane:
        return FaceId.INT
    x, y = Fraction(p[0]), Fraction(p[1])
    if x < 0 or y < 0 or x + y > 1:
        raise OutOfDomainError(f"point {RatPoint(x, y)} lies outside the triangle")
    if x == 0 and y == 0:
        return FaceId.C1
    if x == 1 and y == 0:
        return FaceId.C2
    if x == 0 and y == 1:
        return FaceId.C3
    if y == 0:
        return FaceId.S12
    if x == 0:
        return FaceId.S13
    if x + y == 1:
        return FaceId.S23
    return FaceId.INT


def side_frame(face) -> tuple[IntVec2, IntVec2]:
    """Basis (alpha, beta) for contact data on side Sij.

    alpha points from Ci to Cj, beta from Ci to the remaining corner.
    """
    face = FaceId(face)
    if face not in SIDES:
        raise ValueError(f"{face} is not a side")
    ci, cj = SIDES[face]
    (ck,) = set(CORNERS) - {ci, cj}
    origin = CORNERS[ci]
    alpha = CORNERS[cj] - origin
    beta = CORNERS[ck] - origin
    return vec(alpha), vec(beta)


def contact_data(face, u, domain: Domain | None = None) -> ContactData:
    """Contact orders for an edge with derivative ``u`` leaving a vertex on ``face``."""
    face = FaceId(face)
    u = vec(u)
    if (domain is not None and domain.is_plane) or face is FaceId.INT:
        return ContactData(L12=u.x, L13=u.y)
    if face is FaceId.C1:
        a, b = u.x, u.y
        divs = ("D12", "D13")
    elif face is FaceId.C2:
        # u = (-a-b, b)
        b = u.y
        a = -u.x - u.y
        divs = ("D12", "D23")
    elif face is FaceId.C3:
        # u = (b, -a-b)
        b = u.x
        a = -u.x - u.y
        divs = ("D13", "D23")
    else:
        alpha, beta = side_frame(face)
        det = wedge(alpha, beta)
        a, ra = divmod(wedge(u, beta), det)
        b, rb = divmod(wedge(alpha, u), det)
        if ra or rb:
            raise InvalidContactError(f"{u} is not integral in the frame of {face}")
        if b < 0:
            raise InvalidContactError(
                f"derivative {u} leaves the triangle from side {face} (D123 order {b})"
            )
        return ContactData(Lfiber=a, D123=b)
    if a < 0 or b < 0:
        raise InvalidContactError(
            f"derivative {u} at corner {face} gives negative contact ({divs[0]}:{a}, {divs[1]}:{b})"
        )
    return ContactData({divs[0]: a, divs[1]: b})
