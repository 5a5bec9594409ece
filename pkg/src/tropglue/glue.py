"""Genus-0 gluing formula evaluated over a tropical curve.

Every edge class is modeled as a Novikov multiple of the point class of its
target (the rank-1 model), so a class is just a ``NovikovPoly``.  Interior
vertices contribute a lattice wedge; corner and side vertices look their
relative invariant up in a :class:`VertexInvariantTable`.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .complex import ContactData, Domain, FaceId, contact_data
from .errors import MissingInvariantError, NotRigidError, UnsupportedVertexError
from .lattice import IntVec2, format_rat, vec, wedge
from .tropical import CombinatorialType, aut_order, balancing_defect, genus, is_rigid

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class EnergyVec:
    e12: Fraction = Fraction(0)
    e13: Fraction = Fraction(0)
    e23: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("e12", "e13", "e23"):
            val = Fraction(getattr(self, name))
            if val < 0:
                raise ValueError(f"energy component {name} must be nonnegative")
            object.__setattr__(self, name, val)

    def __add__(self, other):
        return EnergyVec(self.e12 + other.e12, self.e13 + other.e13, self.e23 + other.e23)

    def scaled(self, k):
        return EnergyVec(self.e12 * k, self.e13 * k, self.e23 * k)

    def is_zero(self):
        return not (self.e12 or self.e13 or self.e23)

    def __str__(self):
        parts = []
        for coeff, sym in ((self.e12, "E12"), (self.e13, "E13"), (self.e23, "E23")):
            if coeff == 0:
                continue
            parts.append(sym if coeff == 1 else f"{format_rat(coeff)}{sym}")
        return "+".join(parts) or "0"


ZERO_ENERGY = EnergyVec()


class NovikovPoly:
    """Finite sum of ``coeff * q^energy`` with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[EnergyVec, Fraction] | None = None):
        self.terms = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[e] = self.terms.get(e, 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def monomial(cls, coeff=1, energy: EnergyVec = ZERO_ENERGY):
        return cls({energy: Fraction(coeff)})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls.monomial(1)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return NovikovPoly(out)

    def __mul__(self, other):
        if not isinstance(other, NovikovPoly):
            return NovikovPoly({e: c * Fraction(other) for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return NovikovPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = Fraction(k)
        return NovikovPoly({e: c / k for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NovikovPoly.monomial(other)
        return isinstance(other, NovikovPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def coefficient(self, energy: EnergyVec = ZERO_ENERGY) -> Fraction:
        return self.terms.get(energy, Fraction(0))

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            parts.append(format_rat(c) if e.is_zero() else f"{format_rat(c)}·q^({e})")
        return " + ".join(parts)

    def __repr__(self):
        return f"NovikovPoly({self})"


@dataclass(frozen=True)
class ThetaClass:
    """Class on an edge target: ``coeff`` times the point class."""

    coeff: NovikovPoly

    @classmethod
    def point(cls):
        return cls(NovikovPoly.one())


def table_key(face, contacts: Iterable, n_points: int):
    """Normalized lookup key: face, sorted contact profile, point count."""
    face = FaceId(face)
    profile = []
    for c in contacts:
        if not isinstance(c, ContactData):
            c = ContactData(c)
        profile.append(c.key())
    return (face.value, tuple(sorted(profile)), int(n_points))


class VertexInvariantTable:
    """Relative invariants of corner and side vertices, supplied as data."""

    def __init__(self):
        self.entries = {}

    def add(self, face, contacts, n_points, coeff, energy: EnergyVec = ZERO_ENERGY):
        key = table_key(face, contacts, n_points)
        self.entries.setdefault(key, []).append((Fraction(coeff), energy))
        return key

    def __contains__(self, key):
        return key in self.entries

    def __len__(self):
        return len(self.entries)

    def lookup(self, key) -> NovikovPoly:
        try:
            terms = self.entries[key]
        except KeyError:
            raise MissingInvariantError(key) from None
        out = NovikovPoly.zero()
        for coeff, energy in terms:
            out = out + NovikovPoly.monomial(coeff, energy)
        return out

    def scaled(self, key, r) -> "VertexInvariantTable":
        """Copy with the coefficients of one entry multiplied by ``r``."""
        new = VertexInvariantTable()
        for k, terms in self.entries.items():
            f = Fraction(r) if k == key else 1
            new.entries[k] = [(c * f, e) for c, e in terms]
        return new


@dataclass(frozen=True)
class GluingConfig:
    type: CombinatorialType
    points: Mapping  # label -> RatPoint
    table: VertexInvariantTable
    domain: Domain


def interior_invariant(
    incoming: Sequence[tuple],
    others: Sequence = (),
    n_points: int = 0,
    balanced: bool = True,
    energy: EnergyVec | None = None,
) -> ThetaClass:
    """Push incoming classes through an interior vertex.

    ``incoming`` pairs each incoming edge's derivative (oriented into the
    vertex) with its class; ``others`` holds the away-derivatives of the
    remaining non-contracted edges (the outgoing edge, unbounded ends).
    """
    coeff = NovikovPoly.one()
    for _, theta in incoming:
        coeff = coeff * theta.coeff
    if energy is not None and not energy.is_zero():
        coeff = coeff * NovikovPoly.monomial(1, energy)
    k = len(incoming) + len(others)
    if n_points:
        if n_points != 1 or k != 2:
            raise UnsupportedVertexError(
                f"interior vertex with {n_points} marked points and {k} edges"
            )
        return ThetaClass(coeff)
    if k > 3 or k < 2:
        raise UnsupportedVertexError(f"interior vertex of valence {k} without a marked point")
    if len(incoming) == 2:
        factor = abs(wedge(incoming[0][0], incoming[1][0]))
    elif balanced or k == 2:
        away = [-vec(u) for u, _ in incoming] + [vec(u) for u in others]
        factor = abs(wedge(away[0], away[1]))
    else:
        raise UnsupportedVertexError(
            "unbalanced trivalent vertex needs exactly two incoming edges; choose another root"
        )
    return ThetaClass(coeff * factor)


def boundary_invariant(
    face, contacts: Sequence, n_points: int, incoming: Sequence[ThetaClass], table: VertexInvariantTable
) -> ThetaClass:
    """Table invariant of a corner or side vertex times the incoming classes."""
    coeff = table.lookup(table_key(face, contacts, n_points))
    for theta in incoming:
        coeff = coeff * theta.coeff
    return ThetaClass(coeff)


def vanishing_edges(ctype: CombinatorialType) -> list:
    return [e.id for e in ctype.internal_edges if e.derivative.is_zero()]


def _orient(ctype, root):
    """BFS tree toward ``root``: returns (order, parent edge per vertex)."""
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in ctype.incident(v):
            w = e.other(v)
            if w not in parent:
                parent[w] = e
                order.append(w)
                queue.append(w)
    return order, parent


def evaluate_curve(config: GluingConfig, root: str | None = None, check_rigid: bool = True) -> NovikovPoly:
    """Contribution of one tropical curve, not divided by its automorphisms."""
    ctype, domain = config.type, config.domain
    dead = vanishing_edges(ctype)
    if dead:
        log.info("internal edge(s) %s have derivative 0; contribution vanishes", ", ".join(dead))
        return NovikovPoly.zero()
    if genus(ctype) != 0:
        raise ValueError("the genus-0 gluing formula needs a tree")
    if check_rigid and not is_rigid(ctype, domain, config.points):
        raise NotRigidError("tropical curve is not rigid for this point configuration")
    if root is None or root == "auto":
        root = ctype.vertices[0].id
    ctype.vertex(root)

    order, parent = _orient(ctype, root)
    theta = {}  # vertex -> class on its outgoing edge (or the final value at root)
    for v in reversed(order):
        vert = ctype.vertex(v)
        children = [e for e in ctype.incident(v) if e.other(v) != v and parent.get(e.other(v)) is e]
        incoming = [(e.away_from(e.other(v)), theta[e.other(v)]) for e in children]
        others = list(ctype.unbounded_at(v))
        if parent[v] is not None:
            others.append(parent[v].away_from(v))
        n_points = ctype.n_points(v)
        if domain.is_plane or vert.face is FaceId.INT:
            if not balancing_defect(ctype, domain, v).is_zero():
                raise UnsupportedVertexError(f"interior vertex {v} is not balanced")
            raw = IntVec2(0, 0)
            for u in ctype.away_derivatives(v):
                raw = raw + u
            energy = EnergyVec(*vert.energy) if vert.energy is not None else None
            theta[v] = interior_invariant(incoming, others, n_points, raw.is_zero(), energy)
        else:
            contacts = [contact_data(vert.face, u) for u in ctype.away_derivatives(v)]
            theta[v] = boundary_invariant(
                vert.face, contacts, n_points, [t for _, t in incoming], config.table
            )
    return theta[root].coeff


def total(configs: Iterable[GluingConfig]) -> NovikovPoly:
    out = NovikovPoly.zero()
    for c in configs:
        out = out + evaluate_curve(c) / aut_order(c.type)
    return out


def plane_contribution(curve) -> Fraction:
    """Mikhalkin weight of an enumerated plane curve: multiplicity / |Aut|."""
    return Fraction(curve.multiplicity, aut_order(curve.type))


def plane_config(curve, points) -> GluingConfig:
    """Gluing configuration for an enumerated plane curve (no table needed)."""
    return GluingConfig(curve.type, dict(points), VertexInvariantTable(), Domain.plane())
