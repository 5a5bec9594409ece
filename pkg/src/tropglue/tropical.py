"""Tropical curves: combinatorial types, realizations, rigidity, automorphisms."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

from .complex import CORNERS, Domain, FaceId, classify_point
from .errors import DisconnectedError, FaceMismatchError
from .lattice import ZERO, IntVec2, RatPoint, vec
from . import linalg


@dataclass(frozen=True)
class Vertex:
    id: str
    face: FaceId = FaceId.INT
    base_degree: int = 0
    # optional (e12, e13, e23) energy carried by an interior vertex
    energy: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "face", FaceId(self.face))
        if self.base_degree < 0:
            raise ValueError("base_degree must be nonnegative")


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    derivative: IntVec2

    def __post_init__(self):
        object.__setattr__(self, "derivative", vec(self.derivative))

    def away_from(self, v: str) -> IntVec2:
        """Derivative of the edge oriented away from endpoint ``v``."""
        if v == self.tail:
            return self.derivative
        if v == self.head:
            return -self.derivative
        raise KeyError(f"{v} is not an endpoint of edge {self.id}")

    def other(self, v: str) -> str:
        return self.head if v == self.tail else self.tail

    def reversed(self) -> "Edge":
        return Edge(self.id, self.head, self.tail, -self.derivative)


@dataclass(frozen=True)
class CombinatorialType:
    vertices: tuple
    internal_edges: tuple = ()
    labeled_ends: tuple = ()  # (label, vertex id)
    unbounded_ends: tuple = ()  # (vertex id, direction)
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "internal_edges", tuple(self.internal_edges))
        object.__setattr__(
            self, "labeled_ends", tuple((int(i), v) for i, v in self.labeled_ends)
        )
        object.__setattr__(
            self, "unbounded_ends", tuple((v, vec(u)) for v, u in self.unbounded_ends)
        )
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex id")
        idset = set(ids)
        eids = [e.id for e in self.internal_edges]
        if len(set(eids)) != len(eids):
            raise ValueError("duplicate edge id")
        for e in self.internal_edges:
            if e.tail not in idset or e.head not in idset:
                raise ValueError(f"edge {e.id} references an unknown vertex")
        labels = sorted(i for i, _ in self.labeled_ends)
        if labels != list(range(1, len(labels) + 1)):
            raise ValueError("end labels must be 1..n, each used once")
        for _, v in self.labeled_ends:
            if v not in idset:
                raise ValueError(f"labeled end on unknown vertex {v}")
        for v, _ in self.unbounded_ends:
            if v not in idset:
                raise ValueError(f"unbounded end on unknown vertex {v}")
        inc = defaultdict(list)
        for e in self.internal_edges:
            inc[e.tail].append(e)
            if e.head != e.tail:
                inc[e.head].append(e)
        pts = Counter(v for _, v in self.labeled_ends)
        unb = defaultdict(list)
        for v, u in self.unbounded_ends:
            unb[v].append(u)
        object.__setattr__(
            self,
            "_index",
            {"v": {v.id: v for v in self.vertices}, "inc": inc, "pts": pts, "unb": unb},
        )

    def vertex(self, vid) -> Vertex:
        return self._index["v"][vid]

    def edge(self, eid) -> Edge:
        for e in self.internal_edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def incident(self, vid) -> list:
        return self._index["inc"].get(vid, [])

    def n_points(self, vid) -> int:
        return self._index["pts"].get(vid, 0)

    def end_labels(self, vid) -> list:
        return sorted(i for i, v in self.labeled_ends if v == vid)

    def unbounded_at(self, vid) -> list:
        return self._index["unb"].get(vid, [])

    def away_derivatives(self, vid) -> list:
        """Away-from-``vid`` derivatives of internal edges (loops twice) and unbounded ends."""
        out = []
        for e in self.incident(vid):
            if e.tail == e.head:
                out.extend([e.derivative, -e.derivative])
            else:
                out.append(e.away_from(vid))
        out.extend(self.unbounded_at(vid))
        return out

    def valence(self, vid) -> int:
        """Number of non-contracted edge germs at ``vid``."""
        return len(self.away_derivatives(vid))

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0].id}
        stack = [self.vertices[0].id]
        while stack:
            v = stack.pop()
            for e in self.incident(v):
                w = e.other(v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def relabeled(self, vmap: Mapping[str, str], emap: Mapping[str, str] | None = None):
        """Copy with vertex (and edge) ids renamed."""
        emap = emap or {}
        return CombinatorialType(
            tuple(
                Vertex(vmap[v.id], v.face, v.base_degree, v.energy) for v in self.vertices
            ),
            tuple(
                Edge(emap.get(e.id, e.id), vmap[e.tail], vmap[e.head], e.derivative)
                for e in self.internal_edges
            ),
            tuple((i, vmap[v]) for i, v in self.labeled_ends),
            tuple((vmap[v], u) for v, u in self.unbounded_ends),
        )


@dataclass(frozen=True)
class Realization:
    positions: dict
    lengths: dict
    deformation_dim: int


def balancing_defect(ctype: CombinatorialType, domain: Domain, v: str) -> IntVec2:
    """Sum of away-derivatives at ``v`` minus ``base_degree * twist``."""
    total = ZERO
    for u in ctype.away_derivatives(v):
        total = total + u
    if not domain.is_plane and not domain.twist.is_zero():
        total = total - domain.twist * ctype.vertex(v).base_degree
    return total


def genus(ctype: CombinatorialType) -> int:
    if not ctype.is_connected():
        raise DisconnectedError("combinatorial type is not connected")
    return len(ctype.internal_edges) - len(ctype.vertices) + 1


def _face_equations(face: FaceId):
    """Affine-hull equations ``(cx, cy, rhs)`` for a vertex on ``face``."""
    if face.is_corner:
        c = CORNERS[face]
        return [(1, 0, c.x), (0, 1, c.y)]
    if face is FaceId.S12:
        return [(0, 1, 0)]
    if face is FaceId.S13:
        return [(1, 0, 0)]
    if face is FaceId.S23:
        return [(1, 1, 1)]
    return []


def _face_inequalities(face: FaceId):
    """Strict inequalities ``cx*x + cy*y + c > 0`` cutting out the open face."""
    if face is FaceId.S12:
        return [(1, 0, 0), (-1, 0, 1)]
    if face is FaceId.S13:
        return [(0, 1, 0), (0, -1, 1)]
    if face is FaceId.S23:
        return [(1, 0, 0), (0, 1, 0)]
    if face is FaceId.INT:
        return [(1, 0, 0), (0, 1, 0), (-1, -1, 1)]
    return []


def _check_points(ctype, domain, points):
    for label, vid in ctype.labeled_ends:
        if label not in points:
            raise KeyError(f"no point given for end {label}")
        if domain.is_plane:
            continue
        face = classify_point(points[label])
        if face is not ctype.vertex(vid).face:
            raise FaceMismatchError(
                f"point p{label}={RatPoint.of(*points[label])} lies on {face}, "
                f"but its vertex {vid} is assigned to {ctype.vertex(vid).face}"
            )


def realize(ctype: CombinatorialType, domain: Domain, points: Mapping[int, RatPoint]):
    """Solve the continuity system of ``ctype`` through ``points``.

    Unknowns are vertex positions and edge lengths.  Returns
    ``(realization or None, deformation_dim)`` where the dimension is the
    kernel dimension of the equality system; ``None`` means the system is
    infeasible or has no solution with positive lengths and vertices in the
    open faces they are assigned to.
    """
    _check_points(ctype, domain, points)
    vids = [v.id for v in ctype.vertices]
    vpos = {v: 2 * i for i, v in enumerate(vids)}
    nv = 2 * len(vids)
    epos = {e.id: nv + i for i, e in enumerate(ctype.internal_edges)}
    ncols = nv + len(epos)

    A, b = [], []

    def row():
        return [0] * ncols

    for e in ctype.internal_edges:
        t, h, li = vpos[e.tail], vpos[e.head], epos[e.id]
        for k, dk in enumerate(e.derivative):
            r = row()
            r[h + k] += 1
            r[t + k] -= 1
            r[li] = -dk
            A.append(r)
            b.append(0)
    for label, vid in ctype.labeled_ends:
        p = points[label]
        for k in range(2):
            r = row()
            r[vpos[vid] + k] = 1
            A.append(r)
            b.append(Fraction(p[k]))
    if not domain.is_plane:
        for v in ctype.vertices:
            for cx, cy, rhs in _face_equations(v.face):
                r = row()
                r[vpos[v.id]] = cx
                r[vpos[v.id] + 1] = cy
                A.append(r)
                b.append(rhs)

    if not A:
        A, b = [row()], [0]
    sol, rnk = linalg.solve(A, b)
    dim = ncols - rnk
    if sol is None:
        return None, dim

    # strict inequalities g . x + c > 0
    ineqs = []
    for e in ctype.internal_edges:
        g = [0] * ncols
        g[epos[e.id]] = 1
        ineqs.append((g, 0))
    if not domain.is_plane:
        for v in ctype.vertices:
            for cx, cy, c in _face_inequalities(v.face):
                g = [0] * ncols
                g[vpos[v.id]] = cx
                g[vpos[v.id] + 1] = cy
                ineqs.append((g, c))

    x0 = sol.particular
    if dim == 0:
        x = x0
        if any(sum(gi * xi for gi, xi in zip(g, x) if gi) + c <= 0 for g, c in ineqs):
            return None, 0
    else:
        reduced = []
        for g, c in ineqs:
            a = [sum(gi * ki for gi, ki in zip(g, kv) if gi) for kv in sol.kernel]
            c0 = sum(gi * xi for gi, xi in zip(g, x0) if gi) + c
            reduced.append((a, c0))
        t = linalg.strict_feasible_point(reduced, dim)
        if t is None:
            return None, dim
        x = [x0[j] + sum(t[i] * sol.kernel[i][j] for i in range(dim)) for j in range(ncols)]

    positions = {v: RatPoint(x[vpos[v]], x[vpos[v] + 1]) for v in vids}
    lengths = {eid: x[i] for eid, i in epos.items()}
    return Realization(positions, lengths, dim), dim


def is_rigid(ctype: CombinatorialType, domain: Domain, points) -> bool:
    if any(e.derivative.is_zero() for e in ctype.internal_edges):
        return False
    real, dim = realize(ctype, domain, points)
    return real is not None and dim == 0


# -- automorphisms ---------------------------------------------------------


def _vertex_color(ctype, v: Vertex):
    return (
        v.face.value,
        v.base_degree,
        v.energy,
        tuple(ctype.end_labels(v.id)),
        tuple(sorted(ctype.unbounded_at(v.id))),
        tuple(sorted(ctype.away_derivatives(v.id))),
    )


def _arc_table(ctype):
    """(u, w) -> Counter of derivatives of edges oriented u -> w (both orientations stored)."""
    arcs = defaultdict(Counter)
    for e in ctype.internal_edges:
        arcs[e.tail, e.head][e.derivative] += 1
        if e.tail != e.head:
            arcs[e.head, e.tail][-e.derivative] += 1
    return arcs


def vertex_automorphisms(ctype: CombinatorialType):
    """Yield vertex permutations preserving all decorations and edge data."""
    vids = [v.id for v in ctype.vertices]
    color = {v.id: _vertex_color(ctype, v) for v in ctype.vertices}
    arcs = _arc_table(ctype)
    by_color = defaultdict(list)
    for v in vids:
        by_color[color[v]].append(v)
    # most constrained first
    order = sorted(vids, key=lambda v: (len(by_color[color[v]]), vids.index(v)))
    sigma = {}
    used = set()

    def consistent(v, w):
        for u, x in sigma.items():
            if arcs.get((v, u), Counter()) != arcs.get((w, x), Counter()):
                return False
        return arcs.get((v, v), Counter()) == arcs.get((w, w), Counter())

    def extend(i):
        if i == len(order):
            yield dict(sigma)
            return
        v = order[i]
        for w in by_color[color[v]]:
            if w in used or not consistent(v, w):
                continue
            sigma[v] = w
            used.add(w)
            yield from extend(i + 1)
            del sigma[v]
            used.discard(w)

    yield from extend(0)


def aut_order(ctype: CombinatorialType) -> int:
    """Order of the automorphism group fixing every labeled end.

    Counts vertex permutations together with the permutations of parallel
    edges that go with them.
    """
    edge_factor = 1
    bundles = Counter()
    loops = Counter()
    for e in ctype.internal_edges:
        if e.tail == e.head:
            d = e.derivative
            loops[e.tail, max(d, -d)] += 1
            if d.is_zero():
                edge_factor *= 2
        else:
            a, b, d = e.tail, e.head, e.derivative
            if b < a:
                a, b, d = b, a, -d
            bundles[a, b, d] += 1
    for m in list(bundles.values()) + list(loops.values()):
        edge_factor *= factorial(m)
    n = sum(1 for _ in vertex_automorphisms(ctype))
    return n * edge_factor
