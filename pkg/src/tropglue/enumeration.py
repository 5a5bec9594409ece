"""Enumeration of rigid rational plane tropical curves through points.

Search strategy: cut a rigid curve through generic points at any edge.  The
two halves are either *rigid* (as many unbounded ends as marked points, so
fully pinned) or *lined* (one end more than points; pinned once the line of
the cut edge is known).  A rigid piece is rooted at a marked point (the rest
hangs off as a lined piece) or at a trivalent vertex where two rigid pieces
meet.  A lined piece is either a single unbounded end or a trivalent vertex
on its anchor ray where a rigid piece joins and a smaller lined piece leaves.
Cutting the whole curve at the first marked point gives two lined pieces
anchored there.  Rigid pieces depend only on (points, ends) and are memoized.

Vertex positions come out of exact ray intersections; every curve is then
re-solved independently by :func:`tropglue.tropical.realize`.
"""
from __future__ import annotations

import hashlib
import json
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import NamedTuple

from .complex import Domain
from .errors import GenericityError
from .lattice import ZERO, IntVec2, RatPoint, format_rat, wedge
from .tropical import (
    CombinatorialType,
    Edge,
    Realization,
    Vertex,
    aut_order,
    balancing_defect,
    realize,
)

log = logging.getLogger(__name__)

PLANE_DIRECTIONS = (IntVec2(-1, 0), IntVec2(0, -1), IntVec2(1, 1))


@dataclass(frozen=True)
class PointConfig:
    points: tuple  # ((label, RatPoint), ...)
    mode: Domain = Domain.plane()
    seed: int | None = None

    def __post_init__(self):
        pts = tuple((int(i), RatPoint.of(*p)) for i, p in self.points)
        object.__setattr__(self, "points", pts)
        labels = sorted(i for i, _ in pts)
        if labels != list(range(1, len(labels) + 1)):
            raise ValueError("point labels must be 1..n without repeats")

    def as_dict(self) -> dict:
        return dict(self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class MarkedCurve:
    type: CombinatorialType
    realization: Realization
    multiplicity: int

    @property
    def canonical(self) -> bytes:
        return canonical_form(self.type)


def generic_config(n: int, seed: int, scale: int = 10**8, denominator: int = 9973) -> PointConfig:
    """``n`` pseudo-random rational points in the plane, reproducible from ``seed``."""
    rng = random.Random(seed)
    pts = []
    for i in range(1, n + 1):
        x = Fraction(rng.randint(-scale, scale), denominator)
        y = Fraction(rng.randint(-scale, scale), denominator)
        pts.append((i, RatPoint(x, y)))
    return PointConfig(tuple(pts), Domain.plane(), seed)


# -- pieces ----------------------------------------------------------------


class Rigid(NamedTuple):
    origin: tuple  # (x, y, d)
    direction: IntVec2  # direction of the root ray, pointing away from the piece
    point: int | None  # index of the marked point at the root, if any
    lined: object  # Lined hanging off the marked point
    left: object  # for a vertex root: the two rigid children and their lengths
    right: object
    tl: tuple  # (n, d)
    tr: tuple


class Lined(NamedTuple):
    end: IntVec2 | None  # set when the piece is just an unbounded end
    pos: tuple | None  # (x, y, d)
    t: tuple | None  # distance along the anchor ray to pos, as (n, d)
    rigid: Rigid | None
    s: tuple | None  # length of the rigid child's root edge
    rest: object


# Search positions are integer triples (x, y, d) with d > 0 standing for
# (x/d, y/d); lengths are pairs (n, d).  Plain ints are far cheaper than
# Fraction in the inner loop, and the builder converts back at the end.


def _hom(p):
    x, y = Fraction(p[0]), Fraction(p[1])
    d = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    return (x.numerator * (d // x.denominator), y.numerator * (d // y.denominator), d)


def _rat(h):
    return RatPoint(Fraction(h[0], h[2]), Fraction(h[1], h[2]))


def _intersect(p, u, q, v):
    """Meet rays ``p + t u`` and ``q + s v`` at ``t, s > 0``."""
    den = u[0] * v[1] - u[1] * v[0]
    px, py, pd = p
    qx, qy, qd = q
    dx, dy = qx * pd - px * qd, qy * pd - py * qd  # (q - p) * pd * qd
    if den == 0:
        if dx * u[1] - dy * u[0] == 0:
            raise GenericityError(f"collinear rays through {_rat(p)} and {_rat(q)}")
        return None
    tn = dx * v[1] - dy * v[0]
    sn = dx * u[1] - dy * u[0]
    if den < 0:
        tn, sn, den = -tn, -sn, -den
    if tn < 0 or sn < 0:
        return None
    if tn == 0 or sn == 0:
        raise GenericityError(f"vertex at {_rat(p)} lies on a ray through {_rat(q)}")
    td = pd * qd * den
    xn = px * qd * den + tn * u[0]
    yn = py * qd * den + tn * u[1]
    g = gcd(gcd(xn, yn), td)
    return (xn // g, yn // g, td // g), (tn, td), (sn, td)


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _submasks(mask):
    """All submasks of ``mask`` including 0 and ``mask``."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class _Search:
    def __init__(self, points, kinds):
        self.points = [_hom(p) for p in points or ()]
        self.kinds = kinds
        self._rigid = {}
        self._subsets = {}
        self._vsum = {}

    def vsum(self, counts):
        hit = self._vsum.get(counts)
        if hit is None:
            x = y = 0
            for c, k in zip(counts, self.kinds):
                x += c * k.x
                y += c * k.y
            hit = self._vsum[counts] = IntVec2(x, y)
        return hit

    def submultisets(self, counts, size):
        key = (counts, size)
        if key in self._subsets:
            return self._subsets[key]
        out = []

        def rec(i, left, acc):
            if i == len(counts):
                if left == 0:
                    out.append(tuple(acc))
                return
            for c in range(min(counts[i], left) + 1):
                acc.append(c)
                rec(i + 1, left - c, acc)
                acc.pop()

        rec(0, size, [])
        self._subsets[key] = out
        return out

    def rigid(self, S, E):
        key = (S, E)
        hit = self._rigid.get(key)
        if hit is not None:
            return hit
        res = []
        total = self.vsum(E)
        if not total.is_zero():
            root_dir = -total
            for p in _bits(S):
                for L in self.lined(S & ~(1 << p), E, self.points[p], total):
                    res.append(Rigid(self.points[p], root_dir, p, L, None, None, None, None))
            low = S & -S
            rest = S ^ low
            for sub in _submasks(rest):
                S1 = low | sub
                S2 = S ^ S1
                if not S2:
                    continue
                k1 = bin(S1).count("1")
                for E1 in self.submultisets(E, k1):
                    A = self.rigid(S1, E1)
                    if not A:
                        continue
                    E2 = tuple(a - b for a, b in zip(E, E1))
                    B = self.rigid(S2, E2)
                    for r1 in A:
                        for r2 in B:
                            hit2 = _intersect(r1.origin, r1.direction, r2.origin, r2.direction)
                            if hit2:
                                X, t1, t2 = hit2
                                res.append(Rigid(X, root_dir, None, None, r1, r2, t1, t2))
        self._rigid[key] = res
        return res

    def lined(self, S, E, anchor, w):
        n_ends = sum(E)
        if S == 0:
            if n_ends == 1:
                return [Lined(w, None, None, None, None, None)]
            return []
        for q in _bits(S):
            pq = self.points[q]
            dx, dy = pq[0] * anchor[2] - anchor[0] * pq[2], pq[1] * anchor[2] - anchor[1] * pq[2]
            if dx * w[1] - dy * w[0] == 0 and dx * w[0] + dy * w[1] > 0:
                raise GenericityError(f"marked point {_rat(pq)} lies on a ray from {_rat(anchor)}")
        res = []
        for S1 in _submasks(S):
            if not S1:
                continue
            S2 = S ^ S1
            k1 = bin(S1).count("1")
            for E1 in self.submultisets(E, k1):
                E2 = tuple(a - b for a, b in zip(E, E1))
                w2 = self.vsum(E2)
                if w2.is_zero():
                    continue
                for r in self.rigid(S1, E1):
                    hit = _intersect(anchor, w, r.origin, r.direction)
                    if not hit:
                        continue
                    X, t, s = hit
                    for L2 in self.lined(S2, E2, X, w2):
                        res.append(Lined(None, X, t, r, s, L2))
        return res


def _end_profiles(d, directions=PLANE_DIRECTIONS):
    """Every way of grouping d ends per direction into weighted ends."""

    def partitions(n, largest):
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in partitions(n - k, k):
                yield (k,) + rest

    profiles = [[]]
    for u in directions:
        profiles = [acc + [u * k for k in part] for acc in profiles for part in partitions(d, d)]
    return profiles


def _top_tasks(d, n):
    """(kinds, E, S_A, E_A) work items for the top-level split at point 0."""
    tasks = []
    for prof in _end_profiles(d):
        if len(prof) != n + 1:
            # fewer ends than 3d: the dimension count leaves no rigid curves
            continue
        kinds = sorted(set(prof))
        E = tuple(prof.count(k) for k in kinds)
        rest = ((1 << n) - 1) & ~1
        search = _Search(None, kinds)
        for SA in _submasks(rest):
            SB = rest ^ SA
            ka = bin(SA).count("1") + 1
            for EA in search.submultisets(E, ka):
                EB = tuple(a - b for a, b in zip(E, EA))
                if (SA, EA) < (SB, EB):
                    tasks.append((tuple(kinds), E, SA, EA))
    return tasks


class _Builder:
    def __init__(self, labels, points):
        self.labels = labels
        self.points = points
        self.vertices = [Vertex(f"p{lab}") for lab in labels]
        self.positions = {f"p{lab}": points[i] for i, lab in enumerate(labels)}
        self.edges = []
        self.lengths = {}
        self.unbounded = []
        self.mult = 1

    def new_vertex(self, pos):
        vid = f"v{len(self.vertices) - len(self.labels) + 1}"
        self.vertices.append(Vertex(vid))
        self.positions[vid] = _rat(pos)
        return vid

    def edge(self, tail, head, u, length):
        eid = f"e{len(self.edges) + 1}"
        self.edges.append(Edge(eid, tail, head, u))
        self.lengths[eid] = Fraction(*length)

    def rigid(self, r):
        if r.point is not None:
            vid = f"p{self.labels[r.point]}"
            self.lined(r.lined, vid, -r.direction)
            return vid
        vid = self.new_vertex(r.origin)
        self.mult *= abs(wedge(r.left.direction, r.right.direction))
        for child, t in ((r.left, r.tl), (r.right, r.tr)):
            cv = self.rigid(child)
            self.edge(cv, vid, child.direction, t)
        return vid

    def lined(self, L, anchor, w):
        if L.end is not None:
            self.unbounded.append((anchor, L.end))
            return
        vid = self.new_vertex(L.pos)
        self.mult *= abs(wedge(w, L.rigid.direction))
        self.edge(anchor, vid, w, L.t)
        cv = self.rigid(L.rigid)
        self.edge(cv, vid, L.rigid.direction, L.s)
        self.lined(L.rest, vid, w + L.rigid.direction)


def _run_tasks(points, labels, tasks):
    """Assemble curves for a batch of top-level tasks (runs in workers too)."""
    found = []
    searches = {}
    for kinds, E, SA, EA in tasks:
        kinds = [IntVec2(*k) for k in kinds]
        key = tuple(kinds)
        if key not in searches:
            searches[key] = _Search(points, kinds)
        search = searches[key]
        EB = tuple(a - b for a, b in zip(E, EA))
        SB = (((1 << len(points)) - 1) & ~1) ^ SA
        wA = search.vsum(EA)
        if wA.is_zero():
            continue
        LA = search.lined(SA, EA, search.points[0], wA)
        if not LA:
            continue
        LB = search.lined(SB, EB, search.points[0], -wA)
        for a in LA:
            for b in LB:
                bld = _Builder(labels, points)
                bld.lined(a, f"p{labels[0]}", wA)
                bld.lined(b, f"p{labels[0]}", -wA)
                found.append(bld)
    return [
        (tuple(b.vertices), tuple(b.edges), tuple(b.unbounded), b.positions, b.lengths, b.mult)
        for b in found
    ]


def enumerate_plane(d: int, config: PointConfig, threads: int = 1) -> list:
    """All rigid rational degree-``d`` plane tropical curves through ``config``.

    Returns :class:`MarkedCurve` objects sorted by canonical form.  Raises
    :class:`GenericityError` when the configuration turns out not to be
    generic.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    n = 3 * d - 1
    if len(config) != n:
        raise ValueError(f"degree {d} needs {n} points, got {len(config)}")
    if not config.mode.is_plane:
        raise ValueError("enumerate_plane works in Plane mode only")
    ordered = sorted(config.points)
    labels = [lab for lab, _ in ordered]
    points = [p for _, p in ordered]
    tasks = _top_tasks(d, n)

    if threads > 1 and len(tasks) > 1:
        batches = [tasks[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            raw = [c for part in pool.map(_run_tasks, [points] * threads, [labels] * threads, batches)
                   for c in part]
    else:
        raw = _run_tasks(points, labels, tasks)

    pts = config.as_dict()
    domain = Domain.plane()
    curves = {}
    for verts, edges, unb, positions, lengths, mult in raw:
        ctype = CombinatorialType(verts, edges, tuple((lab, f"p{lab}") for lab in labels), unb)
        _check_distinct_vertices(positions)
        real, dim = realize(ctype, domain, pts)
        if dim != 0 or real is None:
            raise GenericityError(
                f"curve {_short(canonical_form(ctype))} realizes with deformation dimension {dim}"
            )
        if real.positions != positions or real.lengths != lengths:
            raise AssertionError("ray construction disagrees with the continuity system")
        for v in ctype.vertices:
            if ctype.n_points(v.id) == 0 and ctype.valence(v.id) > 3:
                raise GenericityError(f"vertex {v.id} has valence {ctype.valence(v.id)}")
            if not balancing_defect(ctype, domain, v.id).is_zero():
                raise AssertionError(f"unbalanced vertex {v.id}")
        key = canonical_form(ctype)
        if key in curves:
            raise AssertionError("the search produced the same curve twice")
        curves[key] = MarkedCurve(ctype, real, mult)
    return [curves[k] for k in sorted(curves)]


def _check_distinct_vertices(positions):
    seen = {}
    for vid, p in positions.items():
        if p in seen:
            raise GenericityError(f"vertices {seen[p]} and {vid} coincide at {p}")
        seen[p] = vid


def count_nd(d: int, seed: int, threads: int = 1, curves_out: list | None = None) -> int:
    """Tropical count of degree-``d`` rational curves through 3d-1 points from ``seed``."""
    if d < 1:
        raise ValueError("degree must be positive")
    config = generic_config(3 * d - 1, seed)
    curves = enumerate_plane(d, config, threads=threads)
    if curves_out is not None:
        curves_out.extend(curves)
    total = sum(Fraction(c.multiplicity, aut_order(c.type)) for c in curves)
    if total.denominator != 1:
        raise AssertionError(f"non-integral tropical count {total}")
    return int(total)


@lru_cache(maxsize=None)
def kontsevich(d: int) -> int:
    """Number of rational degree-d plane curves through 3d-1 points (recursion)."""
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1:
        return 1
    total = 0
    for d1 in range(1, d):
        d2 = d - d1
        total += (
            kontsevich(d1) * kontsevich(d2) * d1 * d1 * d2
            * (d2 * comb(3 * d - 4, 3 * d1 - 2) - d1 * comb(3 * d - 4, 3 * d1 - 1))
        )
    return total


# -- canonical form --------------------------------------------------------


def _energy_str(energy):
    if energy is None:
        return None
    return [format_rat(x) for x in energy]


def _base_colors(ctype):
    cols = {}
    for v in ctype.vertices:
        cols[v.id] = json.dumps(
            [
                v.face.value,
                v.base_degree,
                _energy_str(v.energy),
                ctype.end_labels(v.id),
                sorted(ctype.unbounded_at(v.id)),
            ]
        )
    return cols


def _refine(ctype, colors):
    """Colour refinement; returns vertex -> rank with ranks 0..k-1."""
    ranks = _rank(colors)
    while True:
        sig = {}
        for v in ctype.vertices:
            nbr = sorted(
                (tuple(e.away_from(v.id)) if e.tail != e.head else (0, 0, 1), ranks[e.other(v.id)])
                for e in ctype.incident(v.id)
            )
            sig[v.id] = (ranks[v.id], tuple(nbr))
        new = _rank(sig)
        if len(set(new.values())) == len(set(ranks.values())):
            return new
        ranks = new


def _rank(colors):
    order = sorted(set(colors.values()))
    idx = {c: i for i, c in enumerate(order)}
    return {v: idx[c] for v, c in colors.items()}


def _encode(ctype, order):
    pos = {v: i for i, v in enumerate(order)}
    base = _base_colors(ctype)
    verts = [json.loads(base[v]) for v in order]
    edges = []
    for e in ctype.internal_edges:
        i, j, u = pos[e.tail], pos[e.head], e.derivative
        if i > j or (i == j and u < -u):
            i, j, u = j, i, -u
        edges.append([i, j, u.x, u.y])
    edges.sort()
    return json.dumps({"v": verts, "e": edges}, separators=(",", ":")).encode()


def canonical_form(ctype: CombinatorialType) -> bytes:
    """Byte string equal for two types iff they are isomorphic.

    Isomorphisms preserve end labels, faces, base degrees, vertex energies
    and edge derivatives up to simultaneous reversal and negation.
    """
    base = _base_colors(ctype)
    best = None

    def search(colors):
        nonlocal best
        ranks = _refine(ctype, colors)
        classes = {}
        for v, r in ranks.items():
            classes.setdefault(r, []).append(v)
        multi = [r for r, vs in classes.items() if len(vs) > 1]
        if not multi:
            order = sorted(ranks, key=ranks.get)
            enc = _encode(ctype, order)
            if best is None or enc < best:
                best = enc
            return
        r = min(multi)
        for v in sorted(classes[r]):
            cols = {u: (rk, 0) for u, rk in ranks.items()}
            cols[v] = (r, -1)
            search(cols)

    search(base)
    return best


def _short(key: bytes) -> str:
    return hashlib.sha256(key).hexdigest()[:12]
