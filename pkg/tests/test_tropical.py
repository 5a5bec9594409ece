from fractions import Fraction
from collections import defaultdict
from itertools import permutations, product

import pytest

from tropglue.complex import Domain, FaceId
from tropglue.errors import DisconnectedError, FaceMismatchError, OutOfDomainError
from tropglue.lattice import RatPoint
from tropglue.tropical import (
    CombinatorialType, Edge, Vertex, aut_order, balancing_defect, genus, is_rigid, realize,
    vertex_automorphisms,
)

F = Fraction
PLANE = Domain.plane()


def pictured(corner):
    docs, _ = corner
    return docs[0]


def test_pictured_realization(corner):
    doc = pictured(corner)
    real, dim = realize(doc.type, doc.domain, doc.points.as_dict())
    assert dim == 0
    assert real.positions["c"] == RatPoint(F(1, 3), F(1, 3))
    assert set(real.lengths.values()) == {F(1, 3)}
    assert is_rigid(doc.type, doc.domain, doc.points.as_dict())


def test_free_edge_has_one_modulus():
    t = CombinatorialType(
        (Vertex("a"), Vertex("b")), (Edge("e", "a", "b", (1, 0)),), ((1, "a"),),
        (("a", (-1, 0)), ("b", (1, 0))),
    )
    real, dim = realize(t, PLANE, {1: RatPoint(0, 0)})
    assert dim == 1 and real.lengths["e"] > 0
    assert not is_rigid(t, PLANE, {1: RatPoint(0, 0)})


def test_negative_length_is_infeasible():
    t = CombinatorialType(
        (Vertex("a"), Vertex("b")), (Edge("e", "a", "b", (1, 0)),), ((1, "a"), (2, "b")),
    )
    real, dim = realize(t, PLANE, {1: RatPoint(1, 0), 2: RatPoint(0, 0)})
    assert real is None and dim == 0


def test_face_mismatch():
    t = CombinatorialType((Vertex("a", FaceId.C1),), (), ((1, "a"),))
    with pytest.raises(FaceMismatchError):
        realize(t, Domain.triangle(), {1: RatPoint(1, 0)})
    with pytest.raises(OutOfDomainError):
        realize(t, Domain.triangle(), {1: RatPoint(2, 0)})


def test_balancing_and_genus():
    t = CombinatorialType(
        (Vertex("a"), Vertex("b")),
        (Edge("e1", "a", "b", (1, 0)), Edge("e2", "a", "b", (1, 0))),
        (),
        (("a", (-2, 0)), ("b", (2, 0))),
    )
    assert genus(t) == 1
    assert balancing_defect(t, PLANE, "a").is_zero()
    assert aut_order(t) == 2  # the two parallel edges swap


def test_twisted_balancing(twisted):
    doc, _ = twisted
    assert balancing_defect(doc.type, doc.domain, "c").is_zero()
    assert not balancing_defect(doc.type, Domain.triangle(), "c").is_zero()


def test_disconnected():
    t = CombinatorialType((Vertex("a"), Vertex("b")), (), ())
    with pytest.raises(DisconnectedError):
        genus(t)


def brute_force_auts(t):
    vids = [v.id for v in t.vertices]
    deco = {
        v.id: (v.face, tuple(t.end_labels(v.id)), tuple(sorted(t.unbounded_at(v.id)))) for v in t.vertices
    }

    def arcs(s):
        out = []
        for e in t.internal_edges:
            a, b, d = s[e.tail], s[e.head], e.derivative
            if b < a:
                a, b, d = b, a, -d
            out.append((a, b, d))
        return sorted(out)

    base = arcs({v: v for v in vids})
    groups = defaultdict(list)
    for v in vids:
        groups[deco[v]].append(v)
    groups = list(groups.values())
    n = 0
    for choice in product(*(permutations(g) for g in groups)):
        s = {v: w for g, img in zip(groups, choice) for v, w in zip(g, img)}
        if arcs(s) == base:
            n += 1
    return n


def test_automorphisms_brute_force():
    # a symmetric star: centre with three unlabeled leaves, two of them alike
    t = CombinatorialType(
        (Vertex("c"), Vertex("x"), Vertex("y"), Vertex("z")),
        (Edge("e1", "c", "x", (1, 0)), Edge("e2", "c", "y", (1, 0)), Edge("e3", "c", "z", (-2, 0))),
        (),
        (("x", (1, 0)), ("y", (1, 0)), ("z", (-2, 0))),
    )
    assert sum(1 for _ in vertex_automorphisms(t)) == brute_force_auts(t) == 2


def test_automorphisms_on_enumerated(plane_runs):
    for (d, s), (_, _, curves) in plane_runs.items():
        if s:
            continue
        for c in curves:
            assert aut_order(c.type) == brute_force_auts(c.type) == 1


def test_labels_must_be_contiguous():
    with pytest.raises(ValueError):
        CombinatorialType((Vertex("a"),), (), ((2, "a"),))
