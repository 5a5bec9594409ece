import random
from collections import Counter

import pytest

from tropglue.enumeration import (
    PointConfig, canonical_form, count_nd, enumerate_plane, generic_config, kontsevich,
)
from tropglue.errors import GenericityError
from tropglue.lattice import IntVec2, RatPoint, primitive_decompose, wedge
from tropglue.tropical import Edge, CombinatorialType, balancing_defect, genus


def test_kontsevich_values():
    assert [kontsevich(d) for d in range(1, 6)] == [1, 1, 12, 620, 87304]
    with pytest.raises(ValueError):
        kontsevich(0)


def test_generic_config_deterministic():
    a, b = generic_config(8, 3), generic_config(8, 3)
    assert a == b and a != generic_config(8, 4)
    assert [i for i, _ in a.points] == list(range(1, 9))


def test_line_through_two_points():
    (c,) = enumerate_plane(1, generic_config(2, 0))
    assert c.multiplicity == 1
    dirs = Counter(u for _, u in c.type.unbounded_ends)
    assert dirs == Counter({IntVec2(-1, 0): 1, IntVec2(0, -1): 1, IntVec2(1, 1): 1})


@pytest.mark.parametrize(
    "pts", [((1, (0, 0)), (2, (1, 0))), ((1, (0, 0)), (2, (3, 3))), ((1, (0, 0)), (2, (0, -5)))]
)
def test_non_generic_line(pts):
    with pytest.raises(GenericityError):
        enumerate_plane(1, PointConfig(tuple((i, RatPoint.of(*p)) for i, p in pts)))


def test_bad_arguments():
    with pytest.raises(ValueError):
        count_nd(0, 0)
    with pytest.raises(ValueError):
        enumerate_plane(2, generic_config(4, 0))


def test_counts_match_oracle(plane_runs):
    for (d, s), (_, n, _) in plane_runs.items():
        assert n == kontsevich(d), (d, s)


def test_curve_shape(plane_runs):
    """Degree, valence, balancing and genus of every enumerated curve."""
    for (d, s), (cfg, _, curves) in plane_runs.items():
        for c in curves:
            t = c.type
            assert genus(t) == 0
            dirs = Counter()
            for _, u in t.unbounded_ends:
                k, u0 = primitive_decompose(u)
                dirs[u0] += k
            assert dirs == {IntVec2(-1, 0): d, IntVec2(0, -1): d, IntVec2(1, 1): d}
            mult = 1
            for v in t.vertices:
                assert balancing_defect(t, cfg.mode, v.id).is_zero()
                if t.n_points(v.id):
                    assert t.n_points(v.id) == 1 and t.valence(v.id) == 2
                else:
                    assert t.valence(v.id) == 3
                    u = t.away_derivatives(v.id)
                    mult *= abs(wedge(u[0], u[1]))
            assert mult == c.multiplicity


def test_canonical_form_relabel_invariant(plane_runs):
    rng = random.Random(5)
    _, _, curves = plane_runs[3, 0]
    for c in curves:
        t = c.type
        ids = [v.id for v in t.vertices]
        new = [f"x{k}" for k in range(len(ids))]
        rng.shuffle(new)
        vmap = dict(zip(ids, new))
        # also flip every edge
        flipped = CombinatorialType(
            t.vertices, tuple(e.reversed() for e in t.internal_edges), t.labeled_ends, t.unbounded_ends
        )
        assert canonical_form(t.relabeled(vmap)) == canonical_form(t) == canonical_form(flipped)
    assert len({c.canonical for c in curves}) == len(curves)


def test_canonical_form_distinguishes_labels(plane_runs):
    (c,) = plane_runs[1, 0][2]
    t = c.type
    swapped = CombinatorialType(t.vertices, t.internal_edges, tuple((3 - i, v) for i, v in t.labeled_ends),
                                t.unbounded_ends)
    assert canonical_form(swapped) != canonical_form(t)


def test_threads_do_not_change_output(plane_runs):
    cfg, _, curves = plane_runs[3, 1]
    par = enumerate_plane(3, cfg, threads=2)
    assert [c.canonical for c in par] == [c.canonical for c in curves]
    assert [c.multiplicity for c in par] == [c.multiplicity for c in curves]
