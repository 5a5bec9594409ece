"""Property suite and acceptance checks run by ``tropglue check``."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from pathlib import Path

from .enumeration import count_nd, generic_config, kontsevich
from .glue import EnergyVec, NovikovPoly, evaluate_curve, plane_config, total
from .io import load_curves, load_table, parse_curve
from .lattice import IntVec2, wedge
from .render import render_svg
from .tropical import realize

KONTSEVICH = {1: 1, 2: 1, 3: 12, 4: 620, 5: 87304}
TARGET_SECONDS = {1: 1, 2: 30, 3: 300, 4: 3600}


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def data_path(*parts):
    return Path(__file__).with_name("data").joinpath(*parts)


def corner_example(table_path=None):
    docs = load_curves(data_path("cp2-corner", "curves.json"))
    table = load_table(table_path or data_path("cp2-corner", "table.json"))
    return docs, table


def twisted_example():
    (doc,) = load_curves(data_path("twisted", "curve.json"))
    return doc, load_table(data_path("twisted", "table.json"))


def continuity_holds(ctype, domain, points) -> bool:
    real, _ = realize(ctype, domain, points)
    if real is None:
        return False
    pos, lengths = real.positions, real.lengths
    for e in ctype.internal_edges:
        if pos[e.head] != pos[e.tail].shifted(e.derivative, lengths[e.id]):
            return False
    return all(pos[v] == points[i] for i, v in ctype.labeled_ends)


def root_values(cfg) -> set:
    return {evaluate_curve(cfg, root=v.id) for v in cfg.type.vertices}


# -- individual checks -------------------------------------------------------


def check_wedge(n=1000, seed=0):
    rng = random.Random(seed)
    r = lambda: IntVec2(rng.randint(-50, 50), rng.randint(-50, 50))
    for _ in range(n):
        u, v, w = r(), r(), r()
        a, b = rng.randint(-9, 9), rng.randint(-9, 9)
        if wedge(u, v) != -wedge(v, u) or wedge(u, u) != 0:
            return CheckResult("wedge antisymmetry/bilinearity", False, f"u={u} v={v}")
        if wedge(u * a + v * b, w) != a * wedge(u, w) + b * wedge(v, w):
            return CheckResult("wedge antisymmetry/bilinearity", False, f"u={u} v={v} w={w}")
    return CheckResult("wedge antisymmetry/bilinearity", True, f"{n} random triples")


def check_trivalent(n=1000, seed=1):
    rng = random.Random(seed)
    for _ in range(n):
        u1 = IntVec2(rng.randint(-40, 40), rng.randint(-40, 40))
        u2 = IntVec2(rng.randint(-40, 40), rng.randint(-40, 40))
        u3 = -(u1 + u2)
        vals = {abs(wedge(u1, u2)), abs(wedge(u2, u3)), abs(wedge(u3, u1))}
        if len(vals) != 1:
            return CheckResult("trivalent wedge symmetry", False, f"{u1} {u2} {u3}")
    return CheckResult("trivalent wedge symmetry", True, f"{n} balanced triples")


def check_counts(degrees=(1, 2, 3), seeds=range(5), curves=None):
    """Enumeration against the recursion oracle; ``curves`` collects seed-0 curves."""
    out = []
    for d in degrees:
        oracle = kontsevich(d)
        worst, bad = 0.0, []
        for s in seeds:
            cs = []
            t = time.perf_counter()
            n = count_nd(d, s, curves_out=cs)
            worst = max(worst, time.perf_counter() - t)
            if n != oracle:
                bad.append(f"seed {s}: {n}")
            if curves is not None and s == seeds[0]:
                curves[d] = (generic_config(3 * d - 1, s), cs)
        detail = f"N={oracle}, {len(seeds)} seeds, slowest {worst:.1f}s (target {TARGET_SECONDS[d]}s)"
        out.append(CheckResult(f"count d={d} matches kontsevich", not bad, "; ".join(bad) or detail))
        out.append(CheckResult(f"count d={d} runtime", worst <= TARGET_SECONDS[d], f"{worst:.1f}s"))
    return out


def check_oracle_values():
    got = {d: kontsevich(d) for d in KONTSEVICH}
    return CheckResult("kontsevich recursion 1,1,12,620,87304", got == KONTSEVICH, str(got))


def check_plane_curves(curves):
    cont, roots = True, True
    n = 0
    for d, (cfg, cs) in sorted(curves.items()):
        pts = cfg.as_dict()
        for c in cs:
            n += 1
            cont &= continuity_holds(c.type, cfg.mode, pts)
            g = plane_config(c, pts)
            roots &= root_values(g) == {NovikovPoly.monomial(c.multiplicity)}
    return [
        CheckResult("continuity equations exact (plane curves)", cont, f"{n} curves"),
        CheckResult("root independence and bridge to multiplicity", roots, f"{n} curves"),
    ]


def check_corner(table_path=None):
    docs, table = corner_example(table_path)
    expect_e = EnergyVec(3, 3, 3)
    results = []
    vals = []
    homog, roots, cont = True, True, True
    for doc in docs:
        cfg = doc.gluing_config(table)
        rv = root_values(cfg)
        roots &= len(rv) == 1
        val = rv.pop()
        vals.append(val)
        homog &= len(val.terms) == 1 and set(val.terms) == {expect_e}
        cont &= continuity_holds(doc.type, doc.domain, doc.points.as_dict())
    want = [NovikovPoly.monomial(3, expect_e)] + [NovikovPoly.monomial(1, expect_e)] * 9
    results.append(CheckResult(
        "corner example: pictured 3, other nine 1",
        vals == want,
        ", ".join(str(v) for v in vals) if vals != want else "",
    ))
    tot = total(d.gluing_config(table) for d in docs)
    results.append(CheckResult("corner example total 12·q^(3E12+3E13+3E23)",
                               tot == NovikovPoly.monomial(12, expect_e), str(tot)))
    results.append(CheckResult("energy homogeneity 3(E12+E13+E23)", homog,
                               "" if homog else ", ".join(str(v) for v in vals)))
    results.append(CheckResult("root independence (corner example)", roots))
    results.append(CheckResult("continuity equations exact (corner example)", cont))
    return results


def check_twisted():
    doc, table = twisted_example()
    cfg = doc.gluing_config(table)
    tot = total([cfg])
    rv = root_values(cfg)
    ins = [e.derivative for e in doc.type.internal_edges]
    w = abs(wedge(*ins))
    return [
        CheckResult("twisted example total 3", tot == 3 and rv == {NovikovPoly.monomial(3)}, str(tot)),
        CheckResult("twisted interior wedge 3", w == 3, str(w)),
    ]


def check_zero_edge():
    docs, table = corner_example()
    doc = docs[0]
    raw = {
        "domain": {"mode": "Triangle"},
        "points": [{"label": i, "x": str(p.x), "y": str(p.y)} for i, p in doc.points.points],
        "vertices": [{"id": v.id, "face": v.face.value} for v in doc.type.vertices]
        + [{"id": "z", "face": "INT"}],
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "dx": e.derivative.x, "dy": e.derivative.y}
            for e in doc.type.internal_edges
        ] + [{"id": "ez", "tail": "c", "head": "z", "dx": 0, "dy": 0}],
        "ends": [{"label": i, "vertex": v} for i, v in doc.type.labeled_ends],
    }
    zdoc = parse_curve(raw)
    val = evaluate_curve(zdoc.gluing_config(table))
    return CheckResult("zero-derivative edge gives 0", val.is_zero(), str(val))


def check_svg():
    docs, _ = corner_example()
    doc = docs[0]
    a = render_svg(doc.type, doc.domain, doc.points.as_dict())
    b = render_svg(doc.type, doc.domain, doc.points.as_dict())
    shape = a.count("<circle") == 4 and a.count('stroke-width="2"') == 3
    return CheckResult("svg byte-identical", a == b and shape, f"{len(a)} bytes")


def run_all(table_path=None, seeds=range(5), degrees=(1, 2, 3)) -> list:
    results = [check_wedge(), check_trivalent(), check_oracle_values()]
    curves = {}
    results += check_counts(degrees, list(seeds), curves)
    results += check_plane_curves(curves)
    results += check_corner(table_path)
    results += check_twisted()
    results.append(check_zero_edge())
    results.append(check_svg())
    return results
