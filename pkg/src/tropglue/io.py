"""JSON curve and table files.

Curve documents::

    {"domain": {"mode": "Triangle", "twist": [1, -2]},
     "points": [{"label": 1, "x": "0", "y": "1/3"}, ...],
     "vertices": [{"id": "a", "face": "C1", "base_degree": 0}, ...],
     "edges": [{"id": "e1", "tail": "a", "head": "b", "dx": 1, "dy": 1}, ...],
     "ends": [{"label": 1, "vertex": "a"}, ...],
     "unbounded": [{"vertex": "a", "dx": -1, "dy": 0}, ...]}

A file holds one such document or ``{"curves": [...]}``; top-level
``domain``/``points`` are shared defaults for the listed curves.

Table files are a list of entries
``{"face", "contacts": [[{"divisor", "order"}, ...], ...], "n_points",
"coeff", "energy": {"e12", "e13", "e23"}}`` with one inner contact list per
non-contracted edge at the vertex.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .complex import DIVISORS, ContactData, Domain, FaceId, Mode
from .enumeration import PointConfig
from .errors import FormatError
from .glue import EnergyVec, GluingConfig, VertexInvariantTable, table_key
from .lattice import RatPoint, format_rat, to_rat
from .tropical import CombinatorialType, Edge, Vertex


@dataclass
class CurveDoc:
    name: str
    type: CombinatorialType
    points: PointConfig
    domain: Domain

    def gluing_config(self, table: VertexInvariantTable | None = None) -> GluingConfig:
        return GluingConfig(self.type, self.points.as_dict(), table or VertexInvariantTable(), self.domain)


def _rat(value, what):
    if isinstance(value, float):
        raise FormatError(f"{what}: floating point value {value!r}; write it as 'p/q'")
    try:
        return to_rat(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{what}: {exc}") from None


def _int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{what}: expected an integer, got {value!r}")
    return value


def _need(obj, key, what):
    try:
        return obj[key]
    except (KeyError, TypeError):
        raise FormatError(f"{what}: missing field {key!r}") from None


def parse_domain(obj) -> Domain:
    if obj is None:
        return Domain.triangle()
    try:
        mode = Mode(obj.get("mode", "Triangle"))
    except ValueError:
        raise FormatError(f"unknown domain mode {obj.get('mode')!r}") from None
    twist = obj.get("twist", [0, 0])
    if isinstance(twist, dict):
        twist = [twist.get("dx", 0), twist.get("dy", 0)]
    twist = [_int(t, "twist") for t in twist]
    try:
        return Domain(mode, tuple(twist))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_points(items, domain) -> PointConfig:
    pts = []
    for item in items or []:
        label = _int(_need(item, "label", "point"), "point label")
        pts.append((label, RatPoint(_rat(_need(item, "x", "point"), f"p{label}.x"),
                                    _rat(_need(item, "y", "point"), f"p{label}.y"))))
    try:
        return PointConfig(tuple(pts), domain)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_energy(obj) -> EnergyVec:
    if obj is None:
        return EnergyVec()
    try:
        return EnergyVec(*(_rat(obj.get(k, 0), f"energy.{k}") for k in ("e12", "e13", "e23")))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_curve(doc, defaults=None) -> CurveDoc:
    defaults = defaults or {}
    domain = parse_domain(doc.get("domain", defaults.get("domain")))
    points = parse_points(doc.get("points", defaults.get("points")), domain)
    verts = []
    for v in _need(doc, "vertices", "curve"):
        energy = v.get("energy")
        try:
            verts.append(
                Vertex(
                    str(_need(v, "id", "vertex")),
                    FaceId(v.get("face", "INT")),
                    _int(v.get("base_degree", 0), "base_degree"),
                    None if energy is None else tuple(
                        getattr(parse_energy(energy), k) for k in ("e12", "e13", "e23")
                    ),
                )
            )
        except ValueError as exc:
            raise FormatError(f"vertex {v.get('id')!r}: {exc}") from None
    edges = [
        Edge(
            str(_need(e, "id", "edge")),
            str(_need(e, "tail", "edge")),
            str(_need(e, "head", "edge")),
            (_int(_need(e, "dx", "edge"), "dx"), _int(_need(e, "dy", "edge"), "dy")),
        )
        for e in doc.get("edges", [])
    ]
    ends = [(_int(_need(x, "label", "end"), "end label"), str(_need(x, "vertex", "end")))
            for x in doc.get("ends", [])]
    unb = [
        (str(_need(x, "vertex", "unbounded")), (_int(_need(x, "dx", "unbounded"), "dx"),
                                                _int(_need(x, "dy", "unbounded"), "dy")))
        for x in doc.get("unbounded", [])
    ]
    if unb and not domain.is_plane:
        raise FormatError("unbounded ends are only allowed in Plane mode")
    try:
        ctype = CombinatorialType(tuple(verts), tuple(edges), tuple(ends), tuple(unb))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return CurveDoc(str(doc.get("name", "")), ctype, points, domain)


def load_curves(path) -> list:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    if isinstance(data, list):
        return [parse_curve(d) for d in data]
    if "curves" in data:
        defaults = {k: data[k] for k in ("domain", "points") if k in data}
        return [parse_curve(d, defaults) for d in data["curves"]]
    return [parse_curve(data)]


def curve_to_dict(doc: CurveDoc) -> dict:
    ctype, dom = doc.type, doc.domain
    out = {}
    if doc.name:
        out["name"] = doc.name
    out["domain"] = {"mode": dom.mode.value}
    if not dom.twist.is_zero():
        out["domain"]["twist"] = [dom.twist.x, dom.twist.y]
    out["points"] = [
        {"label": i, "x": format_rat(p.x), "y": format_rat(p.y)} for i, p in doc.points.points
    ]
    verts = []
    for v in ctype.vertices:
        item = {"id": v.id, "face": v.face.value}
        if v.base_degree:
            item["base_degree"] = v.base_degree
        if v.energy is not None:
            item["energy"] = dict(zip(("e12", "e13", "e23"), map(format_rat, v.energy)))
        verts.append(item)
    out["vertices"] = verts
    out["edges"] = [
        {"id": e.id, "tail": e.tail, "head": e.head, "dx": e.derivative.x, "dy": e.derivative.y}
        for e in ctype.internal_edges
    ]
    out["ends"] = [{"label": i, "vertex": v} for i, v in ctype.labeled_ends]
    if ctype.unbounded_ends:
        out["unbounded"] = [{"vertex": v, "dx": u.x, "dy": u.y} for v, u in ctype.unbounded_ends]
    return out


def dump_curves(docs, path=None) -> str:
    text = json.dumps({"curves": [curve_to_dict(d) for d in docs]}, indent=1)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


# -- tables ----------------------------------------------------------------


def _parse_contact(edge_contacts, what) -> ContactData:
    if isinstance(edge_contacts, dict):
        items = list(edge_contacts.items())
    else:
        items = [(_need(c, "divisor", what), _need(c, "order", what)) for c in edge_contacts]
    cd = ContactData()
    for div, order in items:
        if div not in DIVISORS:
            raise FormatError(f"{what}: unknown divisor {div!r}")
        if div in cd:
            raise FormatError(f"{what}: divisor {div} listed twice")
        cd[div] = _int(order, f"{what} order")
    return cd


def parse_table(entries) -> VertexInvariantTable:
    table = VertexInvariantTable()
    for n, entry in enumerate(entries):
        what = f"table entry {n}"
        try:
            face = FaceId(_need(entry, "face", what))
        except ValueError:
            raise FormatError(f"{what}: unknown face {entry.get('face')!r}") from None
        contacts = [_parse_contact(c, what) for c in entry.get("contacts", [])]
        n_points = _int(entry.get("n_points", 0), f"{what} n_points")
        key = table_key(face, contacts, n_points)
        if key in table:
            raise FormatError(f"{what}: duplicate key {key}")
        table.add(face, contacts, n_points, _rat(entry.get("coeff", 1), f"{what} coeff"),
                  parse_energy(entry.get("energy")))
    return table


def load_table(path) -> VertexInvariantTable:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    if isinstance(data, dict):
        data = data.get("entries", [])
    return parse_table(data)


def table_to_list(table: VertexInvariantTable) -> list:
    out = []
    for (face, profile, n_points), terms in sorted(table.entries.items()):
        for coeff, energy in terms:
            out.append({
                "face": face,
                "contacts": [[{"divisor": d, "order": o} for d, o in c] for c in profile],
                "n_points": n_points,
                "coeff": format_rat(coeff),
                "energy": {k: format_rat(getattr(energy, k)) for k in ("e12", "e13", "e23")},
            })
    return out
