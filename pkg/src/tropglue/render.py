"""Deterministic SVG pictures of tropical curves.

Output depends only on the curve and the point configuration: coordinates
are exact rationals rounded once, at the end, to two decimals.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .complex import CORNERS, Domain
from .errors import NotRigidError
from .tropical import CombinatorialType, realize

SIZE = 400  # triangle edge length in SVG units
MARGIN = 40
RAY = Fraction(1, 10)  # drawn length of unbounded ends, as a fraction of the frame
NUDGE = 8  # SVG offset between vertices sharing a position


def _num(x) -> str:
    s = f"{float(x):.2f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    """Model coordinates to SVG coordinates (y axis flipped)."""

    def __init__(self, lo_x, lo_y, span):
        self.lo_x, self.lo_y = lo_x, lo_y
        self.scale = Fraction(SIZE) / span
        self.ray = span * RAY

    def __call__(self, p):
        x = MARGIN + (Fraction(p[0]) - self.lo_x) * self.scale
        y = MARGIN + SIZE - (Fraction(p[1]) - self.lo_y) * self.scale
        return x, y


def _frame(domain, pts):
    if not domain.is_plane:
        return _Frame(Fraction(0), Fraction(0), Fraction(1))
    xs = [p[0] for p in pts] or [Fraction(0)]
    ys = [p[1] for p in pts] or [Fraction(0)]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or Fraction(1)
    pad = span * Fraction(1, 2)
    return _Frame(min(xs) - pad, min(ys) - pad, span + 2 * pad)


def render_svg(ctype: CombinatorialType, domain: Domain, points) -> str:
    real, dim = realize(ctype, domain, points)
    if real is None:
        raise NotRigidError("curve has no realization through these points")
    pos = real.positions
    frame = _frame(domain, list(pos.values()))

    # spread vertices that share a model position
    by_spot = defaultdict(list)
    for v in ctype.vertices:
        by_spot[pos[v.id]].append(v.id)
    screen = {}
    for spot, vids in by_spot.items():
        x, y = frame(spot)
        for k, vid in enumerate(vids):
            screen[vid] = (x + NUDGE * k, y - NUDGE * k)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE + 2 * MARGIN}" '
        f'height="{SIZE + 2 * MARGIN}" viewBox="0 0 {SIZE + 2 * MARGIN} {SIZE + 2 * MARGIN}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if domain.is_plane:
        ox, oy = frame((0, 0))
        out.append(f'<line x1="{MARGIN}" y1="{_num(oy)}" x2="{SIZE + MARGIN}" y2="{_num(oy)}" stroke="#bbb"/>')
        out.append(f'<line x1="{_num(ox)}" y1="{MARGIN}" x2="{_num(ox)}" y2="{SIZE + MARGIN}" stroke="#bbb"/>')
    else:
        corners = [frame(c) for c in CORNERS.values()]
        pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in corners)
        out.append(f'<polygon points="{pts}" fill="none" stroke="#888"/>')
        for face, c in CORNERS.items():
            x, y = frame(c)
            n = sum(ctype.n_points(v.id) for v in ctype.vertices if pos[v.id] == c)
            out.append(
                f'<text x="{_num(x - 30)}" y="{_num(y + 20)}" font-size="12">{face} ({n})</text>'
            )

    for e in ctype.internal_edges:
        (x1, y1), (x2, y2) = screen[e.tail], screen[e.head]
        out.append(
            f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
            f'stroke="black" stroke-width="2"><title>{e.id} {tuple(e.derivative)}</title></line>'
        )
    for vid, u in ctype.unbounded_ends:
        x1, y1 = screen[vid]
        x2, y2 = frame(pos[vid].shifted(u, frame.ray))
        dx, dy = x2 - frame(pos[vid])[0], y2 - frame(pos[vid])[1]
        out.append(
            f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x1 + dx)}" y2="{_num(y1 + dy)}" '
            f'stroke="black" stroke-dasharray="4 3"/>'
        )
    for v in ctype.vertices:
        x, y = screen[v.id]
        labels = ctype.end_labels(v.id)
        fill = "crimson" if labels else "black"
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="4" fill="{fill}"><title>{v.id}</title></circle>')
        if labels:
            text = ",".join(f"p{i}" for i in sorted(labels))
            out.append(f'<text x="{_num(x + 6)}" y="{_num(y - 6)}" font-size="11">{text}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
