"""SVG figures for the row model and for heptagrid regions.

The disc view is combinatorial, not an exact isometry: every tile gets an
angular interval inside its father's, weighted by the asymptotic growth of
its subtree (1 for black, the golden ratio for white), and a ring of radii
``tanh(rho / 2)`` at its relative level.  Adjacent tiles are drawn with
touching outlines, which is all the figures need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import escape

from .euclid import PHANTOM, RowWindow, Trilateral, enumerate_trilaterals
from .heptagrid import CENTRAL, Cell, Region, is_black, sons

PHI = (1 + 5 ** 0.5) / 2
GEN_COLORS = ("#3b6fb6", "#c0392b", "#2e86c1", "#a93226", "#1f618d", "#922b21",
              "#154360", "#7b241c")
RING = 0.55  # hyperbolic thickness of one level in the disc view
SIZE = 800


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _svg(width: float, height: float, body: list[str], view: str) -> str:
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_num(width)}" height="{_num(height)}" viewBox="{view}">\n')
    return head + "".join(f"  {line}\n" for line in body) + "</svg>\n"


def gen_color(generation: int) -> str:
    return GEN_COLORS[generation % len(GEN_COLORS)]


def render_euclid(window: RowWindow, mode: str = "vertex", scale: float = 10.0) -> str:
    """One polyline per trilateral: legs and, for triangles, the basis."""
    tris = enumerate_trilaterals(window, mode)
    span = max((t.height_rows for t in tris), default=1)
    width = 2 * span + 2
    rows = window.end_row - window.start_row
    body = []
    for t in tris:
        h = t.height_rows
        top, base = t.vertex_row - window.start_row, t.basis_row - window.start_row
        pts = [(-h, base), (0, top), (h, base)]
        if t.kind != PHANTOM:
            pts.append((-h, base))
        coords = " ".join(f"{_num((x + width / 2) * scale)},{_num(y * scale)}" for x, y in pts)
        dash = ' stroke-dasharray="4 3"' if t.kind == PHANTOM else ""
        body.append(f'<polyline class="trilateral gen{t.generation} {t.kind}" points="{coords}" '
                    f'fill="none" stroke="{gen_color(t.generation)}"{dash}/>')
    w, hgt = width * scale, max(rows + span * 2, 1) * scale
    return _svg(w, hgt, body, f"0 {_num(-scale)} {_num(w)} {_num(hgt + scale)}")


@dataclass
class RenderSpec:
    """What to draw over a heptagrid region.  Empty overlays draw tiles only."""
    region: Region
    trilaterals: Sequence = ()
    path: Sequence[Cell] = ()
    beta: Iterable[Cell] = ()
    green: Sequence[Sequence[Cell]] = ()
    mauves: Sequence = ()
    low_points: bool = False
    size: int = SIZE
    extra: dict = field(default_factory=dict)


def _weight(cell: Cell) -> float:
    return 1.0 if is_black(cell) else PHI


def layout(region: Region) -> dict[Cell, tuple[float, float, int]]:
    """Angular interval (a0, a1) and relative level of every tile of the region."""
    out: dict[Cell, tuple[float, float, int]] = {}
    base = region.min_depth
    if CENTRAL in region:
        out[CENTRAL] = (0.0, 2 * math.pi, 0)
        tops = sons(CENTRAL)
        base = -1
    else:
        tops = region.level(region.min_depth)
    total = sum(_weight(c) for c in tops) or 1.0
    a = 0.0
    stack = []
    for c in tops:
        w = 2 * math.pi * _weight(c) / total
        stack.append((c, a, a + w))
        a += w
    while stack:
        c, a0, a1 = stack.pop()
        if c not in region:
            continue
        out[c] = (a0, a1, c.depth - base)
        ss = sons(c)
        tw = sum(_weight(s) for s in ss)
        x = a0
        for s in ss:
            w = (a1 - a0) * _weight(s) / tw
            stack.append((s, x, x + w))
            x += w
    return out


def _radius(level: float) -> float:
    return math.tanh(RING * level / 2)


def _polygon(a0: float, a1: float, level: int, size: float) -> str:
    half = size / 2
    if a1 - a0 >= 2 * math.pi - 1e-9 and level == 0:
        r = _radius(0.5)
        pts = [(r * math.cos(2 * math.pi * k / 7), r * math.sin(2 * math.pi * k / 7)) for k in range(7)]
    else:
        r0, r1 = _radius(level - 0.5 if level else 0), _radius(level + 0.5)
        steps = max(2, min(8, int((a1 - a0) * 8) + 2))
        outer = [(r1 * math.cos(a0 + (a1 - a0) * i / steps), r1 * math.sin(a0 + (a1 - a0) * i / steps))
                 for i in range(steps + 1)]
        inner = [(r0 * math.cos(a1 - (a1 - a0) * i / steps), r0 * math.sin(a1 - (a1 - a0) * i / steps))
                 for i in range(steps + 1)]
        pts = outer + inner
    return " ".join(f"{_num(half + half * x)},{_num(half + half * y)}" for x, y in pts)


def _center(a0: float, a1: float, level: int, size: float) -> tuple[float, float]:
    half = size / 2
    if level == 0 and a1 - a0 >= 2 * math.pi - 1e-9:
        return half, half
    r, a = _radius(level), (a0 + a1) / 2
    return half + half * r * math.cos(a), half + half * r * math.sin(a)


def render_heptagrid(spec: RenderSpec) -> str:
    lay = layout(spec.region)
    size = spec.size
    body = ['<g class="tiles" stroke="#555" stroke-width="0.3">']
    tri_fill: dict[Cell, str] = {}
    for t in spec.trilaterals:
        for c in spec.region.cells:
            if t.contains(c):
                tri_fill.setdefault(c, gen_color(t.generation))
    beta = set(spec.beta)
    for c in sorted(lay):
        a0, a1, lvl = lay[c]
        fill = "#222" if is_black(c) else "#eee"
        if c in tri_fill:
            fill = tri_fill[c]
        if c in beta:
            fill = "#e67e22"
        body.append(f'<polygon class="tile" data-cell="{escape(str(c))}" '
                    f'points="{_polygon(a0, a1, lvl, size)}" fill="{fill}"/>')
    body.append("</g>")
    for seg in spec.green:
        pts = [_center(*lay[c], size) for c in seg if c in lay]
        if pts:
            body.append('<polyline class="green" fill="none" stroke="#27ae60" stroke-width="2" points="'
                        + " ".join(f"{_num(x)},{_num(y)}" for x, y in pts) + '"/>')
    for m in spec.mauves:
        for leg in (m.left_leg(), m.right_leg()):
            pts = [_center(*lay[c], size) for c in leg if c in lay]
            if len(pts) > 1:
                body.append('<polyline class="mauve" fill="none" stroke="#8e44ad" stroke-width="1.5" points="'
                            + " ".join(f"{_num(x)},{_num(y)}" for x, y in pts) + '"/>')
        if spec.low_points:
            for c in m.low_points():
                if c in lay:
                    x, y = _center(*lay[c], size)
                    body.append(f'<circle class="low-point" cx="{_num(x)}" cy="{_num(y)}" r="3" fill="#8e44ad"/>')
    if spec.path:
        pts = [_center(*lay[c], size) for c in spec.path if c in lay]
        body.append('<polyline class="path" fill="none" stroke="#d35400" stroke-width="0.8" '
                    'marker-end="url(#arrow)" points="'
                    + " ".join(f"{_num(x)},{_num(y)}" for x, y in pts) + '"/>')
        body.insert(0, '<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" '
                       'markerWidth="4" markerHeight="4" orient="auto-start-reverse">'
                       '<path d="M 0 0 L 10 5 L 0 10 z" fill="#d35400"/></marker></defs>')
    body.insert(0, f'<circle class="disc" cx="{_num(size / 2)}" cy="{_num(size / 2)}" '
                   f'r="{_num(size / 2)}" fill="none" stroke="#999"/>')
    return _svg(size, size, body, f"0 0 {size} {size}")


def count_polylines(svg: str, cls: Optional[str] = None) -> int:
    needle = "<polyline" if cls is None else f'<polyline class="{cls}'
    return svg.count(needle)
