"""Mauve triangles, latitudes, refined bases and a region-filling path.

A mauve triangle shares its vertex and leg branches with a red triangle and
is twice as tall, so consecutive mauve triangles of one generation stack
exactly: the basis level of one is the vertex level of the next.  The band
of levels between them is a latitude.

``build_path`` fills a forest band (all descendants of a run of consecutive
tiles, down to a fixed level) by recursive slicing.  The band is cut at the
latitude boundaries of the largest red generation, each slice is split into
the mauve triangles and trapezes met on its top level, and each of those
pieces is sliced again with the next smaller red generation.  Pieces are
traversed boustrophedon, alternately descending and ascending, and always
enter and leave at corners.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterable, Iterator, Optional

from .heptagrid import (
    Cell,
    Region,
    adjacent,
    ancestor,
    is_descendant,
    iter_slice,
    left,
    leftmost,
    parse_cell,
    right,
    rightmost,
    sons,
)
from .trilaterals import (
    LEVELS_PER_ROW,
    CapacityError,
    HypStructure,
    HypTrilateral,
    first_vertex_row,
)
from .euclid import TRIANGLE, schedule_at_row


def red_generations(max_gen: int) -> list[int]:
    return [g for g in range(1, max_gen + 1) if g % 2]


@dataclass(frozen=True)
class MauveTriangle:
    generation: int
    vertex: Cell
    origin_depth: int

    @property
    def red_height_levels(self) -> int:
        return LEVELS_PER_ROW * 2 ** (self.generation + 1)

    @property
    def height_levels(self) -> int:
        return 2 * self.red_height_levels

    @property
    def height_rows(self) -> int:
        return 2 * 2 ** (self.generation + 1)

    @property
    def vertex_row(self) -> int:
        return (self.vertex.depth - self.origin_depth) // LEVELS_PER_ROW

    @property
    def basis_depth(self) -> int:
        return self.vertex.depth + self.height_levels

    @property
    def low_point_row(self) -> int:
        # mid-distance line of the red phantom sharing the mauve basis row
        return self.vertex_row + 3 * 2 ** (self.generation + 1) // 2

    @property
    def low_point_depth(self) -> int:
        return self.origin_depth + LEVELS_PER_ROW * self.low_point_row

    def low_points(self) -> tuple[Cell, Cell]:
        rel = self.low_point_depth - self.vertex.depth
        return leftmost(self.vertex, rel), rightmost(self.vertex, rel)

    def left_leg(self) -> list[Cell]:
        return [leftmost(self.vertex, d) for d in range(self.height_levels + 1)]

    def right_leg(self) -> list[Cell]:
        return [rightmost(self.vertex, d) for d in range(self.height_levels + 1)]

    def contains(self, cell: Cell) -> bool:
        return (self.vertex.depth <= cell.depth <= self.basis_depth
                and is_descendant(cell, self.vertex))

    def corners(self) -> tuple[Cell, Cell]:
        return leftmost(self.vertex, self.height_levels), rightmost(self.vertex, self.height_levels)


def mauve_from_red(red: HypTrilateral, region: Region | None = None) -> MauveTriangle:
    """The mauve triangle sharing ``red``'s vertex, with doubled height."""
    if red.kind != TRIANGLE or red.color != "red":
        raise ValueError(f"mauve triangles are built on red triangles, got {red.color} {red.kind}")
    m = MauveTriangle(red.generation, red.vertex, red.origin_depth)
    if region is not None and (red.vertex not in region or red.basis_depth > region.max_depth):
        raise CapacityError("the red triangle does not fit the region")
    return m


def latitude_vertex_depth(structure: HypStructure, generation: int, depth: int) -> int:
    """Vertex level of the generation's latitude containing ``depth`` (top boundary inclusive)."""
    period = 2 ** (generation + 2)
    first = first_vertex_row(generation)
    rel = depth - structure.origin_depth
    row = rel // LEVELS_PER_ROW
    vrow = first + ((row - first) // period) * period
    return structure.origin_depth + LEVELS_PER_ROW * vrow


def mauve_at(structure: HypStructure, cell: Cell, generation: int) -> Optional[MauveTriangle]:
    """The generation-``generation`` mauve rooted at ``cell``, if the cell is such a vertex."""
    row = structure.row_of_depth(cell.depth)
    if row is None or cell.depth < 0:
        return None
    n, kind, _ = schedule_at_row(row)
    if n != generation or kind != TRIANGLE or not structure.is_active(cell):
        return None
    return MauveTriangle(generation, cell, structure.origin_depth)


def containing_mauve(structure: HypStructure, cell: Cell, generation: int) -> Optional[MauveTriangle]:
    L = latitude_vertex_depth(structure, generation, cell.depth)
    if L < 0 or L > cell.depth:
        return None
    return mauve_at(structure, ancestor(cell, L), generation)


def mauves(structure: HypStructure, max_gen: int | None = None) -> list[MauveTriangle]:
    """Mauve triangles on every red triangle of the structure."""
    top = structure.max_gen if max_gen is None else max_gen
    return [MauveTriangle(t.generation, t.vertex, t.origin_depth)
            for t in structure.trilaterals
            if t.kind == TRIANGLE and t.color == "red" and t.generation <= top]


@dataclass(frozen=True)
class Classification:
    verdict: str  # inside | between | partial
    mauves: tuple = ()

    def __bool__(self) -> bool:
        return self.verdict in ("inside", "between")


def latitude_classify(tile: Cell, generation: int, structure: HypStructure,
                      scan_limit: int = 100_000) -> Classification:
    """Place ``tile`` inside a mauve triangle of its latitude or between two of them."""
    if generation % 2 == 0:
        raise ValueError("mauve triangles exist for red (odd) generations only")
    L = latitude_vertex_depth(structure, generation, tile.depth)
    if L < 0 or L < structure.origin_depth:
        return Classification("partial")
    a = ancestor(tile, L)
    m = mauve_at(structure, a, generation)
    if m is not None:
        return Classification("inside", (m,))
    found = []
    for step in (left, right):
        c = a
        for _ in range(scan_limit):
            c = step(c)
            if c == a:
                break
            m = mauve_at(structure, c, generation)
            if m is not None:
                found.append(m)
                break
        else:
            return Classification("partial")
        if c == a:
            return Classification("partial")
    return Classification("between", tuple(found))


def crossing_mauves(structure: HypStructure, cell: Cell, below_generation: int) -> Optional[MauveTriangle]:
    """Largest mauve of a smaller red generation whose left leg passes through
    ``cell`` strictly between its vertex and basis levels."""
    for g in reversed(red_generations(below_generation - 1)):
        m = containing_mauve(structure, cell, g)
        if m is None or not m.vertex.depth < cell.depth < m.basis_depth:
            continue
        if cell == leftmost(m.vertex, cell.depth - m.vertex.depth):
            return m
    return None


def iter_refined_basis(m: MauveTriangle, structure: HypStructure,
                       start: Cell | None = None) -> Iterator[Cell]:
    """Lazy refined basis of ``m``, from its lower-left to its lower-right corner.

    Where the leg of a smaller mauve crosses the basis, the path goes down
    that leg, along the smaller mauve's own refined basis, and back up its
    other leg before continuing along the basis.  ``start`` resumes the walk
    at a basis tile, since full bases are far too long to enumerate.
    """
    first, stop = m.corners()
    c = first if start is None else start
    if c.depth != m.basis_depth or not is_descendant(c, m.vertex):
        raise ValueError(f"{c} is not on the basis of {m}")
    start = first
    while True:
        inner = crossing_mauves(structure, c, m.generation) if c not in (start, stop) else None
        if inner is not None:
            depth = c.depth
            rel = depth - inner.vertex.depth
            for d in range(rel, inner.height_levels):
                yield leftmost(inner.vertex, d)
            yield from iter_refined_basis(inner, structure)
            for d in range(inner.height_levels - 1, rel - 1, -1):
                yield rightmost(inner.vertex, d)
            c = rightmost(inner.vertex, rel)
            if c == stop:
                return
            c = right(c)
            continue
        yield c
        if c == stop:
            return
        c = right(c)


def refined_basis(m: MauveTriangle, structure: HypStructure, limit: int | None = None) -> list[Cell]:
    it = iter_refined_basis(m, structure)
    return list(it if limit is None else islice(it, limit))


def crossing_report(structure: HypStructure, ms: Iterable[MauveTriangle]) -> tuple[int, list[str]]:
    """Check that every leg/basis crossing between mauves sits at the smaller one's low point.

    A crossing is a pair (small, big) where ``big``'s basis level lies
    strictly inside ``small``'s levels and ``small``'s legs reach it inside
    ``big``.  Returns (number of crossings, violations).
    """
    ms = list(ms)
    crossings = 0
    bad = []
    for big in ms:
        for small in ms:
            if small.generation >= big.generation:
                continue
            B = big.basis_depth
            if not small.vertex.depth < B < small.basis_depth:
                continue
            if not is_descendant(small.vertex, big.vertex):
                continue
            crossings += 1
            if B != small.low_point_depth:
                bad.append(f"gen-{small.generation} at {small.vertex} crosses basis of "
                           f"gen-{big.generation} at {big.vertex} on level {B}")
    return crossings, bad


def row_crossing_report(max_gen: int, rows: int) -> tuple[int, list[str]]:
    """Row-model version of ``crossing_report`` over all mauve pairs in ``[0, rows)``."""
    crossings, bad = 0, []
    reds = red_generations(max_gen)
    for gb in reds:
        period = 2 ** (gb + 2)
        for vb in range(first_vertex_row(gb), rows, period):
            basis = vb + 2 * 2 ** (gb + 1)
            for gs in reds:
                if gs >= gb:
                    continue
                ps = 2 ** (gs + 2)
                for vs in range(first_vertex_row(gs), rows, ps):
                    if vs < basis < vs + 2 * 2 ** (gs + 1) and vb <= vs:
                        crossings += 1
                        if basis != vs + 3 * 2 ** (gs + 1) // 2:
                            bad.append(f"rows: gen {gs}@{vs} vs gen {gb}@{vb}")
    return crossings, bad


# -- path -------------------------------------------------------------------

def _level(tops: list[Cell], rel: int) -> list[Cell]:
    return [c for t in tops for c in iter_slice(t, rel)]


def _zigzag_lr(tops: list[Cell]) -> list[Cell]:
    out = [tops[0], *sons(tops[0])]
    for c in tops[1:]:
        s = sons(c)
        out += [s[0], c, *s[1:]]
    return out


def _zigzag_rl(tops: list[Cell]) -> list[Cell]:
    out = []
    for c in reversed(tops):
        out.append(c)
        out.extend(reversed(sons(c)))
    return out


def _serpentine(tops: list[Cell], k: int, side: str) -> list[Cell]:
    """Fill ``k`` levels below and including ``tops``; side L: top-left to
    bottom-right, side R: top-right to bottom-left."""
    levels = [_level(tops, j) for j in range(k)]
    out: list[Cell] = []
    start = 0
    forward = side == "L"
    if k % 2 == 0:
        out = _zigzag_lr(tops) if forward else _zigzag_rl(tops)
        start = 2
        forward = not forward
    for j in range(start, k):
        out.extend(levels[j] if forward else reversed(levels[j]))
        forward = not forward
    return out


def _flip(side: str) -> str:
    return "R" if side == "L" else "L"


class _Filler:
    def __init__(self, structure: HypStructure, gens: list[int]):
        self.structure = structure
        self.gens = gens

    def descend(self, tops: list[Cell], k: int, side: str, gens: list[int]) -> list[Cell]:
        if not gens:
            return _serpentine(tops, k, side)
        g = gens[0]
        a = tops[0].depth
        cuts = [d for d in range(a + 1, a + k)
                if latitude_vertex_depth(self.structure, g, d) == d]
        bounds = [a, *cuts, a + k]
        pieces = [(bounds[i], bounds[i + 1] - bounds[i]) for i in range(len(bounds) - 1)]
        if len(pieces) % 2 == 0:
            (d1, k1), (_, k2) = pieces[-2], pieces[-1]
            pieces[-2:] = [(d1, k1 + k2)]
        out: list[Cell] = []
        s = side
        for d, kk in pieces:
            sub_tops = _level(tops, d - a)
            out += self.band(sub_tops, kk, s, g, gens[1:])
            s = _flip(s)
        return out

    def band(self, tops: list[Cell], k: int, side: str, g: int, rest: list[int]) -> list[Cell]:
        units: list[list[Cell]] = []
        last_key: object = object()
        for c in tops:
            m = containing_mauve(self.structure, c, g)
            key = m.vertex if m is not None else None
            if units and key == last_key:
                units[-1].append(c)
            else:
                units.append([c])
            last_key = key
        order = units if side == "L" else units[::-1]
        if len(order) % 2 == 0:
            merged = order[-2] + order[-1] if side == "L" else order[-1] + order[-2]
            order = order[:-2] + [merged]
        out: list[Cell] = []
        for i, u in enumerate(order):
            if i % 2 == 0:
                out += self.descend(u, k, side, rest)
            else:
                out += reversed(self.descend(u, k, _flip(side), rest))
        return out


def build_path(region: Region, structure: HypStructure, max_gen: int | None = None) -> list[Cell]:
    """Visit every tile of a forest-band region exactly once, consecutive tiles adjacent."""
    if not region.is_forest_band():
        raise ValueError("build_path needs a forest-band region (Region.cone or Region.band)")
    top = structure.max_gen if max_gen is None else max_gen
    gens = list(reversed(red_generations(top)))
    k = region.max_depth - region.min_depth + 1
    return _Filler(structure, gens).descend(list(region.tops), k, "L", gens)


def check_path(region: Region, path: list[Cell]) -> dict[str, int]:
    seen: dict[Cell, int] = {}
    for c in path:
        seen[c] = seen.get(c, 0) + 1
    return {
        "region": len(region),
        "visited": len(seen),
        "duplicates": sum(n - 1 for n in seen.values()),
        "outside": sum(1 for c in seen if c not in region),
        "missing": sum(1 for c in region.cells if c not in seen),
        "nonadjacent": sum(1 for a, b in zip(path, path[1:]) if not adjacent(a, b)),
    }


def beta_mask(m: MauveTriangle, structure: HypStructure, region: Region,
              start: Cell | None = None, limit: int = 100_000) -> frozenset:
    """Tiles of ``m``'s refined basis (walked for at most ``limit`` steps) lying in ``region``."""
    return frozenset(c for c in islice(iter_refined_basis(m, structure, start), limit) if c in region)


def format_cells(cells: Iterable[Cell], beta: bool = False) -> str:
    lines = ["#beta"] if beta else []
    lines.extend(str(c) for c in cells)
    return "".join(line + "\n" for line in lines)


def parse_cells(text: str) -> tuple[list[Cell], bool]:
    """Parse a path dump or a β-mask file; the flag tells whether the ``#beta`` header was present."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    is_beta = bool(lines) and lines[0] == "#beta"
    if is_beta:
        lines = lines[1:]
    return [parse_cell(ln) for ln in lines if not ln.startswith("#")], is_beta


def upper_overlaps(ms: Iterable[MauveTriangle]) -> dict[MauveTriangle, int]:
    """For each mauve, how many larger-generation mauves' bases cross its legs."""
    ms = list(ms)
    out = {}
    for small in ms:
        out[small] = sum(
            1 for big in ms
            if big.generation > small.generation
            and small.vertex.depth < big.basis_depth < small.basis_depth
            and is_descendant(small.vertex, big.vertex))
    return out
