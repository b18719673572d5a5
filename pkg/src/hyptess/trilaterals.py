"""Interwoven triangles instantiated on the heptagrid.

A trilateral is rooted at an active seed.  Its legs run down the leftmost and
rightmost branches of the seed's Fibonacci subtree and its basis is the
slice of that subtree ``10 * 2**generation`` levels below the vertex.  Which
generation and kind a seed roots is read off the row schedule of
:mod:`hyptess.euclid`, with row 0 at the structure's origin depth and five
levels per row.

Interiors and bases grow exponentially with depth, so they are never
materialised wholesale: membership is an ancestor test and bases are
intersected with a finite region on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

from . import euclid
from .euclid import PHANTOM, TRIANGLE, Trilateral, schedule_at_row
from .heptagrid import (
    Cell,
    Region,
    ISOCLINES,
    ancestor,
    is_descendant,
    iter_slice,
    leftmost,
    rightmost,
)
from .seeds import DEFAULT_FIELD, ActivationState, SeedField

LEVELS_PER_ROW = 5


class CapacityError(ValueError):
    """The region is too shallow (or too small) for the requested construction."""


@dataclass(frozen=True)
class HypTrilateral:
    generation: int
    kind: str
    vertex: Cell
    origin_depth: int

    @property
    def color(self) -> str:
        if self.generation == 0:
            return "blue0"
        return "red" if self.generation % 2 else "blue"

    @property
    def height_levels(self) -> int:
        return LEVELS_PER_ROW * 2 ** (self.generation + 1)

    @property
    def vertex_depth(self) -> int:
        return self.vertex.depth

    @property
    def basis_depth(self) -> int:
        return self.vertex.depth + self.height_levels

    @property
    def green_depth(self) -> int:
        return self.vertex.depth + self.height_levels // 2

    @property
    def vertex_row(self) -> int:
        return (self.vertex.depth - self.origin_depth) // LEVELS_PER_ROW

    @property
    def basis_isocline(self) -> int:
        return self.basis_depth % ISOCLINES

    @cached_property
    def left_leg(self) -> tuple[Cell, ...]:
        return tuple(leftmost(self.vertex, d) for d in range(self.height_levels + 1))

    @cached_property
    def right_leg(self) -> tuple[Cell, ...]:
        return tuple(rightmost(self.vertex, d) for d in range(self.height_levels + 1))

    def leg_cells_at(self, depth: int) -> tuple[Cell, Cell]:
        rel = depth - self.vertex.depth
        if not 0 <= rel <= self.height_levels:
            raise ValueError(f"depth {depth} outside {self}")
        return leftmost(self.vertex, rel), rightmost(self.vertex, rel)

    def contains(self, cell: Cell) -> bool:
        return (self.vertex.depth <= cell.depth <= self.basis_depth
                and is_descendant(cell, self.vertex))

    def on_leg(self, cell: Cell) -> bool:
        if not self.contains(cell):
            return False
        rel = cell.depth - self.vertex.depth
        return cell.path[len(self.vertex.path):] == (0,) * rel or cell == rightmost(self.vertex, rel)

    def basis(self, region: Region | None = None) -> Iterator[Cell]:
        """Basis tiles left to right; restricted to ``region`` when given."""
        rel = self.height_levels
        if region is None:
            yield from iter_slice(self.vertex, rel)
            return
        for c in region.level(self.basis_depth):
            if is_descendant(c, self.vertex):
                yield c

    def green(self, region: Region) -> list[Cell]:
        return [c for c in region.level(self.green_depth) if is_descendant(c, self.vertex)]

    def project(self) -> Trilateral:
        n, kind, k = schedule_at_row(self.vertex_row)
        return Trilateral(n, kind, k)


class HypStructure:
    """Trilaterals rooted at the active seeds of a region.

    ``active`` decides seed activity: an :class:`ActivationState` computed on
    the region, or the seed field's whole-plane activity when omitted.
    """

    def __init__(self, region: Region, max_gen: int, seed_field: SeedField = DEFAULT_FIELD,
                 activation: Optional[ActivationState] = None):
        self.region = region
        self.max_gen = max_gen
        self.seed_field = seed_field
        self.activation = activation
        self.origin_depth = region.origin_depth
        self.trilaterals: list[HypTrilateral] = []

    def is_active(self, cell: Cell) -> bool:
        if self.activation is not None and cell in self.region:
            return self.activation.is_active(cell)
        return self.seed_field.is_active(cell)

    def row_of_depth(self, depth: int) -> Optional[int]:
        rel = depth - self.origin_depth
        if rel % LEVELS_PER_ROW:
            return None
        return rel // LEVELS_PER_ROW

    def trilateral_at(self, cell: Cell) -> Optional[HypTrilateral]:
        """The trilateral an active seed roots under the schedule (ignoring region fit)."""
        row = self.row_of_depth(cell.depth)
        if row is None or not self.is_active(cell):
            return None
        n, kind, _ = schedule_at_row(row)
        return HypTrilateral(n, kind, cell, self.origin_depth)

    def by_generation(self, generation: int, kind: str | None = None) -> list[HypTrilateral]:
        return [t for t in self.trilaterals
                if t.generation == generation and (kind is None or t.kind == kind)]

    def dump(self) -> str:
        lines = [f"{t.generation} {t.kind} {t.vertex} {t.basis_isocline}" for t in self.trilaterals]
        return "".join(line + "\n" for line in lines)


def first_vertex_row(generation: int, kind: str = TRIANGLE) -> int:
    """Smallest non-negative row holding a vertex of this generation and kind."""
    return Trilateral(generation, kind, 0).vertex_row


def build(region: Region, max_gen: int, seed_field: SeedField = DEFAULT_FIELD,
          activation: Optional[ActivationState] = None) -> HypStructure:
    """Instantiate every scheduled trilateral whose full height fits the region."""
    if max_gen < 0:
        raise ValueError("max_gen must be non-negative")
    if not len(region):
        raise CapacityError("empty region")
    if region.origin_depth % ISOCLINES:
        raise ValueError("the row origin must lie on an isocline 0")
    for g in range(max_gen + 1):
        t = Trilateral(g, TRIANGLE, 0)
        need = region.origin_depth + LEVELS_PER_ROW * t.basis_row
        if need > region.max_depth:
            raise CapacityError(
                f"generation {g} needs depth {need - region.min_depth}, "
                f"region has {region.max_depth - region.min_depth}")
    structure = HypStructure(region, max_gen, seed_field, activation)
    for cell in sorted(region.cells, key=lambda c: (c.depth, c)):
        if cell.depth < region.origin_depth:
            continue
        t = structure.trilateral_at(cell)
        if t is None or t.generation > max_gen or t.basis_depth > region.max_depth:
            continue
        structure.trilaterals.append(t)
    structure.trilaterals.sort(key=lambda t: (t.generation, t.vertex.depth, t.vertex))
    return structure


def project_rows(structure: HypStructure, axis: Cell | None = None) -> list[Trilateral]:
    """Project trilaterals to the row model, optionally only those on one seed axis.

    The axis is the leftmost branch below ``axis``, which is all black and so
    carries a seed on every fifth level.
    """
    out = []
    for t in structure.trilaterals:
        if axis is not None:
            rel = t.vertex.depth - axis.depth
            if rel < 0 or t.vertex != leftmost(axis, rel):
                continue
        out.append(t.project())
    out.sort(key=lambda t: (t.generation, t.vertex_row))
    return out


def axis_window(structure: HypStructure) -> euclid.RowWindow:
    """Row window the region covers, for comparing projections with the row model."""
    r = structure.region
    start = -((structure.origin_depth - r.min_depth) // LEVELS_PER_ROW)
    end = (r.max_depth - structure.origin_depth) // LEVELS_PER_ROW
    return euclid.RowWindow(max(start, 0), end, structure.max_gen)


def green_signal(structure: HypStructure, depth: int) -> list[list[Cell]]:
    """Maximal green segments on one level of the region.

    Generation-0 phantoms and every trilateral of generation >= 1 emit green
    on their mid-height level.  Emitted tiles are merged into runs of
    consecutive tiles; a triangle leg tile ends a run (phantom legs do not).
    """
    region = structure.region
    row = region.level(depth)
    if not row:
        return []
    emitters = [t for t in structure.trilaterals
                if t.green_depth == depth and (t.generation > 0 or t.kind == PHANTOM)]
    if not emitters:
        return []
    green = set()
    for t in emitters:
        green.update(t.green(region))
    blockers = set()
    for t in structure.trilaterals:
        if t.kind == TRIANGLE and t.vertex.depth <= depth <= t.basis_depth:
            blockers.update(t.leg_cells_at(depth))
    segments: list[list[Cell]] = []
    current: list[Cell] = []
    for c in row:
        if c in green:
            current.append(c)
            if c in blockers and len(current) > 1:
                segments.append(current)
                current = []
        else:
            if current:
                segments.append(current)
            current = []
    if current:
        segments.append(current)
    return segments


def anchors(structure: HypStructure) -> dict[str, set[int]]:
    """Isoclines carrying gen-0 vertices, gen-0 bases, gen-0 phantom green and gen-1 vertices."""
    out: dict[str, set[int]] = {"gen0_vertex": set(), "gen0_basis": set(),
                                "gen0_green": set(), "gen1_vertex": set()}
    for t in structure.trilaterals:
        if t.generation == 0 and t.kind == TRIANGLE:
            out["gen0_vertex"].add(t.vertex.depth % ISOCLINES)
            out["gen0_basis"].add(t.basis_depth % ISOCLINES)
        if t.generation == 0 and t.kind == PHANTOM:
            out["gen0_green"].add(t.green_depth % ISOCLINES)
        if t.generation == 1 and t.kind == TRIANGLE:
            out["gen1_vertex"].add(t.vertex.depth % ISOCLINES)
    return out


def vertex_ancestor(cell: Cell, depth: int) -> Optional[Cell]:
    if depth < 0 or depth > cell.depth:
        return None
    return ancestor(cell, depth)
