"""Seed fields, scent propagation and the activation cascade.

A seed field is any predicate on cells.  The default one marks black tiles
on isoclines 0, 5, 10 and 15.  Seeds on isocline 0 are always active; an
active seed sends a scent five levels down its subtree, and a seed met by
the scent at exactly five levels becomes active in turn.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable

from .heptagrid import (
    CENTRAL,
    Cell,
    Region,
    ancestor,
    bfs_distances,
    is_black,
    isocline,
    iter_slice,
    parse_cell,
)

SCENT_RANGE = 5
DENSITY_RADIUS = 20


class SeedField:
    """Pluggable seed predicate.  Instances are hashable so results can be cached."""

    def __init__(self, predicate: Callable[[Cell], bool], name: str = "custom"):
        self._predicate = predicate
        self.name = name
        self._active = lru_cache(maxsize=None)(self._active_uncached)

    def __call__(self, cell: Cell) -> bool:
        return cell != CENTRAL and bool(self._predicate(cell))

    def __repr__(self) -> str:
        return f"SeedField({self.name})"

    def _active_uncached(self, cell: Cell) -> bool:
        if not self(cell):
            return False
        if isocline(cell) == 0:
            return True
        if cell.depth < SCENT_RANGE:
            return False
        return self._active(ancestor(cell, cell.depth - SCENT_RANGE))

    def is_active(self, cell: Cell) -> bool:
        """Activity in the whole plane: the limit of ``activate`` over growing regions."""
        return self._active(cell)


def _default_predicate(cell: Cell) -> bool:
    return is_black(cell) and isocline(cell) % 5 == 0


DEFAULT_FIELD = SeedField(_default_predicate, "default")


def explicit_field(cells: Iterable[Cell], name: str = "explicit") -> SeedField:
    chosen = frozenset(cells)
    return SeedField(chosen.__contains__, name)


def load_field(spec: str) -> SeedField:
    """``default`` or ``file:<path>`` listing one seed address per line."""
    if spec == "default":
        return DEFAULT_FIELD
    if spec.startswith("file:"):
        path = Path(spec[5:])
        cells = []
        for line in path.read_text().splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                cells.append(parse_cell(line))
        return explicit_field(cells, f"file:{path.name}")
    raise ValueError(f"unknown seed field {spec!r}")


def is_seed(cell: Cell, seed_field: SeedField = DEFAULT_FIELD) -> bool:
    return seed_field(cell)


@dataclass(frozen=True)
class ActivationState:
    active: frozenset
    # cell -> the active seed whose scent reached it first
    scent: dict = field(default_factory=dict, compare=False)

    def is_active(self, cell: Cell) -> bool:
        return cell in self.active


def activate(region: Region, seed_field: SeedField = DEFAULT_FIELD) -> ActivationState:
    """Fixpoint of the scent cascade inside ``region``."""
    if not isinstance(region, Region):
        raise TypeError("activate expects a Region")
    cells = region.cells
    active = {c for c in cells if isocline(c) == 0 and seed_field(c)}
    scent: dict[Cell, Cell] = {}
    queue = deque(sorted(active))
    while queue:
        s = queue.popleft()
        for d in range(1, SCENT_RANGE + 1):
            for c in iter_slice(s, d):
                if c not in cells:
                    continue
                scent.setdefault(c, s)
                if d == SCENT_RANGE and seed_field(c) and c not in active:
                    active.add(c)
                    queue.append(c)
    return ActivationState(frozenset(active), scent)


def density_check(region: Region, state: ActivationState | None = None,
                  seed_field: SeedField = DEFAULT_FIELD,
                  radius: int = DENSITY_RADIUS) -> list[Cell]:
    """Interior tiles with no active seed within ``radius`` steps.

    Distances are measured inside the region, so they bound the true
    distances from above; an empty result certifies the density bound.
    """
    if not len(region):
        return []
    if state is None:
        state = activate(region, seed_field)
    dist = bfs_distances(sorted(state.active), region.cells, limit=radius)
    return [c for c in region.interior() if dist.get(c, radius + 1) > radius]
