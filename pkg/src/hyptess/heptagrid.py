"""Fibonacci-tree coordinates for the ternary heptagrid {7,3}.

The plane is a central cell surrounded by seven sector trees.  A tile is
addressed by its sector and the son indices leading down from the sector
root.  Sector roots are white; a black node has sons (black, white) and a
white node has sons (black, white, white).  Level ``n`` of the whole grid is
the cyclic sequence of all depth-``n`` tiles, sector 0 first, left to right,
so lexicographic order on ``(sector, path)`` is level order.

Each tile at depth ``n`` touches its father, its two lateral neighbours,
its own sons, and the black son of its right neighbour.  A black tile also
touches the left neighbour of its father.  That gives 7 neighbours for
every tile, and the relation is symmetric.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

SECTORS = 7
ISOCLINES = 20
BLACK = "black"
WHITE = "white"


class Cell(NamedTuple):
    sector: int
    path: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.path) if self.sector >= 0 else -1

    def __str__(self) -> str:
        return format_cell(self)


CENTRAL = Cell(-1, ())


def root(sector: int) -> Cell:
    return Cell(sector % SECTORS, ())


def format_cell(cell: Cell) -> str:
    if cell.sector < 0:
        return "c"
    return f"s{cell.sector}:" + ".".join(str(i) for i in cell.path)


def parse_cell(text: str) -> Cell:
    """Parse ``c`` or ``s<k>:<i1>.<i2>...`` into a validated cell."""
    text = text.strip()
    if text == "c":
        return CENTRAL
    if not text.startswith("s") or ":" not in text:
        raise ValueError(f"malformed cell address {text!r}")
    head, _, tail = text[1:].partition(":")
    try:
        sector = int(head)
        path = tuple(int(p) for p in tail.split(".")) if tail else ()
    except ValueError:
        raise ValueError(f"malformed cell address {text!r}") from None
    cell = Cell(sector, path)
    validate(cell)
    return cell


def validate(cell: Cell) -> None:
    if cell == CENTRAL:
        return
    if not 0 <= cell.sector < SECTORS:
        raise ValueError(f"sector out of range in {cell!r}")
    for i, idx in enumerate(cell.path):
        if not 0 <= idx < _son_count_at(cell.path[:i]):
            raise ValueError(f"son index {idx} invalid under {Cell(cell.sector, cell.path[:i])}")


def _son_count_at(path: tuple[int, ...]) -> int:
    # black iff the node is some father's son 0
    return 2 if path and path[-1] == 0 else 3


def is_black(cell: Cell) -> bool:
    return cell.sector >= 0 and bool(cell.path) and cell.path[-1] == 0


def status(cell: Cell) -> str:
    return BLACK if is_black(cell) else WHITE


def son_count(cell: Cell) -> int:
    if cell == CENTRAL:
        return SECTORS
    return _son_count_at(cell.path)


def sons(cell: Cell) -> list[Cell]:
    if cell == CENTRAL:
        return [root(k) for k in range(SECTORS)]
    return [Cell(cell.sector, cell.path + (i,)) for i in range(son_count(cell))]


def father(cell: Cell) -> Cell:
    if cell == CENTRAL:
        raise ValueError("the central cell has no father")
    if not cell.path:
        return CENTRAL
    return Cell(cell.sector, cell.path[:-1])


def ancestor(cell: Cell, depth: int) -> Cell:
    """Ancestor of ``cell`` at the given depth (the cell itself at its own depth)."""
    if not 0 <= depth <= cell.depth:
        raise ValueError(f"no ancestor of {cell} at depth {depth}")
    return Cell(cell.sector, cell.path[:depth])


def is_descendant(cell: Cell, top: Cell) -> bool:
    """True when ``cell`` lies in the subtree rooted at ``top`` (inclusive)."""
    if top == CENTRAL:
        return True
    return (cell.sector == top.sector and len(cell.path) >= len(top.path)
            and cell.path[: len(top.path)] == top.path)


@lru_cache(maxsize=1 << 18)
def left(cell: Cell) -> Cell:
    """Previous tile on the same level (cyclic across sectors)."""
    if cell == CENTRAL:
        raise ValueError("the central cell has no level neighbours")
    if not cell.path:
        return root(cell.sector - 1)
    if cell.path[-1] > 0:
        return Cell(cell.sector, cell.path[:-1] + (cell.path[-1] - 1,))
    lf = left(father(cell))
    return Cell(lf.sector, lf.path + (son_count(lf) - 1,))


@lru_cache(maxsize=1 << 18)
def right(cell: Cell) -> Cell:
    """Next tile on the same level (cyclic across sectors)."""
    if cell == CENTRAL:
        raise ValueError("the central cell has no level neighbours")
    if not cell.path:
        return root(cell.sector + 1)
    if cell.path[-1] < _son_count_at(cell.path[:-1]) - 1:
        return Cell(cell.sector, cell.path[:-1] + (cell.path[-1] + 1,))
    rf = right(father(cell))
    return Cell(rf.sector, rf.path + (0,))


@lru_cache(maxsize=1 << 18)
def neighbors(cell: Cell) -> tuple[Cell, ...]:
    """The 7 edge-adjacent tiles, in cyclic order starting at the father edge.

    Order: father, right, black son of right, own sons right to left, left,
    and (black tiles only) the left neighbour of the father.  The central
    cell lists the sector roots 0..6.
    """
    if cell == CENTRAL:
        return tuple(root(k) for k in range(SECTORS))
    f = father(cell)
    r = right(cell)
    out = [f, r, Cell(r.sector, r.path + (0,))]
    out.extend(reversed(sons(cell)))
    out.append(left(cell))
    if is_black(cell):
        out.append(left(f))
    return tuple(out)


def edge_to(cell: Cell, other: Cell) -> int:
    """Index of the edge of ``cell`` shared with ``other``."""
    try:
        return neighbors(cell).index(other)
    except ValueError:
        raise ValueError(f"{other} is not adjacent to {cell}") from None


def adjacent(a: Cell, b: Cell) -> bool:
    return b in neighbors(a)


def isocline(cell: Cell) -> int:
    if cell == CENTRAL:
        return ISOCLINES - 1
    return cell.depth % ISOCLINES


def leftmost(top: Cell, rel_depth: int) -> Cell:
    return Cell(top.sector, top.path + (0,) * rel_depth)


def rightmost(top: Cell, rel_depth: int) -> Cell:
    path = top.path
    for _ in range(rel_depth):
        path = path + (_son_count_at(path) - 1,)
    return Cell(top.sector, path)


def subtree_borders(top: Cell, rel_depth: int) -> tuple[Cell, Cell]:
    if rel_depth < 0:
        raise ValueError("rel_depth must be non-negative")
    return leftmost(top, rel_depth), rightmost(top, rel_depth)


def iter_slice(top: Cell, rel_depth: int) -> Iterator[Cell]:
    """Descendants of ``top`` at ``rel_depth`` below it, left to right (lazy)."""
    if rel_depth < 0:
        raise ValueError("rel_depth must be non-negative")
    if rel_depth == 0:
        yield top
        return
    for s in sons(top):
        yield from iter_slice(s, rel_depth - 1)


def subtree_slice(top: Cell, rel_depth: int) -> list[Cell]:
    return list(iter_slice(top, rel_depth))


def slice_size(top: Cell, rel_depth: int) -> int:
    """Number of descendants at ``rel_depth`` without enumerating them."""
    black, white = (1, 0) if is_black(top) else (0, 1)
    for _ in range(rel_depth):
        black, white = black + white, black + 2 * white
    return black + white


def level_range(start: Cell, stop: Cell) -> Iterator[Cell]:
    """Tiles of one level from ``start`` to ``stop`` inclusive, moving right."""
    if start.depth != stop.depth:
        raise ValueError("level_range endpoints must share a level")
    cell = start
    while True:
        yield cell
        if cell == stop:
            return
        cell = right(cell)


def ball(center: Cell, radius: int) -> dict[Cell, int]:
    """Breadth-first distances of every tile within ``radius`` of ``center``."""
    dist = {center: 0}
    queue = deque([center])
    while queue:
        c = queue.popleft()
        d = dist[c]
        if d == radius:
            continue
        for n in neighbors(c):
            if n not in dist:
                dist[n] = d + 1
                queue.append(n)
    return dist


def bfs_distances(sources: Iterable[Cell], allowed: set | frozenset, limit: int | None = None) -> dict[Cell, int]:
    """Multi-source BFS restricted to ``allowed`` tiles."""
    dist: dict[Cell, int] = {}
    queue: deque[Cell] = deque()
    for s in sources:
        if s in allowed and s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        c = queue.popleft()
        d = dist[c]
        if limit is not None and d >= limit:
            continue
        for n in neighbors(c):
            if n in allowed and n not in dist:
                dist[n] = d + 1
                queue.append(n)
    return dist


class Region:
    """A finite set of tiles with a row anchor.

    ``origin_depth`` is the depth treated as row 0 by the hyperbolic
    trilateral schedule; it defaults to the shallowest level present.
    """

    def __init__(self, cells: Iterable[Cell], origin_depth: int | None = None,
                 tops: tuple[Cell, ...] | None = None):
        cells = frozenset(cells)
        for c in cells:
            if not isinstance(c, Cell):
                raise TypeError(f"region entries must be Cell, got {c!r}")
        depths = sorted({c.depth for c in cells})
        if depths and depths != list(range(depths[0], depths[-1] + 1)):
            raise ValueError("region levels must form a contiguous range")
        self.cells = cells
        self.min_depth = depths[0] if depths else 0
        self.max_depth = depths[-1] if depths else -1
        self.origin_depth = self.min_depth if origin_depth is None else origin_depth
        # top interval when the region is a forest band (all descendants of tops)
        self.tops = tops

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self.cells))

    def __repr__(self) -> str:
        return f"Region({len(self.cells)} cells, depths {self.min_depth}..{self.max_depth})"

    def level(self, depth: int) -> list[Cell]:
        return sorted(c for c in self.cells if c.depth == depth)

    def levels(self) -> dict[int, list[Cell]]:
        out: dict[int, list[Cell]] = {}
        for c in sorted(self.cells):
            out.setdefault(c.depth, []).append(c)
        return out

    def interior(self) -> list[Cell]:
        """Tiles whose 7 neighbours all belong to the region."""
        return sorted(c for c in self.cells if all(n in self.cells for n in neighbors(c)))

    def is_forest_band(self) -> bool:
        return self.tops is not None

    @classmethod
    def band(cls, tops: Iterable[Cell], depth: int, origin_depth: int | None = None) -> "Region":
        """All descendants of a run of consecutive same-level tiles, ``depth`` levels down."""
        tops = tuple(tops)
        if not tops:
            raise ValueError("band needs at least one top tile")
        for a, b in zip(tops, tops[1:]):
            if right(a) != b:
                raise ValueError("band tops must be consecutive tiles of one level")
        cells = [c for t in tops for d in range(depth + 1) for c in iter_slice(t, d)]
        return cls(cells, origin_depth=origin_depth, tops=tops)

    @classmethod
    def cone(cls, top: Cell, depth: int, origin_depth: int | None = None) -> "Region":
        return cls.band((top,), depth, origin_depth)

    @classmethod
    def strip(cls, top: Cell, depth: int, width: int, origin_depth: int | None = None) -> "Region":
        """Per level, the first ``width`` descendants of ``top`` counted from its left border."""
        cells = []
        for d in range(depth + 1):
            for i, c in enumerate(iter_slice(top, d)):
                if i >= width:
                    break
                cells.append(c)
        return cls(cells, origin_depth=origin_depth)

    @classmethod
    def ball(cls, center: Cell, radius: int) -> "Region":
        return cls(ball(center, radius))
