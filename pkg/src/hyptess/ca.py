"""Cellular automata on finite heptagrid regions.

Configurations are total maps from the tiles of a region to states.  Only
interior tiles (all seven neighbours in the region) are updated; the others
act as a frozen boundary.

The xor automaton carries three layers per tile: a D-tile whose in/out
ports encode a path, a bit, and a T-tile.  Its bit becomes
``bit(c) ^ bit(delta(c))`` where ``delta(c)`` is the neighbour behind the
out port, unless ``c`` is frozen (in beta) or either tile layer is
incorrect at ``c``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence

from . import gf2
from .heptagrid import Cell, Region, edge_to, neighbors, parse_cell

EDGES = 7
DEFAULT_BUDGET = 1 << 16


class BudgetExceeded(RuntimeError):
    pass


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("HYPTESS_BUDGET")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"HYPTESS_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("HYPTESS_BUDGET must be positive")
    return value


# -- tile sets --------------------------------------------------------------

@dataclass(frozen=True)
class Tile:
    name: str
    edges: tuple[str, ...]
    in_edge: Optional[int] = None
    out_edge: Optional[int] = None

    @property
    def has_ports(self) -> bool:
        return self.in_edge is not None


@dataclass
class TileSet:
    alphabet: tuple[str, ...]
    tiles: dict[str, Tile] = field(default_factory=dict)

    def __post_init__(self):
        for t in list(self.tiles.values()):
            self._check(t)

    def _check(self, t: Tile) -> None:
        if len(t.edges) != EDGES:
            raise ValueError(f"tile {t.name} needs {EDGES} edge colors")
        bad = [e for e in t.edges if e not in self.alphabet]
        if bad:
            raise ValueError(f"tile {t.name} uses colors outside the alphabet: {bad}")
        if (t.in_edge is None) != (t.out_edge is None):
            raise ValueError(f"tile {t.name} needs both ports or none")
        if t.has_ports:
            if not (0 <= t.in_edge < EDGES and 0 <= t.out_edge < EDGES):
                raise ValueError(f"tile {t.name} has a port outside 0..6")
            if t.in_edge == t.out_edge:
                raise ValueError(f"tile {t.name}: in and out ports must differ")

    def add(self, t: Tile) -> None:
        if t.name in self.tiles:
            raise ValueError(f"duplicate tile {t.name}")
        self._check(t)
        self.tiles[t.name] = t

    def __getitem__(self, name: str) -> Tile:
        try:
            return self.tiles[name]
        except KeyError:
            raise KeyError(f"unknown tile {name!r}") from None

    def __contains__(self, name: object) -> bool:
        return name in self.tiles

    def __len__(self) -> int:
        return len(self.tiles)


def parse_tileset(text: str) -> TileSet:
    """Read ``alphabet: a b ...`` then ``tile <name> edges e0..e6 [in i out j]`` lines."""
    ts: Optional[TileSet] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            if ts is not None:
                raise ValueError(f"line {lineno}: second alphabet line")
            ts = TileSet(tuple(line[len("alphabet:"):].split()))
            continue
        words = line.split()
        if ts is None:
            raise ValueError(f"line {lineno}: tiles before the alphabet line")
        if words[0] != "tile" or len(words) < 10 or words[2] != "edges":
            raise ValueError(f"line {lineno}: expected 'tile <name> edges e0..e6'")
        rest = words[10:]
        ports = (None, None)
        if rest:
            if len(rest) != 4 or rest[0] != "in" or rest[2] != "out":
                raise ValueError(f"line {lineno}: expected 'in <i> out <j>'")
            try:
                ports = (int(rest[1]), int(rest[3]))
            except ValueError:
                raise ValueError(f"line {lineno}: ports must be integers") from None
        try:
            ts.add(Tile(words[1], tuple(words[3:10]), *ports))
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}") from None
    if ts is None:
        raise ValueError("missing alphabet line")
    return ts


def format_tileset(ts: TileSet) -> str:
    lines = ["alphabet: " + " ".join(ts.alphabet)]
    for t in ts.tiles.values():
        line = f"tile {t.name} edges " + " ".join(t.edges)
        if t.has_ports:
            line += f" in {t.in_edge} out {t.out_edge}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def uniform_tileset(color: str = "a", name: str = "u") -> TileSet:
    return TileSet((color,), {name: Tile(name, (color,) * EDGES)})


def port_tileset(color: str = "d") -> TileSet:
    """All 42 single-color D-tiles, named ``p<in><out>``."""
    ts = TileSet((color,))
    for i in range(EDGES):
        for j in range(EDGES):
            if i != j:
                ts.add(Tile(f"p{i}{j}", (color,) * EDGES, i, j))
    return ts


# -- configurations ---------------------------------------------------------

class XorState(NamedTuple):
    d: str
    bit: int
    t: str


class Configuration:
    """A total map from the tiles of ``region`` to states."""

    def __init__(self, region: Region, states: Mapping[Cell, object]):
        missing = [c for c in region.cells if c not in states]
        if missing:
            raise ValueError(f"configuration misses {len(missing)} tiles, e.g. {min(missing)}")
        extra = [c for c in states if c not in region]
        if extra:
            raise ValueError(f"configuration has tiles outside the region, e.g. {min(extra)}")
        self.region = region
        self.states = dict(states)
        self._interior: Optional[list[Cell]] = None

    @property
    def interior(self) -> list[Cell]:
        if self._interior is None:
            self._interior = self.region.interior()
        return self._interior

    def __getitem__(self, cell: Cell):
        return self.states[cell]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Configuration) and self.states == other.states

    def __hash__(self) -> int:
        return hash(frozenset(self.states.items()))

    def replace(self, updates: Mapping[Cell, object]) -> "Configuration":
        out = Configuration.__new__(Configuration)
        out.region = self.region
        out.states = {**self.states, **updates}
        out._interior = self._interior
        return out

    def key(self) -> tuple:
        return tuple(self.states[c] for c in sorted(self.states))


def parse_configuration(text: str, region: Region | None = None) -> Configuration:
    """Read ``cell <addr> <D> <bit> <T>`` lines.  The region defaults to the listed tiles."""
    states: dict[Cell, XorState] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if len(words) != 5 or words[0] != "cell":
            raise ValueError(f"line {lineno}: expected 'cell <addr> <D> <bit> <T>'")
        cell = parse_cell(words[1])
        if words[3] not in ("0", "1"):
            raise ValueError(f"line {lineno}: bit must be 0 or 1")
        if cell in states:
            raise ValueError(f"line {lineno}: duplicate cell {cell}")
        states[cell] = XorState(words[2], int(words[3]), words[4])
    return Configuration(region if region is not None else Region(states), states)


def format_configuration(config: Configuration) -> str:
    return "".join(f"cell {c} {s.d} {s.bit} {s.t}\n" for c, s in sorted(config.states.items()))


# -- general automata -------------------------------------------------------

Rule = Callable[[object, tuple], object]


@dataclass(frozen=True)
class CellularAutomaton:
    """``rule(state, neighbour_states)`` with neighbours in ``heptagrid.neighbors`` order."""
    rule: Rule
    states: tuple = ()


def identity_automaton(states: Sequence = (0, 1)) -> CellularAutomaton:
    return CellularAutomaton(lambda s, nb: s, tuple(states))


def constant_automaton(q0, states: Sequence = (0, 1)) -> CellularAutomaton:
    return CellularAutomaton(lambda s, nb: q0, tuple(states))


def step(ca: CellularAutomaton, config: Configuration) -> Configuration:
    """One synchronous update of the interior; the boundary is frozen."""
    prev = config.states
    updates = {}
    for c in config.interior:
        try:
            nb = tuple(prev[n] for n in neighbors(c))
        except KeyError as e:
            raise ValueError(f"missing neighbour state {e.args[0]} of {c}") from None
        updates[c] = ca.rule(prev[c], nb)
    return config.replace(updates)


# -- xor automaton ----------------------------------------------------------

@dataclass(frozen=True)
class XorAutomaton:
    D: TileSet
    T: TileSet
    beta: frozenset = frozenset()

    def __post_init__(self):
        unported = [t.name for t in self.D.tiles.values() if not t.has_ports]
        if unported:
            raise ValueError(f"D-tiles need in/out ports: {unported}")


def _layer(state: XorState, layer: str) -> str:
    if layer == "D":
        return state.d
    if layer == "T":
        return state.t
    raise ValueError(f"unknown layer {layer!r}")


def local_correct(config: Configuration, cell: Cell, layer: str, tileset: TileSet) -> bool:
    """Edge colors match every neighbour's opposite edge; D also needs out port facing an in port."""
    states = config.states
    tile = tileset[_layer(states[cell], layer)]
    nbs = neighbors(cell)
    for i, n in enumerate(nbs):
        if n not in states:
            raise ValueError(f"{cell} is not interior")
        other = tileset[_layer(states[n], layer)]
        if other.edges[edge_to(n, cell)] != tile.edges[i]:
            return False
    if layer == "D":
        if not tile.has_ports:
            return False
        succ = nbs[tile.out_edge]
        other = tileset[_layer(states[succ], layer)]
        if not other.has_ports or other.in_edge != edge_to(succ, cell):
            return False
    return True


def delta(xa: XorAutomaton, config: Configuration, cell: Cell) -> Cell:
    return neighbors(cell)[xa.D[config.states[cell].d].out_edge]


def updating_cells(xa: XorAutomaton, config: Configuration) -> dict[Cell, Cell]:
    """Interior tiles whose bit takes the xor branch, mapped to their successor."""
    out = {}
    for c in config.interior:
        if c in xa.beta:
            continue
        if local_correct(config, c, "D", xa.D) and local_correct(config, c, "T", xa.T):
            succ = delta(xa, config, c)
            if succ not in config.states:
                raise ValueError(f"delta({c}) = {succ} lies outside the region")
            out[c] = succ
    return out


def xor_step(xa: XorAutomaton, config: Configuration,
             upd: Mapping[Cell, Cell] | None = None) -> Configuration:
    prev = config.states
    updates = {}
    if upd is None:
        upd = updating_cells(xa, config)
    for c, succ in upd.items():
        s = prev[c]
        updates[c] = s._replace(bit=s.bit ^ prev[succ].bit)
    return config.replace(updates)


def as_automaton(xa: XorAutomaton) -> Callable[[Configuration], Configuration]:
    """``xor_step`` as a plain map; correctness is cached per tile-layer assignment."""
    cache: dict[tuple, dict[Cell, Cell]] = {}

    def fn(config: Configuration) -> Configuration:
        layers = tuple((c, s.d, s.t) for c, s in sorted(config.states.items()))
        upd = cache.get(layers)
        if upd is None:
            upd = cache[layers] = updating_cells(xa, config)
        return xor_step(xa, config, upd)

    return fn


# -- injectivity ------------------------------------------------------------

@dataclass(frozen=True)
class InjectivityResult:
    injective: bool
    witness: Optional[tuple[Configuration, Configuration]] = None
    checked: int = 0


def injectivity_exhaustive(step_fn: Callable[[Configuration], Configuration],
                           base: Configuration,
                           choices: Mapping[Cell, Sequence],
                           budget: int | None = None) -> InjectivityResult:
    """Decide injectivity of ``step_fn`` over all configurations varying ``choices``.

    Tiles not in ``choices`` keep their state from ``base``.  The witness is
    taken from the image class of the first colliding configuration in
    enumeration order (choices in listed order, tiles sorted).
    """
    budget = budget_from_env() if budget is None else budget
    cells = sorted(choices)
    total = 1
    for c in cells:
        total *= len(choices[c])
        if total > budget:
            raise BudgetExceeded(f"{total}+ configurations exceed the budget {budget}")
    first_by_image: dict[tuple, Configuration] = {}
    collision: dict[tuple, Configuration] = {}
    order: list[tuple] = []
    n = 0
    for combo in itertools.product(*(choices[c] for c in cells)):
        cfg = base.replace(dict(zip(cells, combo)))
        img = step_fn(cfg).key()
        n += 1
        if img not in first_by_image:
            first_by_image[img] = cfg
        elif img not in collision:
            collision[img] = cfg
            order.append(img)
    if not order:
        return InjectivityResult(True, None, n)
    # the earliest configuration that has a partner
    img = min(order, key=lambda k: _rank(first_by_image[k], cells, choices))
    return InjectivityResult(False, (first_by_image[img], collision[img]), n)


def _rank(cfg: Configuration, cells: list[Cell], choices: Mapping[Cell, Sequence]) -> tuple:
    return tuple(list(choices[c]).index(cfg.states[c]) for c in cells)


def bit_choices(config: Configuration, cells: Iterable[Cell] | None = None) -> dict[Cell, list]:
    """Both bit values on each tile (interior by default), layers kept."""
    cells = config.interior if cells is None else cells
    return {c: [config.states[c]._replace(bit=0), config.states[c]._replace(bit=1)] for c in cells}


@dataclass(frozen=True)
class GF2Result:
    injective: bool
    kernel: tuple[frozenset, ...] = ()
    rank: int = 0
    variables: tuple[Cell, ...] = ()


def linear_map(xa: XorAutomaton, config: Configuration) -> tuple[list[Cell], list[int]]:
    """Rows of the bit map on interior tiles; boundary bits only add constants."""
    cells = list(config.interior)
    index = {c: i for i, c in enumerate(cells)}
    upd = updating_cells(xa, config)
    rows = []
    for c in cells:
        row = 1 << index[c]
        succ = upd.get(c)
        if succ is not None and succ in index:
            row ^= 1 << index[succ]
        rows.append(row)
    return cells, rows


def injectivity_gf2(xa: XorAutomaton, config: Configuration) -> GF2Result:
    cells, rows = linear_map(xa, config)
    r = gf2.rank(rows, len(cells))
    basis = gf2.kernel(rows, len(cells))
    kern = tuple(frozenset(c for i, c in enumerate(cells) if v >> i & 1) for v in basis)
    return GF2Result(not kern, kern, r, tuple(cells))


def injectivity_gf2_rows(rows: list[int], ncols: int) -> tuple[bool, list[int]]:
    """Matrix-level decision, for maps not realisable by port tiles."""
    basis = gf2.kernel(rows, ncols)
    return not basis, basis


# -- fixtures ---------------------------------------------------------------

def ports_config(region: Region, succ: Mapping[Cell, Cell], pred: Mapping[Cell, Cell],
                 t_layer: Mapping[Cell, str] | None = None, t_default: str = "u",
                 bits: Mapping[Cell, int] | None = None) -> Configuration:
    """D-layer from successor/predecessor maps; unlisted ports are filled with any free edge."""
    states = {}
    for c in region.cells:
        out = edge_to(c, succ[c]) if c in succ else None
        inn = edge_to(c, pred[c]) if c in pred else None
        if out is None:
            out = next(i for i in range(EDGES) if i != inn)
        if inn is None or inn == out:
            # a tile whose successor is also its predecessor cannot be correct
            inn = next(i for i in range(EDGES) if i != out)
        t = (t_layer or {}).get(c, t_default)
        states[c] = XorState(f"p{inn}{out}", (bits or {}).get(c, 0), t)
    return Configuration(region, states)


def path_realization(region: Region, path: Sequence[Cell], t_default: str = "u") -> Configuration:
    """Encode a path through ``region`` as port tiles; the path must end off the interior."""
    if len(set(path)) != len(path) or set(path) != set(region.cells):
        raise ValueError("path must visit every tile of the region exactly once")
    interior = set(region.interior())
    if path and path[-1] in interior:
        raise ValueError("the path must end on a boundary tile")
    succ = dict(zip(path, path[1:]))
    pred = dict(zip(path[1:], path))
    return ports_config(region, succ, pred, t_default=t_default)


def cycle_fixture(beta: Iterable[Cell] = (), center: Cell | None = None) -> tuple[XorAutomaton, Configuration]:
    """Radius-2 ball around ``center``: 8 interior tiles on one delta-cycle.

    The cycle is center -> neighbour 0 -> ... -> neighbour 6 -> center
    (consecutive neighbours share an edge); with the center frozen it runs
    over the seven neighbours only.  The default center is the central tile.
    """
    from .heptagrid import CENTRAL
    center = CENTRAL if center is None else center
    beta = frozenset(beta)
    region = Region.ball(center, 2)
    around = list(neighbors(center))
    ring = around if center in beta else [center, *around]
    succ = {a: b for a, b in zip(ring, ring[1:] + ring[:1])}
    pred = {b: a for a, b in succ.items()}
    config = ports_config(region, succ, pred)
    xa = XorAutomaton(port_tileset(), uniform_tileset(), beta)
    return xa, config


def witness_pair(xa: XorAutomaton, config: Configuration) -> tuple[Configuration, Configuration]:
    """All-0 bits against bits 1 on interior tiles off beta (0 on beta and boundary)."""
    zero = config.replace({c: s._replace(bit=0) for c, s in config.states.items()})
    interior = set(config.interior)
    ones = zero.replace({c: zero.states[c]._replace(bit=1) for c in interior - xa.beta})
    return zero, ones


def two_tile_tset() -> TileSet:
    """T-layer with two single-color tiles: correct exactly where neighbours agree."""
    return TileSet(("a", "b"), {"u": Tile("u", ("a",) * EDGES), "v": Tile("v", ("b",) * EDGES)})


def random_fixture(rng, max_interior: int = 12, p_break: float = 0.15,
                   p_beta: float = 0.2) -> tuple[XorAutomaton, Configuration]:
    """A small xor fixture with a random mix of correct, incorrect and frozen tiles.

    The region is the union of the radius-2 balls around one or two
    adjacent tiles near the centre; successors are random neighbours and
    every tile takes its in port from one random predecessor, so some
    tiles are D-correct and some are not.
    """
    from .heptagrid import CENTRAL, ball
    centers = [CENTRAL, *ball(CENTRAL, 2)]
    while True:
        a = rng.choice(sorted(centers))
        cells = set(ball(a, 2))
        if rng.random() < 0.5:
            b = rng.choice(neighbors(a))
            cells |= set(ball(b, 2))
        region = Region(cells)
        interior = region.interior()
        if 1 <= len(interior) <= max_interior:
            break
    succ, preds = {}, {}
    for c in sorted(region.cells):
        inside = [n for n in neighbors(c) if n in cells]
        s = rng.choice(inside)
        succ[c] = s
        preds.setdefault(s, []).append(c)
    pred = {c: rng.choice(ps) for c, ps in sorted(preds.items())}
    t_layer = {c: ("v" if rng.random() < p_break else "u") for c in sorted(region.cells)}
    bits = {c: rng.randint(0, 1) for c in sorted(region.cells)}
    config = ports_config(region, succ, pred, t_layer=t_layer, bits=bits)
    beta = frozenset(c for c in interior if rng.random() < p_beta)
    return XorAutomaton(port_tileset(), two_tile_tset(), beta), config
