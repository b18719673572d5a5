"""
Coordinates on the heptagrid and the seed cascade
=================================================
"""

from hyptess.heptagrid import CENTRAL, Cell, Region, ball, neighbors, slice_size, status
from hyptess.seeds import activate, density_check

# seven sector trees around a central tile; each sector grows 1, 3, 8, 21, 55...
print([slice_size(Cell(0, ()), d) for d in range(6)])
print([len(ball(CENTRAL, r)) for r in range(6)])

tile = Cell(2, (1, 0, 2))
print(tile, status(tile), [str(n) for n in neighbors(tile)])

# seeds on isocline 0 are active, and the scent wakes black seeds five
# levels down; a 45-level strip ends up with an active seed near every tile
top = Cell(0, (0,) * 20)
strip = Region.strip(top, 45, 200)
state = activate(strip)
print(len(strip), "tiles,", len(state.active), "active seeds")
print("tiles farther than 20 from an active seed:", len(density_check(strip, state)))
