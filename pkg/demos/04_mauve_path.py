"""
Mauve triangles and a path through every tile
=============================================

Mauve triangles double the red ones.  Each tile sits inside a mauve
triangle of its latitude or between two of them, and smaller mauve legs
meet a larger basis only at their low points.  Slicing along latitudes
gives a path that visits a region tile by tile.
"""

from collections import Counter
from itertools import islice
from pathlib import Path

from hyptess.heptagrid import Cell, Region, right
from hyptess.mauve import (
    MauveTriangle, build_path, check_path, iter_refined_basis, latitude_classify, mauve_at,
    row_crossing_report,
)
from hyptess.render import RenderSpec, render_heptagrid
from hyptess.trilaterals import HypStructure

plane = HypStructure(Region.cone(Cell(0, ()), 0, origin_depth=0), 5)

region = Region.strip(Cell(0, (0,) * 45), 40, 300, origin_depth=0)
for g in (1, 3):
    print(g, Counter(latitude_classify(c, g, plane).verdict for c in region.cells))

crossings, exceptions = row_crossing_report(9, 2048)
print(crossings, "crossings in the row model,", len(exceptions), "away from a low point")

# the refined basis of a gen-3 mauve dips into a gen-1 mauve at its low point
big = MauveTriangle(3, Cell(0, (0,) * 35), 0)
c = right(Cell(0, (0,) * 165))
while mauve_at(plane, c, 1) is None:
    c = right(c)
small = mauve_at(plane, c, 1)
entry = small.low_points()[0]
walk = list(islice(iter_refined_basis(big, plane, start=entry), 14))
print("detour depths:", [t.depth for t in walk])

cone = Region.cone(Cell(0, (0,) * 40), 9, origin_depth=40)
path = build_path(cone, HypStructure(cone, 2))
print(check_path(cone, path))

small_cone = Region.cone(Cell(0, (0, 0)), 5)
spec = RenderSpec(small_cone, path=build_path(small_cone, HypStructure(small_cone, 0)))
out = Path("demo_output")
out.mkdir(exist_ok=True)
(out / "path.svg").write_text(render_heptagrid(spec))
print("wrote", out / "path.svg")
