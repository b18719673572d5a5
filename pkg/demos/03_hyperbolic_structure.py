"""
Trilaterals on the heptagrid
============================

Five levels make one row of the row model.  A structure built on a region
must put generation-0 vertices on isocline 0, their bases on isocline 10,
phantom green lines on isocline 15 and generation-1 vertices on isocline 5.
"""

from hyptess.euclid import enumerate_trilaterals
from hyptess.heptagrid import Cell, Region
from hyptess.trilaterals import CapacityError, anchors, axis_window, build, green_signal, project_rows

top = Cell(0, (0,) * 20)
s = build(Region.strip(top, 45, 150), 1)
print(len(s.trilaterals), "trilaterals")
print(anchors(s))

# the seed axis below the top tile is a copy of the row model
print(project_rows(s, axis=top) == enumerate_trilaterals(axis_window(s), "contained"))

segments = green_signal(s, 35)
print(len(segments), "green segment(s) on depth 35, first of", len(segments[0]), "tiles")

try:
    build(Region.cone(top, 9), 0)
except CapacityError as e:
    print("too shallow:", e)
