"""
Interwoven triangles along one axis
===================================

The row model: every trilateral is coaxial, generation n is twice as tall
as generation n-1, and triangles alternate with phantoms.
"""

from pathlib import Path

from hyptess.euclid import (
    RowWindow, Trilateral, TRIANGLE, enumerate_trilaterals, free_rows, towers,
)
from hyptess.render import render_euclid

# the first trilaterals of each generation in rows 0..31
window = RowWindow(0, 32, 3)
for t in enumerate_trilaterals(window, "vertex")[:6]:
    print(t.generation, t.kind, "rows", t.vertex_row, "..", t.basis_row, t.color)

# red triangles of generation 2n+1 keep exactly 2^(n+1)+1 rows free of
# smaller red triangles
for g in (1, 3, 5, 7):
    t = Trilateral(g, TRIANGLE, 1)
    print(f"gen {g}: {len(free_rows(t))} free rows")

# phantoms sharing a green line form towers holding every generation up to
# the largest one
print(towers(RowWindow(0, 64, 4))[:4])

out = Path("demo_output")
out.mkdir(exist_ok=True)
(out / "euclid.svg").write_text(render_euclid(window))
print("wrote", out / "euclid.svg")
