import pytest

from hyptess.euclid import PHANTOM, TRIANGLE, RowWindow, Trilateral, enumerate_trilaterals
from hyptess.heptagrid import Cell, Region, iter_slice, leftmost, right, rightmost, slice_size
from hyptess.seeds import explicit_field
from hyptess.trilaterals import (
    CapacityError, HypStructure, HypTrilateral, anchors, axis_window, build, green_signal, project_rows,
)
from conftest import axis


def test_depth20_gen0():
    s = build(Region.strip(axis(20), 20, 200), 0)
    tris = s.by_generation(0, TRIANGLE)
    assert [t.vertex for t in tris] == [axis(20)]
    assert tris[0].basis_isocline == 10
    phantoms = s.by_generation(0, PHANTOM)
    assert phantoms and all(p.vertex.depth == 30 for p in phantoms)
    assert all(s.is_active(p.vertex) for p in phantoms)


def test_gen1_vertices_on_isocline5(deep_structure):
    reds = deep_structure.by_generation(1, TRIANGLE)
    assert reds and {t.vertex.depth % 20 for t in reds} == {5}


def test_capacity_error():
    with pytest.raises(CapacityError):
        build(Region.cone(axis(20), 9), 0)
    with pytest.raises(CapacityError):
        build(Region.strip(axis(20), 20, 50), 1)


def test_origin_must_be_isocline_zero():
    with pytest.raises(ValueError):
        build(Region.strip(axis(25), 20, 50), 0)


def test_projection_examples():
    assert HypTrilateral(0, TRIANGLE, axis(0), 0).project() == Trilateral(0, TRIANGLE, 0)
    assert HypTrilateral(1, TRIANGLE, axis(5), 0).project().vertex_row == 1


def test_projection_equals_row_model(deep_structure):
    proj = project_rows(deep_structure, axis=axis(20))
    assert proj == enumerate_trilaterals(RowWindow(0, 9, 1), "contained")
    assert proj == enumerate_trilaterals(axis_window(deep_structure), "contained")


def test_anchors(deep_structure):
    a = anchors(deep_structure)
    assert a == {"gen0_vertex": {0}, "gen0_basis": {10}, "gen0_green": {15}, "gen1_vertex": {5}}


def test_membership_and_legs():
    t = HypTrilateral(0, TRIANGLE, axis(20), 20)
    assert t.contains(axis(30)) and not t.contains(axis(31))
    assert t.on_leg(axis(25)) and t.on_leg(t.right_leg[4])
    assert not t.on_leg(Cell(0, (0,) * 20 + (0, 1, 0)))
    assert len(list(t.basis())) == slice_size(axis(20), 10)


def test_green_single_phantom():
    top, mid, low = axis(20), axis(25), Cell(0, (0,) * 28 + (1, 0))
    field = explicit_field([top, mid, low])
    region = Region.strip(top, 20, 3000)
    s = build(region, 0, seed_field=field)
    assert [t.vertex for t in s.by_generation(0, PHANTOM)] == [low]
    segs = green_signal(s, 35)
    assert len(segs) == 1
    assert segs[0] == [c for c in iter_slice(low, 5) if c in region]


def test_green_stops_at_triangle_leg(deep_structure):
    segs = green_signal(deep_structure, 35)
    red = deep_structure.by_generation(1, TRIANGLE)[0]
    right_leg = red.leg_cells_at(35)[1]
    assert any(seg[-1] == right_leg for seg in segs) or right_leg not in deep_structure.region


def test_green_run_ends_on_leg_between_neighbours():
    # two gen-1 triangles side by side: their green runs touch, and the
    # right leg of the left one cuts the run
    a = axis(25)
    b = right(a)
    region = Region.band([a, b], 10, origin_depth=20)
    s = HypStructure(region, 1)
    s.trilaterals = [HypTrilateral(1, TRIANGLE, a, 20), HypTrilateral(1, TRIANGLE, b, 20)]
    segs = green_signal(s, 35)
    assert len(segs) == 2
    assert segs[0][-1] == rightmost(a, 10) and segs[1][0] == leftmost(b, 10)
    assert sum(map(len, segs)) == len(region.level(35))


def test_green_empty_level(deep_structure):
    assert green_signal(deep_structure, 21) == []


def test_dump(deep_structure):
    line = deep_structure.dump().splitlines()[0]
    gen, kind, addr, iso = line.split()
    assert (gen, kind, iso) == ("0", "triangle", "10") and addr.startswith("s0:")
