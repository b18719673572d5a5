from collections import Counter
from itertools import islice

import pytest
from hypothesis import given, settings, strategies as st

from hyptess.euclid import PHANTOM, TRIANGLE
from hyptess.heptagrid import (
    Cell, Region, adjacent, iter_slice, left, leftmost, right, rightmost,
)
from hyptess.mauve import (
    MauveTriangle, beta_mask, build_path, check_path, crossing_report, format_cells,
    iter_refined_basis, latitude_classify, latitude_vertex_depth, mauve_at, mauve_from_red,
    parse_cells, refined_basis, row_crossing_report, upper_overlaps,
)
from hyptess.trilaterals import CapacityError, HypStructure, HypTrilateral
from conftest import axis


def test_mauve_from_red_rows():
    m = mauve_from_red(HypTrilateral(1, TRIANGLE, axis(5), 0))
    assert (m.vertex_row, m.vertex_row + m.height_rows) == (1, 9)
    assert m.low_point_row == 7
    assert m.height_levels == 2 * HypTrilateral(1, TRIANGLE, axis(5), 0).height_levels


@pytest.mark.parametrize("gen,kind", [(0, TRIANGLE), (2, TRIANGLE), (1, PHANTOM)])
def test_mauve_from_red_rejects(gen, kind):
    with pytest.raises(ValueError):
        mauve_from_red(HypTrilateral(gen, kind, axis(5), 0))


def test_mauve_from_red_capacity():
    with pytest.raises(CapacityError):
        mauve_from_red(HypTrilateral(1, TRIANGLE, axis(5), 0), Region.cone(axis(5), 3))


def test_low_point_is_phantom_mid_line():
    # the red phantom sharing the mauve basis row spans rows 5..9 for gen 1
    for g in (1, 3, 5):
        m = MauveTriangle(g, axis(0), 0)
        red_h = 2 ** (g + 1)
        phantom_vertex = m.vertex_row + red_h
        assert m.low_point_row == phantom_vertex + red_h // 2


def test_latitudes_stack(plane):
    for g in (1, 3, 5):
        m = MauveTriangle(g, axis(latitude_vertex_depth(plane, g, 400)), 0)
        nxt = m.basis_depth
        assert latitude_vertex_depth(plane, g, nxt) == nxt
        assert latitude_vertex_depth(plane, g, nxt - 1) == m.vertex.depth


def test_classify_leg_is_inside(plane):
    m = mauve_at(plane, axis(45), 1)
    assert m is not None
    tile = rightmost(m.vertex, 20)
    v = latitude_classify(tile, 1, plane)
    assert v.verdict == "inside" and v.mauves == (m,)


def test_classify_between(plane):
    # iso-0 tile at depth 80 under a white depth-45 tile: not in any gen-1 mauve
    gap = right(axis(45))
    assert mauve_at(plane, gap, 1) is None
    v = latitude_classify(leftmost(gap, 35), 1, plane)
    assert v.verdict == "between"
    a, b = v.mauves
    assert a.vertex == axis(45) and b.vertex.depth == 45


def test_classify_partial_above_first_latitude(plane):
    assert latitude_classify(axis(41), 1, plane).verdict == "partial"


def test_classify_rejects_blue_generation(plane):
    with pytest.raises(ValueError):
        latitude_classify(axis(41), 2, plane)


@pytest.mark.parametrize("gen,top", [(1, 45), (3, 45), (5, 160)])
def test_classification_total(gen, top):
    region = Region.strip(axis(top), 40, 300, origin_depth=0)
    s = HypStructure(region, 5)
    verdicts = Counter(latitude_classify(c, gen, s).verdict for c in region.cells)
    assert verdicts["partial"] == 0 and sum(verdicts.values()) == len(region)


def test_gen1_refined_basis_is_plain_basis(plane):
    m = MauveTriangle(1, axis(45), 0)
    assert refined_basis(m, plane, limit=3000) == list(islice(iter_slice(m.vertex, 40), 3000))


def _gen1_neighbour(plane, depth=165):
    c = right(axis(depth))
    while not plane.is_active(c):
        c = right(c)
    return mauve_at(plane, c, 1)


def test_gen3_refined_basis_detours_at_low_point(plane):
    big = MauveTriangle(3, axis(35), 0)
    small = _gen1_neighbour(plane)
    assert small is not None and big.contains(small.vertex)
    entry = small.low_points()[0]
    assert entry.depth == big.basis_depth
    walk = list(islice(iter_refined_basis(big, plane, start=left(entry)), 40))
    assert walk[0] == left(entry) and walk[1] == entry
    assert [c.depth for c in walk[1:12]] == list(range(195, 206))
    assert walk[11] == leftmost(small.vertex, small.height_levels)


def test_refined_basis_is_connected(plane):
    big = MauveTriangle(3, axis(35), 0)
    small = _gen1_neighbour(plane)
    entry = small.low_points()[0]
    walks = [refined_basis(big, plane, limit=3000),
             list(islice(iter_refined_basis(big, plane, start=left(entry)), 5000))]
    for w in walks:
        assert sum(not adjacent(a, b) for a, b in zip(w, w[1:])) == 0


def test_refined_basis_rejects_off_basis_start(plane):
    with pytest.raises(ValueError):
        next(iter_refined_basis(MauveTriangle(3, axis(35), 0), plane, start=axis(100)))


def test_row_crossings_only_at_low_points():
    crossings, bad = row_crossing_report(9, 2048)
    assert crossings > 0 and bad == []


def test_hyperbolic_crossings_only_at_low_points():
    region = Region.strip(axis(0), 200, 25, origin_depth=0)
    s = HypStructure(region, 3)
    ms = [m for c in region.cells for g in (1, 3) if (m := mauve_at(s, c, g))]
    extra = _gen1_neighbour(s)
    crossings, bad = crossing_report(s, ms + [extra])
    assert crossings > 0 and bad == []


def test_same_generation_mauves_disjoint(plane):
    region = Region.strip(axis(40), 10, 200, origin_depth=0)
    ms = [m for c in region.level(45) if (m := mauve_at(plane, c, 1))]
    assert len(ms) > 1
    probe = region.level(50)
    for c in probe:
        assert sum(m.contains(c) for m in ms) <= 1


def test_single_tile_path():
    region = Region.cone(axis(40), 0)
    assert build_path(region, HypStructure(region, 2)) == [axis(40)]


def test_path_needs_forest_band():
    region = Region.strip(axis(40), 3, 10)
    with pytest.raises(ValueError):
        build_path(region, HypStructure(region, 2))


@pytest.mark.parametrize("tops,depth,origin,gen", [
    ([axis(40)], 9, 40, 2),
    ([axis(40)], 9, 40, 4),
    ([axis(39)], 9, 20, 3),
    ([Cell(0, (0,) * 39 + (1,))], 8, 20, 1),
])
def test_path_exact(tops, depth, origin, gen):
    region = Region.band(tops, depth, origin_depth=origin)
    p = build_path(region, HypStructure(region, gen), gen)
    report = check_path(region, p)
    assert report == {"region": len(region), "visited": len(region), "duplicates": 0,
                      "outside": 0, "missing": 0, "nonadjacent": 0}
    assert p[0] == tops[0] and p[-1].depth == region.max_depth


@settings(max_examples=30, deadline=None)
@given(st.integers(30, 60), st.integers(1, 4), st.integers(0, 6), st.integers(0, 5),
       st.sampled_from([0, 1, 2, 3, 4]))
def test_path_exact_random_bands(depth, width, k, offset, gen):
    top = axis(depth)
    for _ in range(offset):
        top = right(top)
    tops = [top]
    for _ in range(width - 1):
        tops.append(right(tops[-1]))
    region = Region.band(tops, k, origin_depth=depth // 20 * 20)
    p = build_path(region, HypStructure(region, gen), gen)
    r = check_path(region, p)
    assert len(p) == len(region)
    assert r["duplicates"] == r["missing"] == r["nonadjacent"] == 0


def test_path_and_beta_dumps():
    cells = [axis(3), right(axis(3))]
    assert parse_cells(format_cells(cells)) == (cells, False)
    assert parse_cells(format_cells(cells, beta=True)) == (cells, True)


def test_beta_mask(plane):
    m = MauveTriangle(1, axis(45), 0)
    region = Region.strip(axis(84), 2, 10)
    mask = beta_mask(m, plane, region, limit=50)
    assert mask == set(region.level(85))


def test_upper_overlap_multiplicity_measured():
    region = Region.strip(axis(0), 200, 25, origin_depth=0)
    s = HypStructure(region, 5)
    ms = [m for c in region.cells for g in (1, 3, 5) if (m := mauve_at(s, c, g))]
    counts = upper_overlaps(ms)
    assert max(counts.values()) == 1
