import pytest

from hyptess.heptagrid import Cell, Region, is_black, iter_slice
from hyptess.seeds import (
    DEFAULT_FIELD, SeedField, activate, density_check, explicit_field, is_seed, load_field,
)
from conftest import axis


def test_default_field_rules():
    assert is_seed(axis(10))
    assert not is_seed(Cell(0, (0,) * 9 + (1,)))  # white, isocline 10
    assert not is_seed(axis(7))


def test_single_seed_activates_black_fifth_level():
    top = axis(20)
    state = activate(Region.cone(top, 5))
    fifth = list(iter_slice(top, 5))
    assert top in state.active
    assert state.active == {top} | {c for c in fifth if is_black(c)}


def test_white_tile_gets_scent_but_stays_inactive():
    top = axis(20)
    state = activate(Region.cone(top, 5))
    white = next(c for c in iter_slice(top, 5) if not is_black(c))
    assert white in state.scent and white not in state.active


def test_no_isocline_zero_means_nothing_active():
    assert activate(Region.cone(axis(21), 6)).active == frozenset()


def test_activate_type_check():
    with pytest.raises(TypeError):
        activate({axis(20)})


def test_region_activation_matches_plane_activity(deep_strip):
    state = activate(deep_strip)
    assert state.active == {c for c in deep_strip.cells if DEFAULT_FIELD.is_active(c)}


def test_density_default_field(deep_strip):
    assert density_check(deep_strip) == []


def test_density_adversarial_field():
    top = axis(20)
    field = SeedField(lambda c: c.depth == 20 and is_black(c), "top-only")
    region = Region.strip(top, 45, 60)
    bad = density_check(region, seed_field=field)
    assert bad and min(c.depth for c in bad) > 40


def test_density_empty_region():
    assert density_check(Region([])) == []


def test_load_field(tmp_path):
    f = tmp_path / "seeds.txt"
    f.write_text("# seeds\ns0:0\n\ns1:0.0\n")
    field = load_field(f"file:{f}")
    assert field(Cell(0, (0,))) and not field(axis(5))
    assert load_field("default") is DEFAULT_FIELD
    with pytest.raises(ValueError):
        load_field("weird")


def test_explicit_field_cascade():
    a, b = axis(20), axis(25)
    field = explicit_field([a, b, axis(35)])
    assert field.is_active(b) and not field.is_active(axis(35))
