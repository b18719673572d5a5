import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from hyptess import gf2
from hyptess.ca import (
    BudgetExceeded, Configuration, Tile, TileSet, XorAutomaton, XorState, as_automaton,
    bit_choices, budget_from_env, constant_automaton, cycle_fixture, format_configuration,
    format_tileset, identity_automaton, injectivity_exhaustive, injectivity_gf2,
    injectivity_gf2_rows, linear_map, local_correct, parse_configuration, parse_tileset, path_realization,
    port_tileset, random_fixture, step, two_tile_tset, uniform_tileset, witness_pair, xor_step,
)
from hyptess.heptagrid import CENTRAL, Region, neighbors, root
from hyptess.mauve import build_path, parse_cells
from hyptess.trilaterals import HypStructure
from conftest import axis

FIXTURES = Path(__file__).parent / "fixtures"


def bits(config, cells=None):
    cells = sorted(config.states) if cells is None else cells
    return [config.states[c].bit for c in cells]


def plain(region, value=0):
    return Configuration(region, {c: value for c in region.cells})


def test_identity_and_constant_rules():
    region = Region.ball(CENTRAL, 2)
    cfg = Configuration(region, {c: i % 2 for i, c in enumerate(sorted(region.cells))})
    assert step(identity_automaton(), cfg) == cfg
    out = step(constant_automaton(7), cfg)
    assert all(out[c] == 7 for c in cfg.interior)
    assert all(out[c] == cfg[c] for c in region.cells if c not in cfg.interior)


def test_step_reads_previous_configuration_only():
    region = Region.ball(CENTRAL, 2)
    shift = lambda s, nb: nb[0]  # copy the father (the root copies the central tile)
    cfg = Configuration(region, {c: c.depth for c in region.cells})
    out = step(constant_automaton(0).__class__(shift), cfg)
    assert out[root(0)] == -1 and out[CENTRAL] == cfg[neighbors(CENTRAL)[0]]


def test_configuration_must_be_total():
    region = Region.ball(CENTRAL, 1)
    with pytest.raises(ValueError):
        Configuration(region, {CENTRAL: 0})


def test_uniform_tiles_correct_everywhere_and_locality():
    xa, cfg = cycle_fixture()
    assert all(local_correct(cfg, c, "T", xa.T) for c in cfg.interior)
    T = two_tile_tset()
    broken = cfg.replace({root(3): cfg[root(3)]._replace(t="v")})
    bad = {c for c in broken.interior if not local_correct(broken, c, "T", T)}
    expected = ({root(3)} | set(neighbors(root(3)))) & set(broken.interior)
    assert bad == expected


def test_tileset_validation():
    with pytest.raises(ValueError):
        TileSet(("a",), {"x": Tile("x", ("a",) * 6)})
    with pytest.raises(ValueError):
        TileSet(("a",), {"x": Tile("x", ("a",) * 7, 2, 2)})
    with pytest.raises(ValueError):
        TileSet(("a",), {"x": Tile("x", ("b",) * 7)})
    with pytest.raises(ValueError):
        XorAutomaton(uniform_tileset(), uniform_tileset())


def test_tileset_parse_errors():
    with pytest.raises(ValueError):
        parse_tileset("tile x edges a a a a a a a\n")
    with pytest.raises(ValueError):
        parse_tileset("alphabet: a\ntile x edges a a a\n")
    with pytest.raises(ValueError):
        parse_tileset("alphabet: a\ntile x edges a a a a a a a in 1\n")


def test_file_roundtrips():
    D = parse_tileset((FIXTURES / "ports.tiles").read_text())
    assert len(D) == 42 and parse_tileset(format_tileset(D)).tiles == D.tiles
    text = (FIXTURES / "cycle8.cfg").read_text()
    assert format_configuration(parse_configuration(text)) == text
    with pytest.raises(ValueError):
        parse_configuration("cell c p01 2 u\n")


def test_xor_zero_stays_zero_and_witness_collapses():
    xa, cfg = cycle_fixture()
    zero, ones = witness_pair(xa, cfg)
    assert xor_step(xa, zero) == zero
    assert bits(xor_step(xa, ones)) == bits(zero)


def test_xor_formula_on_correct_cells():
    xa, cfg = cycle_fixture()
    rng = random.Random(5)
    cfg = cfg.replace({c: s._replace(bit=rng.randint(0, 1)) for c, s in cfg.states.items()})
    out = xor_step(xa, cfg)
    ring = [CENTRAL] + [root(k) for k in range(7)]
    for a, b in zip(ring, ring[1:] + ring[:1]):
        assert out[a].bit == cfg[a].bit ^ cfg[b].bit


def test_incorrect_t_layer_keeps_bit():
    xa, cfg = cycle_fixture()
    xa = XorAutomaton(xa.D, two_tile_tset())
    broken = cfg.replace({root(3): cfg[root(3)]._replace(t="v", bit=1)})
    broken = broken.replace({c: broken[c]._replace(bit=1) for c in neighbors(root(3))})
    out = xor_step(xa, broken)
    for c in [root(3), *neighbors(root(3))]:
        assert out[c].bit == broken[c].bit


def test_path_realization_is_d_correct():
    region = Region.cone(axis(40), 7, origin_depth=40)
    path = build_path(region, HypStructure(region, 2))
    cfg = path_realization(region, path)
    D = port_tileset()
    assert cfg.interior and all(local_correct(cfg, c, "D", D) for c in cfg.interior)


def test_path_realization_rejects_interior_end():
    region = Region.ball(CENTRAL, 2)
    with pytest.raises(ValueError):
        path_realization(region, sorted(region.cells)[:-1])


def test_identity_and_constant_injectivity():
    region = Region.ball(CENTRAL, 2)
    base = plain(region)
    ch = {c: [0, 1] for c in base.interior}
    assert injectivity_exhaustive(lambda c: step(identity_automaton(), c), base, ch).injective
    r = injectivity_exhaustive(lambda c: step(constant_automaton(0), c), base, ch)
    assert not r.injective
    a, b = r.witness
    assert a != b and step(constant_automaton(0), a) == step(constant_automaton(0), b)


def test_exhaustive_cycle_witness_is_all0_all1():
    xa, cfg = cycle_fixture()
    r = injectivity_exhaustive(as_automaton(xa), cfg, bit_choices(cfg))
    a, b = r.witness
    assert bits(a, cfg.interior) == [0] * 8 and bits(b, cfg.interior) == [1] * 8


def test_budget(monkeypatch):
    xa, cfg = cycle_fixture()
    with pytest.raises(BudgetExceeded):
        injectivity_exhaustive(as_automaton(xa), cfg, bit_choices(cfg), budget=100)
    monkeypatch.setenv("HYPTESS_BUDGET", "10")
    assert budget_from_env() == 10
    with pytest.raises(BudgetExceeded):
        injectivity_exhaustive(as_automaton(xa), cfg, bit_choices(cfg))
    monkeypatch.setenv("HYPTESS_BUDGET", "lots")
    with pytest.raises(ValueError):
        budget_from_env()


def test_all_frozen_is_injective():
    xa, cfg = cycle_fixture()
    frozen = XorAutomaton(xa.D, xa.T, frozenset(cfg.interior))
    assert injectivity_gf2(frozen, cfg).injective


def test_two_cycle_matrix():
    ok, kernel = injectivity_gf2_rows([0b11, 0b11], 2)
    assert not ok and 0b11 in kernel


def test_gf2_cycle_kernel():
    xa, cfg = cycle_fixture()
    r = injectivity_gf2(xa, cfg)
    assert not r.injective and r.kernel == (frozenset(cfg.interior),)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_layers_conserved_and_beta_frozen(seed):
    rng = random.Random(seed)
    xa, cfg = random_fixture(rng)
    out = xor_step(xa, cfg)
    for c, s in cfg.states.items():
        assert (out[c].d, out[c].t) == (s.d, s.t)
        if c in xa.beta or c not in cfg.interior:
            assert out[c] == s


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_linearity(seed):
    rng = random.Random(seed)
    xa, cfg = random_fixture(rng)

    def with_bits(bs):
        return cfg.replace({c: cfg[c]._replace(bit=b) for c, b in bs.items()})

    cells = sorted(cfg.states)
    a = {c: rng.randint(0, 1) for c in cells}
    b = {c: rng.randint(0, 1) for c in cells}
    fa, fb = xor_step(xa, with_bits(a)), xor_step(xa, with_bits(b))
    fab = xor_step(xa, with_bits({c: a[c] ^ b[c] for c in cells}))
    assert all(fab[c].bit == fa[c].bit ^ fb[c].bit for c in cells)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_deciders_agree_and_witness_valid(seed):
    xa, cfg = random_fixture(random.Random(seed))
    exh = injectivity_exhaustive(as_automaton(xa), cfg, bit_choices(cfg))
    lin = injectivity_gf2(xa, cfg)
    assert exh.injective == lin.injective
    if exh.witness:
        a, b = exh.witness
        assert a != b and xor_step(xa, a) == xor_step(xa, b)
        diff = frozenset(c for c in cfg.interior if a[c].bit != b[c].bit)
        # the difference of a witness pair is a kernel vector
        cells, rows = linear_map(xa, cfg)
        vec = sum(1 << i for i, c in enumerate(cells) if c in diff)
        assert gf2.apply(rows, vec) == 0


@pytest.mark.parametrize("cfg_name,beta,injective", [
    ("cycle8.cfg", None, False),
    ("cycle7.cfg", "central.beta", False),
    ("broken.cfg", None, True),
])
def test_hand_built_fixtures(cfg_name, beta, injective):
    D = parse_tileset((FIXTURES / "ports.tiles").read_text())
    T = parse_tileset((FIXTURES / "two.tiles").read_text())
    cfg = parse_configuration((FIXTURES / cfg_name).read_text())
    frozen = frozenset(parse_cells((FIXTURES / beta).read_text())[0]) if beta else frozenset()
    xa = XorAutomaton(D, T, frozen)
    exh = injectivity_exhaustive(as_automaton(xa), cfg, bit_choices(cfg))
    assert exh.injective == injectivity_gf2(xa, cfg).injective == injective
