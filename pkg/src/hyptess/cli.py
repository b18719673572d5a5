"""Command-line driver: ``hyptess <group> <action> [options]``.

Reports go to stdout as ``key=value`` lines; artifacts go to ``--out``.
Exit status is 0 on success, 1 when a verification finds violations and 2
for usage errors or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import ca, euclid, mauve, render, seeds, trilaterals
from .heptagrid import (
    CENTRAL,
    ISOCLINES,
    Cell,
    Region,
    ball,
    format_cell,
    isocline,
    neighbors,
    parse_cell,
    right,
    sons,
    status,
)

OK, VIOLATION, USAGE = 0, 1, 2
PATH_BAND_LEVELS = 9


class UsageError(Exception):
    pass


def _emit(out, **fields) -> None:
    for k, v in fields.items():
        out.write(f"{k}={v}\n")


def _join(values) -> str:
    return ",".join(str(v) for v in values)


# -- region specs -----------------------------------------------------------

def parse_region(spec: str) -> Region:
    """``cone:<addr>:<d>``, ``band:<addr>:<n>:<d>``, ``strip:<addr>:<d>:<w>``,
    ``ball:<addr>:<r>`` or ``depth<N>``, each optionally suffixed ``@<origin>``.

    ``depth<N>`` is the cone of :data:`PATH_BAND_LEVELS` levels under the
    leftmost depth-N tile of sector 0.  The row origin defaults to the last
    isocline 0 at or above the region's top.
    """
    body, _, origin_txt = spec.partition("@")
    try:
        origin = int(origin_txt) if origin_txt else None
        if body.startswith("depth"):
            n = int(body[5:])
            if n < 0:
                raise ValueError
            region = Region.cone(Cell(0, (0,) * n), PATH_BAND_LEVELS)
        else:
            kind, addr, *nums = body.split(":", 1)[0], *_split_addr(body)
            nums = [int(x) for x in nums]
            cell = parse_cell(addr)
            if kind == "cone" and len(nums) == 1:
                region = Region.cone(cell, nums[0])
            elif kind == "band" and len(nums) == 2:
                tops = [cell]
                for _ in range(nums[0] - 1):
                    tops.append(right(tops[-1]))
                region = Region.band(tops, nums[1])
            elif kind == "strip" and len(nums) == 2:
                region = Region.strip(cell, nums[0], nums[1])
            elif kind == "ball" and len(nums) == 1:
                region = Region.ball(cell, nums[0])
            else:
                raise ValueError
    except ValueError as e:
        raise UsageError(f"bad region spec {spec!r} {e}".rstrip()) from None
    if origin is None:
        origin = max(region.min_depth, 0) // ISOCLINES * ISOCLINES
    elif origin % ISOCLINES:
        raise UsageError(f"row origin {origin} is not a multiple of {ISOCLINES}")
    region.origin_depth = origin
    return region


def _split_addr(body: str) -> list[str]:
    # kind:sK:path:n1[:n2]; the address itself contains one colon
    parts = body.split(":")
    if len(parts) < 4:
        raise ValueError
    return [parts[1] + ":" + parts[2], *parts[3:]]


def _write(outdir: Optional[str], name: str, text: str) -> Optional[Path]:
    if outdir is None:
        return None
    d = Path(outdir)
    d.mkdir(parents=True, exist_ok=True)
    p = d / name
    p.write_text(text)
    return p


def _seed_field(spec: str) -> seeds.SeedField:
    try:
        return seeds.load_field(spec)
    except (ValueError, OSError) as e:
        raise UsageError(str(e)) from None


# -- euclid -----------------------------------------------------------------

def cmd_euclid_verify(args, out) -> int:
    rows, g = args.rows, args.max_gen
    pairs = euclid.check_pair_properties(euclid.RowWindow(0, rows, g))
    counts, bad2 = euclid.check_free_rows(euclid.RowWindow(0, max(rows, 2 ** (g + 3)), g))
    red = [min(counts[n]) if len(counts.get(n, ())) == 1 else "mixed"
           for n in range(1, g + 1, 2) if n in counts]
    blue = sorted({c for n, cs in counts.items() if n % 2 == 0 for c in cs})
    _emit(out, rows=rows, max_gen=g)
    _emit(out, free_rows_red=_join(red), free_rows_red_generations=_join(range(1, g + 1, 2)),
          free_rows_blue=_join(blue))
    for key in sorted(pairs):
        _emit(out, **{f"pair_{key}_violations": len(pairs[key])})
    total = sum(len(v) for v in pairs.values()) + len(bad2)
    _emit(out, free_row_violations=len(bad2), violations=total)
    for msg in [*bad2, *(m for k in sorted(pairs) for m in pairs[k])][:20]:
        _emit(out, violation=msg)
    _emit(out, status="ok" if total == 0 else "violation")
    return OK if total == 0 else VIOLATION


def cmd_euclid_dump(args, out) -> int:
    w = euclid.RowWindow(args.start, args.rows, args.max_gen)
    tris = euclid.enumerate_trilaterals(w, args.mode)
    text = euclid.dump(tris)
    p = _write(args.out, "trilaterals.txt", text)
    if p is None:
        out.write(text)
    _emit(out, count=len(tris))
    return OK


# -- grid -------------------------------------------------------------------

def cmd_grid_info(args, out) -> int:
    try:
        c = parse_cell(args.cell)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _emit(out, cell=format_cell(c), depth=c.depth, status=status(c), isocline=isocline(c),
          neighbors=_join(format_cell(n) for n in neighbors(c)),
          sons=_join(format_cell(s) for s in sons(c)))
    if args.radius is not None:
        dist = ball(c, args.radius)
        _emit(out, ball_sizes=_join(sum(1 for d in dist.values() if d <= r) for r in range(args.radius + 1)))
    return OK


# -- structures -------------------------------------------------------------

def _structure(args, region: Region) -> trilaterals.HypStructure:
    field = _seed_field(args.seed_field)
    try:
        return trilaterals.build(region, args.max_gen, field)
    except (ValueError, trilaterals.CapacityError) as e:
        raise UsageError(str(e)) from None


def cmd_build_structure(args, out) -> int:
    region = parse_region(args.region)
    s = _structure(args, region)
    _write(args.out, "structure.txt", s.dump())
    _emit(out, region=len(region), origin_depth=s.origin_depth, max_gen=args.max_gen)
    for g in range(args.max_gen + 1):
        _emit(out, **{f"gen{g}_triangles": len(s.by_generation(g, euclid.TRIANGLE)),
                      f"gen{g}_phantoms": len(s.by_generation(g, euclid.PHANTOM))})
    for key, isos in trilaterals.anchors(s).items():
        _emit(out, **{f"anchor_{key}": _join(sorted(isos))})
    proj = trilaterals.project_rows(s, axis=region.level(region.min_depth)[0])
    expected = euclid.enumerate_trilaterals(trilaterals.axis_window(s), "contained")
    same = proj == expected
    _emit(out, projection_matches=str(same).lower())
    return OK if same else VIOLATION


# -- path -------------------------------------------------------------------

def _path_region(args):
    region = parse_region(args.region)
    if not region.is_forest_band():
        raise UsageError("path commands need a cone, band or depth<N> region")
    s = trilaterals.HypStructure(region, args.max_gen, _seed_field(args.seed_field))
    return region, s


def cmd_path_build(args, out) -> int:
    region, s = _path_region(args)
    p = mauve.build_path(region, s, args.max_gen)
    _write(args.out, "path.txt", mauve.format_cells(p))
    return _path_report(region, p, out)


def _path_report(region, p, out) -> int:
    report = mauve.check_path(region, p)
    _emit(out, **report, length=len(p))
    bad = report["duplicates"] + report["outside"] + report["missing"] + report["nonadjacent"]
    _emit(out, status="ok" if not bad else "violation")
    return OK if not bad else VIOLATION


def cmd_path_check(args, out) -> int:
    region, s = _path_region(args)
    if args.path:
        try:
            p, _ = mauve.parse_cells(Path(args.path).read_text())
        except (OSError, ValueError) as e:
            raise UsageError(str(e)) from None
    else:
        p = mauve.build_path(region, s, args.max_gen)
    return _path_report(region, p, out)


# -- cellular automata ------------------------------------------------------

def _read(path: str, parser: Callable):
    try:
        return parser(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise UsageError(f"{path}: {e}") from None


def _beta(spec: str) -> frozenset:
    if spec == "none":
        return frozenset()
    if spec == "central":
        return frozenset({CENTRAL})
    if spec.startswith("file:"):
        cells, flagged = _read(spec[5:], mauve.parse_cells)
        if not flagged:
            raise UsageError("beta file must start with #beta")
        return frozenset(cells)
    raise UsageError(f"bad beta spec {spec!r}")


def _xor_setup(args):
    beta = _beta(args.beta)
    if args.config:
        if not (args.tiles_d and args.tiles_t):
            raise UsageError("--config needs --tiles-d and --tiles-t")
        D = _read(args.tiles_d, ca.parse_tileset)
        T = _read(args.tiles_t, ca.parse_tileset)
        config = _read(args.config, ca.parse_configuration)
        for c, st in config.states.items():
            if st.d not in D or st.t not in T:
                raise UsageError(f"cell {c} uses a tile missing from the tile sets")
        try:
            xa = ca.XorAutomaton(D, T, beta)
        except ValueError as e:
            raise UsageError(str(e)) from None
        return xa, config
    if not beta <= {CENTRAL}:
        raise UsageError("the built-in fixture only supports --beta none or central")
    return ca.cycle_fixture(beta)


def cmd_ca_step(args, out) -> int:
    xa, config = _xor_setup(args)
    cur = config
    try:
        for _ in range(args.steps):
            cur = ca.xor_step(xa, cur)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _write(args.out, "config.txt", ca.format_configuration(cur))
    changed = sum(1 for c in config.states if config.states[c] != cur.states[c])
    _emit(out, cells=len(config.states), interior=len(config.interior), steps=args.steps,
          changed=changed, ones=sum(s.bit for s in cur.states.values()))
    return OK


def _describe(cfg: ca.Configuration, interior, beta) -> str:
    bits = [cfg.states[c].bit for c in interior]
    if not any(bits):
        return "all-0"
    if all(bits):
        return "all-1"
    if beta and all(b == (c not in beta) for c, b in zip(interior, bits)):
        return "all-1-off-beta"
    return "".join(map(str, bits))


def cmd_ca_inject(args, out) -> int:
    if not args.xor:
        raise UsageError("only the xor automaton is available (--xor)")
    xa, config = _xor_setup(args)
    interior = config.interior
    if args.cells is not None and args.cells != len(interior):
        raise UsageError(f"fixture has {len(interior)} interior cells, not {args.cells}")
    try:
        exh = ca.injectivity_exhaustive(ca.as_automaton(xa), config, ca.bit_choices(config))
    except ca.BudgetExceeded as e:
        raise UsageError(str(e)) from None
    except ValueError as e:
        raise UsageError(str(e)) from None
    lin = ca.injectivity_gf2(xa, config)
    _emit(out, interior=len(interior), beta=len(xa.beta), configurations=exh.checked,
          verdict="injective" if exh.injective else "not-injective",
          gf2_verdict="injective" if lin.injective else "not-injective",
          gf2_rank=lin.rank, kernel_dimension=len(lin.kernel),
          agreement=str(exh.injective == lin.injective).lower())
    if exh.witness:
        a, b = exh.witness
        _emit(out, witness=f"({_describe(a, interior, xa.beta)}, {_describe(b, interior, xa.beta)})")
    return OK if exh.injective == lin.injective else VIOLATION


# -- render -----------------------------------------------------------------

def cmd_render(args, out) -> int:
    if args.target == "euclid":
        svg = render.render_euclid(euclid.RowWindow(args.start, args.rows, args.max_gen))
        name = "euclid.svg"
        _emit(out, trilaterals=render.count_polylines(svg, "trilateral"))
    else:
        if not args.region:
            raise UsageError("render heptagrid needs --region")
        region = parse_region(args.region)
        overlays = set(filter(None, args.overlay.split(","))) if args.overlay else set()
        unknown = overlays - {"trilaterals", "green", "mauve", "lowpoints", "path", "beta"}
        if unknown:
            raise UsageError(f"unknown overlays {sorted(unknown)}")
        spec = render.RenderSpec(region)
        if overlays & {"trilaterals", "green", "mauve", "lowpoints"}:
            s = _structure(args, region)
            if "trilaterals" in overlays:
                spec.trilaterals = s.trilaterals
            if "green" in overlays:
                spec.green = [seg for d in range(region.min_depth, region.max_depth + 1)
                              for seg in trilaterals.green_signal(s, d)]
            if overlays & {"mauve", "lowpoints"}:
                spec.mauves = mauve.mauves(s)
                spec.low_points = "lowpoints" in overlays
        if "path" in overlays:
            if not region.is_forest_band():
                raise UsageError("the path overlay needs a cone, band or depth<N> region")
            s = trilaterals.HypStructure(region, args.max_gen, _seed_field(args.seed_field))
            spec.path = mauve.build_path(region, s, args.max_gen)
        if "beta" in overlays:
            if not args.beta or args.beta == "none":
                raise UsageError("the beta overlay needs --beta file:<path> or central")
            spec.beta = _beta(args.beta)
        svg = render.render_heptagrid(spec)
        name = "heptagrid.svg"
        _emit(out, tiles=svg.count('class="tile"'))
    p = _write(args.out, name, svg)
    _emit(out, bytes=len(svg.encode()), file=p if p is not None else "-")
    return OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyptess", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="group", required=True)

    def common(p, region=False, gen=None, out=True):
        if out:
            p.add_argument("--out", help="directory for artifacts")
        if region:
            p.add_argument("--region", required=region == "required")
            p.add_argument("--seed-field", default="default")
        if gen is not None:
            p.add_argument("--max-gen", type=int, default=gen)

    eu = sub.add_parser("euclid").add_subparsers(dest="action", required=True)
    p = eu.add_parser("verify")
    common(p, gen=7)
    p.add_argument("--rows", type=int, default=1024)
    p.set_defaults(func=cmd_euclid_verify)
    p = eu.add_parser("dump")
    common(p, gen=3)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--rows", type=int, default=32)
    p.add_argument("--mode", choices=("span", "vertex", "contained"), default="vertex")
    p.set_defaults(func=cmd_euclid_dump)

    gr = sub.add_parser("grid").add_subparsers(dest="action", required=True)
    p = gr.add_parser("info")
    p.add_argument("--cell", default="c")
    p.add_argument("--radius", type=int)
    p.set_defaults(func=cmd_grid_info)

    bu = sub.add_parser("build").add_subparsers(dest="action", required=True)
    p = bu.add_parser("structure")
    common(p, region="required", gen=1)
    p.set_defaults(func=cmd_build_structure)

    pa = sub.add_parser("path").add_subparsers(dest="action", required=True)
    p = pa.add_parser("build")
    common(p, region="required", gen=2)
    p.set_defaults(func=cmd_path_build)
    p = pa.add_parser("check")
    common(p, region="required", gen=2)
    p.add_argument("--path", help="path dump to check instead of building one")
    p.set_defaults(func=cmd_path_check)

    cp = sub.add_parser("ca").add_subparsers(dest="action", required=True)
    for name, func in (("step", cmd_ca_step), ("inject", cmd_ca_inject)):
        p = cp.add_parser(name)
        common(p)
        p.add_argument("--beta", default="none", help="none, central or file:<path>")
        p.add_argument("--tiles-d")
        p.add_argument("--tiles-t")
        p.add_argument("--config")
        if name == "step":
            p.add_argument("--steps", type=int, default=1)
        else:
            p.add_argument("--xor", action="store_true")
            p.add_argument("--cells", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("render")
    p.add_argument("target", choices=("euclid", "heptagrid"))
    common(p, region=True, gen=3)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--rows", type=int, default=32)
    p.add_argument("--overlay", default="")
    p.add_argument("--beta")
    p.set_defaults(func=cmd_render)
    return ap


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args, out)
    except UsageError as e:
        sys.stderr.write(f"hyptess: error: {e}\n")
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
