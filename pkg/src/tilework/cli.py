"""Command-line front end: ``tilework <group> <verb> ...``.

Exit codes: 0 found/valid, 1 negative result, 2 unknown or limit hit,
64 usage or input error.
"""

import argparse
import json
import sys

from . import balance, geometry, machine, polyform, robinson, substitution, wang
from ._util import BudgetExceeded

OK, NEGATIVE, UNKNOWN, USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _parse(kind, path, ctor):
    data = _load(path)
    try:
        return ctor(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: not a valid {kind}: {exc}") from None


def _size(text):
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}") from None
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("sizes must be positive")
    return w, h


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _emit(obj, out=None):
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=1, ensure_ascii=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# wang


def cmd_wang_solve(args):
    ts = _parse("tile set", args.tiles, wang.WangTileSet.from_json)
    seed = _parse("placement", args.seed, wang.GridPlacement.from_json) if args.seed else None
    w, h = args.size
    found = wang.solve_rectangle(ts, w, h, seed, args.budget)
    if found is None:
        print("none")
        return NEGATIVE
    _emit(found.to_json(), args.out)
    return OK


def cmd_wang_torus(args):
    ts = _parse("tile set", args.tiles, wang.WangTileSet.from_json)
    w, h = args.size
    found = wang.solve_torus(ts, w, h, args.budget)
    if found is None:
        print("none")
        return NEGATIVE
    _emit(found.to_json(), args.out)
    return OK


def cmd_wang_decide(args):
    ts = _parse("tile set", args.tiles, wang.WangTileSet.from_json)
    verdict = wang.decide_up_to(ts, args.max, args.budget, args.jobs)
    _emit(verdict.to_json(), args.out)
    return {"tiles_with_period": OK, "no_tiling": NEGATIVE}.get(verdict.outcome, UNKNOWN)


# ---------------------------------------------------------------------------
# tm


def _machine(path):
    m = _parse("machine", path, machine.TuringMachine.from_json)
    return m


def cmd_tm_run(args):
    m = _machine(args.machine)
    res = machine.run(m, args.steps)
    if res.running:
        print("running")
    else:
        print(f"halted {res.halted_at}")
    if args.trace:
        _emit([{"time": c.time, "state": c.state, "head": c.head, "tape": sorted(c.tape.items())} for c in res.trace], args.trace)
    return OK


def cmd_tm_compile(args):
    m = _machine(args.machine)
    try:
        compiled = machine.compile_machine(m, args.rows)
    except machine.MalformedMachine as exc:
        raise UsageError(str(exc)) from None
    if not args.complete:
        _emit(compiled.to_json(), args.out)
        return OK
    filled = compiled.complete(args.rows, args.budget)
    if filled is None:
        print(f"no completion of {args.rows} rows")
        return NEGATIVE
    _emit(filled.to_json(), args.out)
    return OK


# ---------------------------------------------------------------------------
# robinson


def _choices(text):
    items = [c.strip().upper() for c in text.split(",") if c.strip()]
    bad = [c for c in items if c not in robinson.ELBOWS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown elbow(s) {bad}; use NE, NW, SE, SW")
    return items


def cmd_robinson_block(args):
    choices = args.choices or ["NE"] * args.level
    if len(choices) != args.level:
        raise UsageError(f"--choices needs {args.level} entries")
    patch = robinson.generate_block(args.level, choices)
    if args.svg:
        squares = robinson.square_hierarchy(patch)
        svg = geometry.render_svg(patch.to_polygons(), overlays=robinson.square_outlines(squares))
        _emit(svg, args.svg)
    if args.out or not args.svg:
        _emit(patch.to_json(), args.out)
    return OK


def cmd_robinson_force(args):
    res = robinson.verify_forcing_3x3(args.forbid_cornered, args.budget or robinson.FORCING_BUDGET, args.jobs)
    print(res.count)
    if args.out:
        _emit([p.to_json() for p in res.completions], args.out)
    return OK


def cmd_robinson_check(args):
    patch = _parse("Robinson patch", args.patch, robinson.RobinsonPatch.from_json)
    ok, v = robinson.validate(patch)
    if ok:
        print("valid")
        return OK
    print(f"invalid: {v.component} between {v.cell} and {v.other}")
    return NEGATIVE


# ---------------------------------------------------------------------------
# subst


def _system(name):
    try:
        return substitution.system(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_subst_expand(args):
    sys_ = _system(args.system)
    seed = args.seed or sys_.names[0]
    if seed not in sys_.prototiles:
        raise UsageError(f"{args.system} has no prototile {seed!r}")
    patch = substitution.expand(sys_, seed, args.levels, jobs=args.jobs)
    if args.svg:
        _emit(geometry.render_svg(patch), args.svg)
    if args.census or not (args.svg or args.out):
        _emit(substitution.census(patch, sys_))
    if args.out:
        _emit(patch.to_json(), args.out)
    return OK


def cmd_subst_validate(args):
    names = args.systems or sorted(substitution.systems())
    status = OK
    for name in names:
        for verdict in substitution.validate_rule(_system(name)).values():
            print(f"{name}/{verdict}")
            if not verdict.ok:
                status = NEGATIVE
    return status


# ---------------------------------------------------------------------------
# balance


def cmd_balance_tile(args):
    try:
        print(balance.tile_imbalance(args.valences))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return OK


def cmd_balance_lemma(args):
    if args.config:
        conf = _parse("map configuration", args.config, balance.MapConfiguration.from_json)
    else:
        conf = balance.euler_fixture(args.mode)
    v, e, f = conf.counts()
    report = balance.verify_lemma(conf)
    out = {"vertices": v, "edges": e, "tiles": f, "euler": conf.euler(), **report.as_dict()}
    _emit(out)
    return OK if report.equal and report.bound_ok else NEGATIVE


def cmd_balance_series(args):
    try:
        rows = balance.average_imbalance_series(args.tessellation, args.radii)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    for r, n, ratio, k in rows:
        print(f"r={r:g} tiles={n} K={k} |K|/N={ratio:.6f}")
    return OK


def cmd_balance_classify(args):
    try:
        kind, k = balance.classify_vertex_uniform(args.n, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"{kind} {k}")
    return OK


# ---------------------------------------------------------------------------
# poly


def _polyform(path):
    return _parse("polyform", path, polyform.DecoratedPolyform.from_json)


def cmd_poly_census(args):
    t = _polyform(args.tile)
    i, o, f = polyform.edge_census(t)
    verdict = polyform.census_nontiler(t)
    print(f"in={i} out={o} flat={f}")
    print(verdict)
    return OK if verdict.outcome == "no_tiling_proved" else UNKNOWN


def cmd_poly_corona(args):
    t = _polyform(args.tile)
    res = polyform.corona_search(t, args.max, not args.no_reflect, args.budget)
    print(res)
    if args.out and res.witnesses:
        best = res.witnesses[-1]
        _emit([{"ring": ring, **_placement_json(p)} for p, ring in best], args.out)
    return UNKNOWN if res.limit_hit else OK


def _placement_json(p):
    return {"rotation": p.rotation, "reflected": p.reflected, "offset": list(p.offset)}


def cmd_poly_domain(args):
    t = _polyform(args.tile)
    dom = polyform.fundamental_domain_search(t, args.max_area, args.tiles, args.rectangular, not args.no_reflect, args.budget)
    if dom is None:
        print("none")
        return NEGATIVE
    _emit(
        {
            "vectors": [list(v) for v in dom.vectors],
            "tiles": dom.tiles,
            "orbit_count": dom.orbit_count,
            "placements": [_placement_json(p) for p in dom.placements],
        },
        args.out,
    )
    return OK


# ---------------------------------------------------------------------------
# render


def cmd_render(args):
    data = _load(args.patch)
    try:
        if "cells" in data and "width" in data:
            patch = robinson.RobinsonPatch.from_json(data).to_polygons()
        else:
            patch = geometry.PolygonPatch.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{args.patch}: not a renderable patch: {exc}") from None
    _emit(geometry.render_svg(patch, scale=args.scale), args.out)
    return OK


# ---------------------------------------------------------------------------


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes (output does not depend on it)")
    common.add_argument("--budget", type=_positive, default=None, help="search node budget (default: $TILEWORK_BUDGET or 10^7)")

    p = _Parser(prog="tilework", description="Tiling workbench: Wang tiles, Robinson tiles, substitutions, imbalance.")
    groups = p.add_subparsers(dest="group", metavar="group", parser_class=_Parser)
    groups.required = True

    def verb(group, name, fn, help_):
        sp = group.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(fn=fn)
        return sp

    g = groups.add_parser("wang", help="Wang tile solvers").add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    g.required = True
    s = verb(g, "solve", cmd_wang_solve, "fill a rectangle")
    s.add_argument("tiles")
    s.add_argument("--size", type=_size, required=True, metavar="WxH")
    s.add_argument("--seed", help="placement JSON whose cells are pinned")
    s.add_argument("-o", "--out")
    s = verb(g, "torus", cmd_wang_torus, "fill a torus")
    s.add_argument("tiles")
    s.add_argument("--size", type=_size, required=True, metavar="WxH")
    s.add_argument("-o", "--out")
    s = verb(g, "decide", cmd_wang_decide, "search tori and rectangles up to a size")
    s.add_argument("tiles")
    s.add_argument("--max", type=_positive, required=True)
    s.add_argument("-o", "--out")

    g = groups.add_parser("tm", help="Turing machines").add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    g.required = True
    s = verb(g, "run", cmd_tm_run, "simulate a machine")
    s.add_argument("machine")
    s.add_argument("--steps", type=_positive, required=True)
    s.add_argument("--trace", help="write the configuration trace here")
    s = verb(g, "compile", cmd_tm_compile, "compile a machine to Wang tiles")
    s.add_argument("machine")
    s.add_argument("--rows", type=_positive, default=8)
    s.add_argument("--complete", action="store_true", help="also fill the rows above the seed")
    s.add_argument("-o", "--out")

    g = groups.add_parser("robinson", help="Robinson tiles").add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    g.required = True
    s = verb(g, "block", cmd_robinson_block, "generate a hierarchical block")
    s.add_argument("--level", type=_positive, required=True)
    s.add_argument("--choices", type=_choices, help="comma-separated elbows, one per level")
    s.add_argument("--svg", help="write an SVG with the squares overlaid")
    s.add_argument("-o", "--out")
    s = verb(g, "force", cmd_robinson_force, "count 3x3 completions around a cornered cross")
    s.add_argument("--forbid-cornered", action="store_true")
    s.add_argument("-o", "--out")
    s = verb(g, "check", cmd_robinson_check, "validate a patch")
    s.add_argument("patch")

    g = groups.add_parser("subst", help="substitution tilings").add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    g.required = True
    s = verb(g, "expand", cmd_subst_expand, "expand a prototile")
    s.add_argument("system")
    s.add_argument("--seed")
    s.add_argument("--levels", type=int, default=3)
    s.add_argument("--svg")
    s.add_argument("--census", action="store_true")
    s.add_argument("-o", "--out")
    s = verb(g, "validate", cmd_subst_validate, "check shipped rules")
    s.add_argument("systems", nargs="*")

    g = groups.add_parser("balance", help="imbalance and Euler checks").add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    g.required = True
    s = verb(g, "tile", cmd_balance_tile, "imbalance of one tile")
    s.add_argument("--valences", type=_ints, required=True)
    s = verb(g, "lemma", cmd_balance_lemma, "check the tiling lemma on a configuration")
    s.add_argument("config", nargs="?", help="map configuration JSON (default: octagon-square fixture)")
    s.add_argument("--mode", choices=[balance.AMBIENT, balance.PATCH], default=balance.AMBIENT)
    s = verb(g, "series", cmd_balance_series, "average imbalance over growing disks")
    s.add_argument("tessellation", choices=sorted(balance.TESSELLATIONS))
    s.add_argument("--radii", type=_floats, default=[5, 10, 20, 40])
    s = verb(g, "classify", cmd_balance_classify, "flat, elliptic or hyperbolic")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)

    g = groups.add_parser("poly", help="decorated polyforms").add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    g.required = True
    s = verb(g, "census", cmd_poly_census, "edge census and the counting argument")
    s.add_argument("tile")
    s = verb(g, "corona", cmd_poly_corona, "coronas around one copy")
    s.add_argument("tile")
    s.add_argument("--max", type=_positive, default=2)
    s.add_argument("--no-reflect", action="store_true")
    s.add_argument("-o", "--out")
    s = verb(g, "domain", cmd_poly_domain, "translational fundamental domain")
    s.add_argument("tile")
    s.add_argument("--max-area", type=_positive, default=polyform.DOMAIN_AREA)
    s.add_argument("--tiles", type=_positive)
    s.add_argument("--rectangular", action="store_true")
    s.add_argument("--no-reflect", action="store_true")
    s.add_argument("-o", "--out")

    s = groups.add_parser("render", parents=[common], help="render a patch JSON to SVG")
    s.set_defaults(fn=cmd_render)
    s.add_argument("patch")
    s.add_argument("--scale", type=float, default=40.0)
    s.add_argument("-o", "--out")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE
    except (KeyError, ValueError) as exc:
        # input the library rejected, e.g. an area too small for the tile
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
