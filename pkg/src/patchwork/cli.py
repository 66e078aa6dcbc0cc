"""Command line interface.

Subcommands: check, classify, ovals, ragsdale, render, serve.  Exit codes:
0 success, 1 validation failure (stable error code printed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import ragsdale as rg
from .combinatorics import barycentric_positions, curve_geometry, strict_even_degree
from .errors import PatchworkError
from .patchfile import LoadedPatch, emit_patch, load_patch, parse_patch, patch_from_state
from .render import render_view
from .session import Session, report_dict
from .zones import zone_decomposition


def _load(path: str) -> LoadedPatch:
    with open(path, "r", encoding="utf-8") as fh:
        return load_patch(parse_patch(fh.read()))


def _session_from_file(path: str) -> Session:
    loaded = _load(path)
    return Session.create(os.path.basename(path), loaded.tri, loaded.twists)


def cmd_check(args) -> int:
    loaded = _load(args.file)
    info = {
        "points": len(loaded.tri.points),
        "triangles": len(loaded.tri.triangles),
        "edges": len(loaded.tri.edges),
        "genus": loaded.curve.genus,
        "strict_even_degree": strict_even_degree(loaded.tri),
        "smooth_fan": loaded.tri.smooth_fan,
        "twists": len(loaded.twists),
    }
    if args.json:
        print(json.dumps(info))
    else:
        print(f"ok: {info['points']} points, {info['triangles']} triangles, "
              f"{info['edges']} edges, genus {info['genus']}, "
              f"{info['twists']} twisted edges")
        if not loaded.tri.smooth_fan:
            print("warning: polygon normal fan is not unimodular "
                  "(ambient toric surface is singular)")
    return 0


def cmd_classify(args) -> int:
    s = _session_from_file(args.file)
    rep = report_dict(s)["report"]
    if args.json:
        print(json.dumps(rep))
    else:
        words = [f"g={rep['g']}", f"rank={rep['rank']}",
                 f"components={rep['components']}",
                 "dividing" if rep["dividing"] else "non-dividing",
                 f"M-{rep['rank']}"]
        if rep["certificate"] != "none":
            words.append(rep["certificate"])
        print(" ".join(words))
    return 0


def cmd_ovals(args) -> int:
    s = _session_from_file(args.file)
    a = s.analysis
    if a.nest is None:
        raise PatchworkError("not an all-ovals configuration; no (p, n) count")
    nest = a.nest
    children: dict[int, list[tuple[int, int]]] = {}
    for r, parent in enumerate(nest.parent):
        if parent is not None:
            oval = next(ci for ci, d in nest.oval_depth.items()
                        if {r, parent} == set(_oval_regions(a, ci)))
            children.setdefault(parent, []).append((r, oval))
    if args.json:
        print(json.dumps({
            "p": nest.p, "n": nest.n, "root_region": nest.root,
            "tree": {str(r): [[c, o] for c, o in sorted(kids)]
                     for r, kids in sorted(children.items())},
            "oval_depths": {str(ci): d for ci, d in sorted(nest.oval_depth.items())},
        }))
        return 0
    print(f"p={nest.p} n={nest.n}")

    def show(region: int, indent: int) -> None:
        for child, oval in sorted(children.get(region, [])):
            depth = nest.oval_depth[oval]
            parity = "even" if depth % 2 == 0 else "odd"
            print(f"{'  ' * indent}oval {oval} ({parity}, depth {depth})")
            show(child, indent + 1)

    show(nest.root, 1)
    return 0


def _oval_regions(analysis, ci: int) -> tuple[int, int]:
    rc = analysis.regions
    comp = analysis.real.components[ci]
    sides = set()
    for (ei, eps) in comp:
        a, b = rc.curve.edges[ei].dual
        sides.add(rc.region_of[rc.cell_id(a, eps)])
        sides.add(rc.region_of[rc.cell_id(b, eps)])
    r1, r2 = sorted(sides)
    return r1, r2


def cmd_ragsdale(args) -> int:
    if args.single:
        t, m = (int(v) for v in args.single.split(","))
        block = rg.single_block(args.k, t, m)
        tri, curve, twists = rg.realize_blocks(args.k, [block])
        predicted = rg.ragsdale_bound(args.k) + 2 * m
        adjustments = []
    else:
        cfg = rg.full_construction(args.k)
        tri, curve, twists = cfg.tri, cfg.curve, cfg.twists
        predicted = cfg.predicted_even
        adjustments = cfg.adjustments
    s = Session.create("ragsdale", tri, twists)
    rep = s.analysis
    geometric = rep.nest.p if rep.nest else None
    out = {
        "k": args.k,
        "genus": s.curve.genus,
        "rank": rep.classification.rank,
        "components": rep.classification.components,
        "dividing": rep.classification.dividing,
        "predicted_even_ovals": predicted,
        "geometric_even_ovals": geometric,
        "geometric_odd_ovals": rep.nest.n if rep.nest else None,
        "adjustments": adjustments,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(emit_patch(patch_from_state(tri, twists, s.curve)))
    if args.json:
        print(json.dumps(out))
    else:
        print(f"k={args.k} genus={out['genus']} rank={out['rank']} "
              f"components={out['components']} predicted p={predicted} "
              f"geometric p={geometric} n={out['geometric_odd_ovals']}")
        for adj in adjustments:
            print(f"  adjusted: {adj}")
    if geometric != predicted:
        print(f"error: geometric count {geometric} != predicted {predicted}",
              file=sys.stderr)
        return 1
    return 0


def cmd_render(args) -> int:
    loaded = _load(args.file)
    s = Session.create(os.path.basename(args.file), loaded.tri, loaded.twists)
    zd = None
    if args.view == "zones":
        zd = zone_decomposition(s.curve, s.twists)
    positions = barycentric_positions(s.tri)
    if loaded.heights:
        positions = curve_geometry(s.tri, loaded.heights)
    doc = render_view(args.view, tri=s.tri, curve=s.curve, signs=s.signs,
                      twists=s.twists, rp=s.analysis.real, zd=zd,
                      positions=positions, nest=s.analysis.nest)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(doc)
    print(f"wrote {args.out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    port = args.port or int(os.environ.get("PATCHWORK_PORT", "8787"))
    uvicorn.run(create_app(), host=args.host, port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="patchwork")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a patch file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="rank, components, certificates")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ovals", help="even/odd oval counts and nesting")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ovals)

    p = sub.add_parser("ragsdale", help="generate counter-example configurations")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--single", metavar="t,m", help="one block instead of the full stack")
    p.add_argument("--out", help="write the configuration as a patch file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ragsdale)

    p = sub.add_parser("render", help="render a view to SVG")
    p.add_argument("file")
    p.add_argument("--view", choices=("subdivision", "zones", "realpart"),
                   default="subdivision")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PatchworkError as exc:
        print(f"error {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error IO: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
