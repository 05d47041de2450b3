"""Command-line front end.

    gaussforge analyze -p 3 -N 4 -f "Z1^6+Z2^6+Z3*Z4*Z0^4"
    gaussforge fiber   -p 3 -N 4 -f "..." --point 1,1,1,1,1 -m 2
    gaussforge verify  -p 3 -N 3 -f "Z0^5+Z1^5-Z2^3*Z3^2" --format json

Exit codes: 0 success, 1 a requested check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, gaussmap
from .errors import GaussForgeError
from .gf import create_field
from .linproj import ProjPoint
from .poly import parse_poly

SCHEMA = "v1"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, required=True, help="field characteristic")
    common.add_argument("-k", type=int, default=1, help="extension degree of the base field")
    common.add_argument("-N", type=int, required=True, help="ambient dimension (variables Z0..ZN)")
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("-f", "--poly", help="polynomial text")
    src.add_argument("--poly-file", type=Path, help="file holding the polynomial")
    common.add_argument("--point", help="comma-separated coordinates, e.g. 1,1,[0,1],0")
    common.add_argument("-m", "--ext", type=int, default=None, help="extension multiplier for fibers")
    common.add_argument("--trials", type=int, default=30, help="sampled points per tower level")
    common.add_argument("--ext-bound", type=int, default=3, help="tower levels sampled for the rank")
    common.add_argument("--levels", type=int, default=None, help="top tower level for image counting")
    common.add_argument("--fiber-samples", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=float, default=None, help="cap on enumerated ambient points")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("-o", "--output", type=Path, default=None)

    parser = argparse.ArgumentParser(prog="gaussforge", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("analyze", "rank, image dimension, strange locus and separability"),
        ("fiber", "enumerate the Gauss fiber through --point"),
        ("kappa", "Gauss map data and degeneracy plane at --point"),
        ("strange", "strange locus and cone-vertex tests"),
        ("verify", "run the theorem checks"),
    ]:
        sub.add_parser(name, parents=[common], help=help_)
    return parser


def _config(args) -> analysis.AnalysisConfig:
    return analysis.AnalysisConfig(
        trials=args.trials,
        extension_bound=args.ext_bound,
        levels=args.levels,
        fiber_ext=args.ext or 2,
        fiber_samples=args.fiber_samples,
        seed=args.seed,
        budget=None if args.budget is None else int(args.budget),
        threads=args.threads,
    )


def _point(args, F) -> ProjPoint:
    if not args.point:
        raise GaussForgeError(f"the {args.command} command needs --point")
    return ProjPoint.parse(args.point, F)


def _text_variety(rep: analysis.VarietyReport) -> list[str]:
    lines = [
        f"f = {rep.f}  over {rep.f.field}",
        f"dim X = {rep.n}",
        f"generic rank of d(gamma) = {rep.generic_rank}   (samples per level {rep.rank.samples})",
        f"image dimension estimate = {rep.image_dim}   (raw {rep.image.raw:.3f}, level step {rep.image.step}, counts {rep.image.counts})",
        f"strange locus = {rep.strange}  (dim {rep.strange.dim})",
    ]
    for c in rep.cone_checks:
        lines.append(f"  vertex {c.vertex}: {'cone' if c.is_cone else 'not a cone'}")
    lines.append(f"separability: {rep.separability}")
    for name, ok in rep.consistency.items():
        lines.append(f"consistency {name}: {'ok' if ok else 'FAILED'}")
    return lines


def _text_fiber(rep: analysis.FiberReport) -> list[str]:
    lines = [
        f"base point {rep.base}, gamma = {rep.gamma}, over {rep.field}",
        f"fiber: {len(rep.fiber_points)} smooth + {len(rep.singular_points)} singular "
        f"= {len(rep.closure_points)} points, {len(rep.groups)} kappa group(s)",
    ]
    for i, g in enumerate(rep.groups):
        lines.append(
            f"  group {i}: {len(g.points)} points, plane {g.plane} (dim {g.plane.dim}), "
            f"contains all: {g.contains_all}, image constant: {g.image_constant}"
        )
    for p in rep.singular_points:
        lines.append(f"  singular on a group plane: {p}")
    return lines


def run(args) -> tuple[dict, list[str], int]:
    F = create_field(args.p, args.k)
    text = args.poly if args.poly is not None else args.poly_file.read_text()
    f = parse_poly(text.strip(), F, args.N + 1, homogeneous=True)
    cfg = _config(args)
    cmd = args.command

    if cmd == "analyze":
        rep = analysis.separability_verdict(f, cfg)
        return rep.to_json(), _text_variety(rep), 0 if rep.consistent else 1

    if cmd == "strange":
        S = analysis.strange_locus(f)
        import numpy as np

        pts = analysis.strange_sample(S, 4, np.random.default_rng([args.seed, 1]))
        cones = [analysis.ConeCheck(v, analysis.cone_vertex_check(f, v)) for v in pts]
        payload = {"kind": "strange", "strange_locus": S.to_json(), "cone_vertices": [c.to_json() for c in cones]}
        lines = [f"strange locus = {S}  (dim {S.dim})"] + [
            f"  vertex {c.vertex}: {'cone' if c.is_cone else 'not a cone'}" for c in cones
        ]
        return payload, lines, 0

    if cmd == "kappa":
        x = _point(args, F)
        r = gaussmap.generic_rank(f, args.trials, args.ext_bound, args.seed).rank
        data = gaussmap.point_data(f, x, r)
        payload = {"kind": "point", "generic_rank": r, **data.to_json()}
        lines = [
            f"x = {data.x}",
            f"gamma(x) = {data.gamma_x}",
            f"tangent = {data.tangent}",
            f"rank d_x gamma = {data.rank_dgamma} (generic {r})",
            f"kappa(x) = {data.kappa_plane}  (dim {data.kappa_plane.dim})",
        ]
        return payload, lines, 0

    if cmd == "fiber":
        x = _point(args, F)
        r = gaussmap.generic_rank(f, args.trials, args.ext_bound, args.seed).rank
        rep = analysis.fiber(f, x, args.ext or 1, analysis.Budget(cfg.budget), args.threads, r)
        return rep.to_json(), _text_fiber(rep), 0 if rep.ok else 1

    rep = analysis.verify_theorems(f, cfg)
    lines = _text_variety(rep.variety) + [
        f"[{c.status.upper():7}] {c.name}: {c.detail}" for c in rep.checks
    ]
    lines.append("PASS" if rep.passed else "FAIL")
    return rep.to_json(), lines, 0 if rep.passed else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, lines, code = run(args)
    except (GaussForgeError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        out = json.dumps({"schema": SCHEMA, "command": args.command, **payload}, indent=2, sort_keys=True) + "\n"
    else:
        out = "\n".join(lines) + "\n"
    if args.output:
        args.output.write_text(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
