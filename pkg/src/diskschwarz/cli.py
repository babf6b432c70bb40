"""Command-line front end: a thin client over the operation handlers.

Subcommands: schwarzian, norm, criterion, valence, ode, lift, shear, gallery.
Reports print to stdout as canonical JSON (or to --out); meshes go to
--mesh-out with a curvature sidecar CSV. Exit codes: 0 success, 1 gallery
regression failure, 2 input error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, api
from .errors import InputError, NumericError, ToolkitError


def _parse_point(text: str) -> api.ComplexValue:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return api.ComplexValue(re=float(parts[0]))
        if len(parts) == 2:
            return api.ComplexValue(re=float(parts[0]), im=float(parts[1]))
    except ValueError:
        pass
    raise InputError(f"expected a point as RE or RE,IM; got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diskschwarz",
        description="Schwarzian-derivative univalence and valence analysis on the unit disk",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_map_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--f", metavar="EXPR", help="analytic map expression")
        p.add_argument("--h", metavar="EXPR", help="analytic part of a harmonic map")
        p.add_argument("--q", metavar="EXPR", help="square root of the dilatation")

    def add_out(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", metavar="PATH", help="write the JSON report here instead of stdout")

    p = sub.add_parser("schwarzian", help="Schwarzian derivative at a point")
    add_map_flags(p)
    p.add_argument("--at", metavar="RE[,IM]", required=True)
    add_out(p)

    p = sub.add_parser("norm", help="hyperbolic norm estimate (grid lower bound)")
    add_map_flags(p)
    p.add_argument("--depth", type=int, default=12)
    add_out(p)

    p = sub.add_parser("criterion", help="univalence / valence criterion verdict")
    add_map_flags(p)
    p.add_argument("--p", metavar="WEIGHT", default="classical",
                   help="classical | const | linear | param:<t> | file:<path>")
    p.add_argument("--C", type=float, default=None, help="candidate bound constant")
    p.add_argument("--depth", type=int, default=8)
    add_out(p)

    p = sub.add_parser("valence", help="argument-principle count of f(z) = w in |z| < r")
    p.add_argument("--f", metavar="EXPR", required=True)
    p.add_argument("--w", metavar="RE[,IM]", required=True)
    p.add_argument("--r", type=float, required=True)
    add_out(p)

    p = sub.add_parser("ode", help="weight diagnostics: mu, certificate, first zero")
    p.add_argument("--p", metavar="WEIGHT", required=True)
    p.add_argument("--delta", type=float, default=None,
                   help="also solve the comparison equation with (1+delta^2)(1-x^2)^-2")
    add_out(p)

    p = sub.add_parser("lift", help="minimal-surface lift sample (and optional mesh)")
    add_map_flags(p)
    p.add_argument("--at", metavar="RE[,IM]", required=True)
    p.add_argument("--r", type=float, default=0.9, help="mesh radius (with --mesh-out)")
    p.add_argument("--depth", type=int, default=24, help="mesh radial resolution (with --mesh-out)")
    p.add_argument("--mesh-out", metavar="PATH", help="write a Wavefront-style mesh here")
    add_out(p)

    p = sub.add_parser("shear", help="horizontal shear of a conformal map")
    p.add_argument("--phi", metavar="EXPR", required=True)
    p.add_argument("--q", metavar="EXPR", required=True)
    p.add_argument("--at", metavar="RE[,IM]", default="0.5")
    add_out(p)

    p = sub.add_parser("gallery", help="run the built-in regression gallery")
    p.add_argument("--only", metavar="NAME", default=None)
    p.add_argument("--delta", type=float, default=None)
    add_out(p)

    return parser


def _emit(report: api.Report, out: Optional[str]) -> None:
    text = api.render_report(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dispatch(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "schwarzian":
        report = api.run_schwarzian(
            api.SchwarzianRequest(f=args.f, h=args.h, q=args.q, at=_parse_point(args.at))
        )
    elif cmd == "norm":
        report = api.run_norm(api.NormRequest(f=args.f, h=args.h, q=args.q, depth=args.depth))
    elif cmd == "criterion":
        report = api.run_criterion(
            api.CriterionRequest(f=args.f, h=args.h, q=args.q, p=args.p, C=args.C, depth=args.depth)
        )
    elif cmd == "valence":
        report = api.run_valence(
            api.ValenceRequest(f=args.f, w=_parse_point(args.w), r=args.r)
        )
    elif cmd == "ode":
        report = api.run_ode(api.OdeRequest(p=args.p, delta=args.delta))
    elif cmd == "lift":
        mesh = None
        if args.mesh_out:
            mesh = api.MeshSpec(r_max=args.r, n_r=args.depth, n_theta=2 * args.depth + 1)
        report = api.run_lift(
            api.LiftRequest(f=args.f, h=args.h, q=args.q, at=_parse_point(args.at), mesh=mesh)
        )
        if args.mesh_out:
            mesh_block = report.results["mesh"]
            Path(args.mesh_out).write_text(mesh_block.pop("obj"))
            Path(args.mesh_out + ".curvature.csv").write_text(mesh_block.pop("curvature_csv"))
    elif cmd == "shear":
        report = api.run_shear(
            api.ShearRequest(phi=args.phi, q=args.q, at=_parse_point(args.at))
        )
    elif cmd == "gallery":
        report = api.run_gallery_report(api.GalleryRequest(only=args.only, delta=args.delta))
        _emit(report, args.out)
        if not report.results["passed"]:
            failed = [c["name"] for c in report.results["cases"] if not c["passed"]]
            print(f"gallery failures: {', '.join(failed)}", file=sys.stderr)
            return 1
        return 0
    else:  # pragma: no cover - argparse enforces the choices
        raise InputError(f"unknown command {cmd!r}")
    _emit(report, args.out)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except ToolkitError as exc:  # pragma: no cover - defensive
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
