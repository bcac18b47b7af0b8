"""Command line interface.

Graph arguments accept either a path to a graph file or a built-in corpus
id. Exit codes: 0 success, 1 check-failure verdict or failed precondition,
2 usage, parse, or lookup errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus
from .analysis import detect_symmetry, frame_triangles
from .model import (Graph, GraphFormatError, ToleranceProfile, parse_graph,
                    serialize_graph)
from .relax import (ALL_UNIT, PRESERVE_RED, FlexContinuationConfig,
                    RelaxConfig, flex_continuation, relax)
from .rigidity import analyze_rigidity
from .svg import SvgStyle, export_svg
from .verifier import verify


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_graph(ref: str) -> Graph:
    if os.path.exists(ref):
        try:
            with open(ref, encoding="utf-8") as fh:
                return parse_graph(fh.read())
        except GraphFormatError as exc:
            raise CliError(f"{ref}: {exc}", 2)
        except OSError as exc:
            raise CliError(str(exc), 2)
    try:
        return corpus.get_graph(ref)
    except KeyError:
        raise CliError(f"{ref!r} is neither a file nor a corpus id", 2)


def _profile(args: argparse.Namespace) -> ToleranceProfile:
    overrides = {}
    for flag, field in (("unit_tol", "unit_tol"),
                        ("coincidence_tol", "coincidence_tol"),
                        ("rank_tol", "rank_tol"),
                        ("symmetry_tol", "symmetry_tol")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = value
    try:
        return ToleranceProfile(**overrides)
    except ValueError as exc:
        raise CliError(str(exc), 2)


def _num(x: float) -> str:
    return f"{x:.6g}"


def _emit(args, report_dict: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        # Match the HTTP service: reports must stay strict JSON.
        print(json.dumps(report_dict, indent=2, allow_nan=False))
    else:
        print("\n".join(text_lines))


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    report = verify(g, _profile(args))
    verdict = ("matchstick" if report.is_matchstick
               else "near-matchstick" if report.is_near_matchstick
               else "invalid")
    lines = [
        f"degrees_ok: {report.degrees_ok}",
        f"max unit deviation: {_num(report.max_unit_deviation)}",
        f"red deviations: " + (", ".join(
            f"({u},{v}) {_num(d)}" for (u, v), d in report.red_deviations)
            or "none"),
        f"crossings: {len(report.crossings)}",
        f"coincidences: {len(report.coincidences)}",
        f"min clearance: {_num(report.min_clearance)}",
        f"verdict: {verdict}",
    ]
    _emit(args, report.to_dict(), lines)
    return 0 if report.is_matchstick else 1


def _cmd_rigidity(args) -> int:
    g = _load_graph(args.graph)
    report = analyze_rigidity(g, _profile(args),
                              include_red=not args.unit_frame)
    bars = "gray edges only" if args.unit_frame else "all edges"
    lines = [
        f"bars: {bars}",
        f"rank: {report.rank}",
        f"dof: {report.dof}",
        f"infinitesimally rigid: {report.infinitesimally_rigid}",
    ]
    _emit(args, report.to_dict(), lines)
    return 0


def _cmd_relax(args) -> int:
    g = _load_graph(args.graph)
    result = relax(g, RelaxConfig(mode=args.mode))
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump(result.to_dict(include_trajectory=True), fh, indent=2)
    lines = [
        f"converged: {result.converged}",
        f"iterations: {result.iterations}",
        f"max unit residual: {_num(result.max_unit_residual)}",
        f"red residuals: " + (", ".join(_num(r) for r in result.red_residuals)
                              or "none"),
    ]
    _emit(args, result.to_dict(include_trajectory=False), lines)
    return 0


def _cmd_flex(args) -> int:
    g = _load_graph(args.graph)
    cfg = FlexContinuationConfig(shrink_factor=args.shrink_factor,
                                 target_red_deviation=args.target_red_deviation,
                                 max_stages=args.max_stages)
    stages = flex_continuation(g, cfg)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            json.dump([s.to_dict(include_trajectory=True) for s in stages],
                      fh, indent=2)
    lines = []
    for k, stage in enumerate(stages):
        dev = max(abs(r) for r in stage.red_residuals)
        lines.append(f"stage {k}: max red deviation {_num(dev)}, "
                     f"max unit residual {_num(stage.max_unit_residual)}")
    lines.append("stalled: no red-edge progress" if not stages
                 else f"stages accepted: {len(stages)}")
    payload = {"stages": [s.to_dict(include_trajectory=False) for s in stages],
               "stalled": not stages}
    _emit(args, payload, lines)
    return 0


def _cmd_symmetry(args) -> int:
    g = _load_graph(args.graph)
    report = detect_symmetry(g, _profile(args))
    lines = [f"label: {report.label}",
             f"transforms: {len(report.transforms)}"]
    _emit(args, report.to_dict(), lines)
    return 0


def _cmd_frame(args) -> int:
    g = _load_graph(args.graph)
    report = frame_triangles(g, _profile(args))
    lines = [
        f"outer cycle length: {len(report.outer_cycle)}",
        f"frame triangles: {len(report.frame_triangles)}",
        f"red edges in frame: " + (", ".join(
            f"({u},{v})" for u, v in report.red_in_frame) or "none"),
    ]
    _emit(args, report.to_dict(), lines)
    return 0


def _cmd_corpus(args) -> int:
    if args.corpus_cmd == "list":
        rows = corpus.list_corpus()
        if args.format == "json":
            print(json.dumps([
                {"id": gid, "vertex_count": n, "red_count": red,
                 "symmetry": sym} for gid, n, red, sym in rows], indent=2))
        else:
            width = max(len(r[0]) for r in rows)
            print(f"{'id':<{width}}  vertices  red  symmetry")
            for gid, n, red, sym in rows:
                print(f"{gid:<{width}}  {n:>8}  {red:>3}  {sym or '-'}")
        return 0
    try:
        doc = corpus.get_document(args.id)
    except KeyError:
        raise CliError(f"unknown corpus id {args.id!r}", 2)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(serialize_graph(corpus.get_graph(args.id)), end="")
    return 0


def _cmd_export_svg(args) -> int:
    g = _load_graph(args.graph)
    text = export_svg(g, SvgStyle())
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(args.output)
    return 0


def _cmd_serve(args) -> int:
    from .service import serve
    serve(args.host, args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"),
                        default=argparse.SUPPRESS)
    for flag in ("--unit-tol", "--coincidence-tol",
                 "--rank-tol", "--symmetry-tol"):
        common.add_argument(flag, type=float, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="matchkit",
        description="Verify, relax, and analyze near-matchstick graphs.")
    parser.add_argument("--format", choices=("json", "text"), default="text")
    for flag in ("--unit-tol", "--coincidence-tol",
                 "--rank-tol", "--symmetry-tol"):
        parser.add_argument(flag, type=float, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="check matchstick properties")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("rigidity", parents=[common],
                       help="rank, dof, and flexes of the bar framework")
    p.add_argument("graph")
    p.add_argument("--unit-frame", action="store_true",
                   help="treat red edges as absent")
    p.set_defaults(func=_cmd_rigidity)

    p = sub.add_parser("relax", parents=[common],
                       help="least-squares edge length optimization")
    p.add_argument("graph")
    p.add_argument("--mode", choices=(ALL_UNIT, PRESERVE_RED),
                   default=ALL_UNIT)
    p.add_argument("--trace", metavar="OUT",
                   help="write trajectory frames to a JSON file")
    p.set_defaults(func=_cmd_relax)

    p = sub.add_parser("flex", parents=[common],
                       help="drive red lengths toward 1 along a flex")
    p.add_argument("graph")
    p.add_argument("--shrink-factor", type=float, default=0.5)
    p.add_argument("--target-red-deviation", type=float, default=1e-2)
    p.add_argument("--max-stages", type=int, default=60)
    p.add_argument("--trace", metavar="OUT")
    p.set_defaults(func=_cmd_flex)

    p = sub.add_parser("symmetry", parents=[common],
                       help="detect rotational, point, and mirror symmetry")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_symmetry)

    p = sub.add_parser("frame", parents=[common],
                       help="outer boundary and frame triangles")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_frame)

    p = sub.add_parser("corpus", parents=[common],
                       help="inspect the built-in graph corpus")
    csub = p.add_subparsers(dest="corpus_cmd", required=True)
    csub.add_parser("list", parents=[common])
    show = csub.add_parser("show", parents=[common])
    show.add_argument("id")
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("export-svg", parents=[common],
                       help="render a graph to an SVG file")
    p.add_argument("graph")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_export_svg)

    p = sub.add_parser("serve", parents=[common],
                       help="run the HTTP JSON service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8750)
    p.set_defaults(func=_cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
