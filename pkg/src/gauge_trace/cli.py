"""``gauge-trace`` command line.

Exit codes: 0 success, 2 bad input, 3 resource cap, 4 property violation or
internal inconsistency.  Errors are written to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path as FsPath

from . import config
from .errors import GaugeTraceError, ParseError
from .gaussian import format_scalar
from .graph import Graph, parse_graph, path_to_json
from .measures import (VertexCylinders, apply_T, boundary_measure, classify_extreme_point,
                       cyclic_harmonic_measure, defect, enumerate_polytope_vertices, l1_trace,
                       measure_from_dict, riesz_decompose, vertex_matrix)
from .pathspace import atomic_from_dict, check_invariance_bruteforce, truncated_space
from .report import analyze, render_text
from .traces import Character, TraceFunctional, evaluate_trace, parse_character, parse_functional

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_VIOLATION = 0, 2, 3, 4
RIESZ_TRACE_STEPS = 32


def _read(path: str) -> str:
    try:
        return FsPath(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None


def _resolve_measure(g: Graph, spec: str):
    """``boundary:v``, ``cyclic:e1,e2,...`` or a file holding an atomic or vertex measure."""
    kind, sep, rest = spec.partition(":")
    if sep and kind == "boundary":
        return boundary_measure(g, rest)
    if sep and kind == "cyclic":
        return cyclic_harmonic_measure(g, g.loop([e for e in rest.split(",") if e]))
    doc = _load_json(spec)
    if isinstance(doc, dict) and "atoms" in doc:
        return atomic_from_dict(g, doc)
    if isinstance(doc, dict) and "measure" in doc:
        return VertexCylinders.of(g, measure_from_dict(g, doc))
    raise ParseError(f"{spec}: expected an 'atoms' or 'measure' document")


def _emit(args, payload, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        out = text
    else:
        out = json.dumps(payload, indent=2) + "\n"
    if args.out:
        FsPath(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def cmd_analyze(args) -> int:
    g = _load_graph(args.graph)
    report = analyze(g, args.max_polytope_vertices)
    _emit(args, report, render_text(report))
    return EXIT_OK


def cmd_riesz(args) -> int:
    g = _load_graph(args.graph)
    mu = measure_from_dict(g, _load_json(args.measure))
    mu1, mu2 = riesz_decompose(g, mu)
    eta = defect(g, mu2, strict=True)
    norms = [str(q) for q in l1_trace(g, mu2, RIESZ_TRACE_STEPS)]
    doc = {"mu1": mu1.to_dict(), "mu2": mu2.to_dict(), "eta": eta.to_dict(), "l1_trace": norms}
    text = (f"mu1: {mu1.to_dict()}\nmu2: {mu2.to_dict()}\neta: {eta.to_dict()}\n"
            f"|T^k mu2|_1: {' '.join(norms)}\n")
    _emit(args, doc, text)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load_graph(args.graph)
    spec = args.measure or args.target
    if not spec:
        raise ParseError("check needs a measure file or --measure")
    nu = _resolve_measure(g, spec)
    report = check_invariance_bruteforce(g, nu, args.depth)
    doc = report.to_dict()
    text = f"depth {report.depth}: {report.checked} identities, {len(report.violations)} violations\n"
    text += "".join(f"  {v.kind} at {' '.join(v.path.edges) or v.path.range}: {v.lhs} != {v.rhs}\n"
                    for v in report.violations)
    _emit(args, doc, text)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_polytope(args) -> int:
    g = _load_graph(args.graph)
    points = enumerate_polytope_vertices(g, args.max_polytope_vertices)
    items = [{"point": p.to_dict(), "classification": classify_extreme_point(g, p).to_dict()}
             for p in points]
    text = "".join(f"{it['point']} -> {it['classification']}\n" for it in items) or "empty\n"
    _emit(args, {"points": items}, text)
    return EXIT_OK


def cmd_trace_eval(args) -> int:
    g = _load_graph(args.graph)
    terms = parse_functional(g, _read(args.functional))
    nu = _resolve_measure(g, args.measure)
    if isinstance(nu, VertexCylinders):
        raise ParseError("trace-eval needs an atomic measure, not a vertex measure")
    if args.character:
        phi = parse_character(args.character)
    else:
        groups = (nu.to_atomic() if hasattr(nu, "to_atomic") else nu).per_groups()
        phi = Character(min(groups) if groups else 0)
    value = evaluate_trace(g, TraceFunctional.of(nu, phi), terms)
    _emit(args, {"value": format_scalar(value)}, format_scalar(value) + "\n")
    return EXIT_OK


def cmd_pathspace(args) -> int:
    g = _load_graph(args.graph)
    paths = truncated_space(g, args.depth)
    _emit(args, {"depth": args.depth, "paths": [path_to_json(p) for p in paths]},
          "".join(f"{' '.join(p.edges) or p.range}\n" for p in paths))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="gauge-trace",
                                     description="Invariant measures and traces of finite graph algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full structural report")
    p.add_argument("graph")
    p.add_argument("--max-polytope-vertices", type=int, default=config.DEFAULT_MAX_POLYTOPE_VERTICES)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("riesz", parents=[common], help="harmonic/boundary split of a vertex measure")
    p.add_argument("graph")
    p.add_argument("measure")
    p.set_defaults(func=cmd_riesz)

    p = sub.add_parser("check", parents=[common], help="brute-force shift-invariance check")
    p.add_argument("graph")
    p.add_argument("target", nargs="?", help="atomic or vertex measure file")
    p.add_argument("--measure", help="boundary:V, cyclic:E1,E2,... or a file")
    p.add_argument("--depth", type=int, default=config.DEFAULT_DEPTH)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("polytope", parents=[common], help="extreme invariant probability vectors")
    p.add_argument("graph")
    p.add_argument("--max-polytope-vertices", type=int, default=config.DEFAULT_MAX_POLYTOPE_VERTICES)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("trace-eval", parents=[common], help="evaluate a tracial weight on cylinder terms")
    p.add_argument("graph")
    p.add_argument("functional")
    p.add_argument("--measure", required=True, help="boundary:V, cyclic:E1,E2,... or an atomic file")
    p.add_argument("--character", help="D:ZETA, e.g. 1:-1 or 2:i")
    p.set_defaults(func=cmd_trace_eval)

    p = sub.add_parser("pathspace", parents=[common], help="list the truncated boundary path space")
    p.add_argument("graph")
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(func=cmd_pathspace)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GaugeTraceError as exc:
        sys.stderr.write(json.dumps({"error": exc.to_dict()}) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
