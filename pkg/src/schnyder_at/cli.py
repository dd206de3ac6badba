"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Multi-step commands write a JSON-lines step log to stderr; results go to
``--out`` or stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import io as fmt
from .augmented import AugmentedOrientation
from .certificate import (
    DEFAULT_EULERIAN_CAP,
    build_certificate,
    count_eulerian_structures,
    forest_decomposition,
    iter_eulerian_structures,
)
from .planar import PlanarError, PlaneGraph, require_triangulation, triangulate, validate
from .polynomial import (
    DEFAULT_EXPAND_CAP,
    at_number_exact,
    certify_monomial,
    format_monomial,
    graph_polynomial,
    parse_monomial,
    weighted_polynomial,
)
from .procedure import check_trace, thomassen_procedure_on_triangulation
from .schnyder import (
    OrientationError,
    canonicalize_ccw,
    check_realizer,
    make_orientation,
    realizer_from_orientation,
    schnyder_drawing,
)
from .testkit import CapExceeded, GeneratorConfig, stacked_triangulation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class VerificationFailure(Exception):
    pass


def _log(step: str, **info: Any) -> None:
    sys.stderr.write(json.dumps({"step": step, **info}, sort_keys=True) + "\n")


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _triangulation(args: argparse.Namespace) -> PlaneGraph:
    g = fmt.load_graph(args.input)
    rep = validate(g)
    _log("validate", **{k: rep.as_dict()[k] for k in ("ok", "V", "E", "F", "is_triangulation")})
    if not rep.ok:
        raise fmt.FormatError("invalid graph: " + "; ".join(rep.errors))
    if rep.is_triangulation:
        return g
    t, added = triangulate(g)
    _log("triangulate", added=[list(e) for e in added])
    return t


def cmd_validate(args: argparse.Namespace) -> int:
    g = fmt.load_graph(args.input)
    rep = validate(g)
    _emit(args, fmt.dumps(rep.as_dict()))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_triangulate(args: argparse.Namespace) -> int:
    g = fmt.load_graph(args.input)
    t, added = triangulate(g)
    _log("triangulate", added=[list(e) for e in added])
    _emit(args, fmt.dumps(fmt.graph_to_json(t)))
    return EXIT_OK


def _orientation_from_file(t: PlaneGraph, path: str):
    heads, _, _ = fmt.parse_edge_records(fmt.load_json(path))
    try:
        return make_orientation(t, heads)
    except KeyError as exc:
        raise fmt.FormatError(f"orientation is missing interior edge {exc}") from None


def cmd_realizer(args: argparse.Namespace) -> int:
    t = _triangulation(args)
    res = thomassen_procedure_on_triangulation(t)
    problems = check_trace(t, res.trace)
    _log("procedure", steps=len(res.trace.steps), trace_ok=not problems)
    if args.orientation:
        o = _orientation_from_file(t, args.orientation)
        heads, strengths = dict(res.heads), None
        heads.update(o.heads)
    else:
        o = res.internal_orientation()
        heads, strengths = res.heads, res.strengths
    r = realizer_from_orientation(o)
    bad = check_realizer(r) + problems
    _log("realizer", roots=list(r.roots), ok=not bad)
    if args.trace:
        Path(args.trace).write_text(fmt.dumps(res.trace.as_dict()), encoding="utf-8")
    if args.dot:
        Path(args.dot).write_text(fmt.to_dot(t.n, list(t.edges), heads, r.colors, strengths), encoding="utf-8")
    _emit(args, fmt.dumps(fmt.edge_records(list(t.edges), heads, r.colors, strengths)))
    if bad:
        raise VerificationFailure("; ".join(bad))
    return EXIT_OK


def cmd_canonical(args: argparse.Namespace) -> int:
    t = _triangulation(args)
    res = thomassen_procedure_on_triangulation(t)
    start = _orientation_from_file(t, args.orientation) if args.orientation else res.internal_orientation()
    canon = canonicalize_ccw(start)
    same = canon == res.internal_orientation()
    _log("canonicalize", matches_procedure=same)
    r = realizer_from_orientation(canon)
    _emit(args, fmt.dumps(fmt.edge_records(list(t.interior_edges), canon.heads, r.colors)))
    if not same:
        raise VerificationFailure("flip descent and peeling procedure disagree")
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    t = _triangulation(args)
    res = thomassen_procedure_on_triangulation(t)
    problems = check_trace(t, res.trace)
    _log("procedure", steps=len(res.trace.steps), trace_ok=not problems)
    if problems:
        raise VerificationFailure("; ".join(problems))
    E = len(t.edges)
    counting = E <= args.cap_eulerian
    cert = build_certificate(t, count=counting, cap=args.cap_eulerian)
    _log(
        "certificate",
        max_aug_indegree=cert.max_aug_indegree,
        doubled=len(cert.doubled_tree),
        claimed_bound=cert.claimed_bound,
    )
    if counting:
        _log("eulerian", **cert.eulerian.as_dict())
    else:
        _log("eulerian", skipped=True, edges=E, cap=args.cap_eulerian)
    failures = cert.problems()
    if cert.witness:
        failures.append("nonempty Eulerian structure: " + json.dumps([list(a) for a in cert.witness]))
    if E <= args.cap_expand:
        rep = certify_monomial(cert, cap=args.cap_expand)
        _log("monomial", **rep.as_dict())
        failures += rep.failures
    else:
        _log("monomial", skipped=True, edges=E, cap=args.cap_expand)
    _emit(args, fmt.dumps(fmt.certificate_to_json(cert)))
    if args.figure:
        from .plotting import draw_orientation

        coords = schnyder_drawing(realizer_from_orientation(res.internal_orientation()))
        a = cert.augmented
        draw_orientation(t, coords, args.figure, a.heads, cert.colors, a.strengths, title="AT certificate")
    if failures:
        raise VerificationFailure("; ".join(failures))
    return EXIT_OK


def _augmented_input(path: str) -> AugmentedOrientation:
    data = fmt.load_json(path)
    if isinstance(data, dict) and data.get("format") == fmt.CERTIFICATE_FORMAT:
        return fmt.certificate_from_json(data).augmented
    n = data.get("n") if isinstance(data, dict) else None
    return fmt.augmented_from_records(data, n)


def cmd_eulerian(args: argparse.Namespace) -> int:
    a = _augmented_input(args.input)
    cnt = count_eulerian_structures(a, cap=args.cap_eulerian, includes_empty=not args.no_empty)
    out = cnt.as_dict() | {"nonempty": cnt.nonempty}
    if cnt.nonempty:
        out["witness"] = [list(x) for x in next(iter_eulerian_structures(a, cap=args.cap_eulerian))]
    _emit(args, fmt.dumps(out))
    return EXIT_OK


def cmd_polynomial(args: argparse.Namespace) -> int:
    data = fmt.load_json(args.input)
    if isinstance(data, dict) and "rotations" in data:
        g = fmt.graph_from_json(data)
        p = graph_polynomial(g.n, g.edges, cap=args.cap_expand)
    else:
        a = _augmented_input(args.input)
        p = weighted_polynomial(a.n, dict(a.strengths), cap=args.cap_expand)
    if args.coefficient:
        m = parse_monomial(args.coefficient, p.nvars)
        _emit(args, f"{p.coefficient(m)}\n")
    else:
        _emit(args, p.to_text() + "\n")
    return EXIT_OK


def cmd_at_exact(args: argparse.Namespace) -> int:
    g = fmt.load_graph(args.input)
    g.checked()
    _emit(args, f"{at_number_exact(g.n, g.edges, cap=args.cap_expand)}\n")
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    t = _triangulation(args)
    dec = forest_decomposition(t)
    out = {
        "forest": [list(e) for e in dec.forest],
        "arcs": [list(a) for a in dec.arcs],
        "max_indegree": dec.max_indegree(),
    }
    _emit(args, fmt.dumps(out))
    return EXIT_OK


def cmd_draw(args: argparse.Namespace) -> int:
    from .plotting import draw_orientation

    t = _triangulation(args)
    res = thomassen_procedure_on_triangulation(t)
    r = realizer_from_orientation(res.internal_orientation())
    coords = schnyder_drawing(r)
    out = args.out or "drawing.svg"
    draw_orientation(t, coords, out, res.heads, r.colors, res.strengths)
    _log("draw", path=str(out), coords=[list(c) for c in coords])
    if args.dot:
        Path(args.dot).write_text(fmt.to_dot(t.n, list(t.edges), res.heads, r.colors, res.strengths), encoding="utf-8")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    g = stacked_triangulation(GeneratorConfig(args.n, args.seed))
    _emit(args, fmt.dumps(fmt.graph_to_json(g)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schnyder-at", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable[[argparse.Namespace], int], help: str, needs_input: bool = True):
        sp = sub.add_parser(name, help=help)
        if needs_input:
            sp.add_argument("input", help="input JSON file")
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check plane-graph invariants")
    add("triangulate", cmd_triangulate, "add chords until every face is a triangle")
    sp = add("realizer", cmd_realizer, "Schnyder realizer of the counterclockwise orientation")
    sp.add_argument("--orientation", help="edge-record JSON of an internal 3-orientation to color instead")
    sp.add_argument("--trace", help="write the peeling-procedure trace JSON here")
    sp.add_argument("--dot", help="write a Graphviz file here")
    sp = add("canonical", cmd_canonical, "flip an orientation down to the counterclockwise one")
    sp.add_argument("--orientation", help="edge-record JSON of the starting orientation")
    sp = add("certify", cmd_certify, "build and check an AT <= 5 certificate")
    sp.add_argument("--figure", help="also render the certificate drawing (svg/png/pdf)")
    sp = add("eulerian-count", cmd_eulerian, "count Eulerian structures of an augmented orientation")
    sp.add_argument("--no-empty", action="store_true", help="do not count the empty structure")
    sp = add("polynomial", cmd_polynomial, "expand f_G (graph JSON) or W (edge records with strengths)")
    sp.add_argument("--coefficient", metavar="MONOMIAL", help='print one coefficient, e.g. "x0^2*x1"')
    add("at-exact", cmd_at_exact, "exact Alon-Tarsi number by expansion")
    add("decompose", cmd_decompose, "forest plus acyclic in-degree-2 remainder")
    sp = add("draw", cmd_draw, "render the Schnyder drawing (format from --out suffix)")
    sp.add_argument("--dot", help="also write a Graphviz file")
    sp = add("gen", cmd_gen, "stacked triangulation as graph JSON", needs_input=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)

    for name, sp in sub.choices.items():
        if name in ("certify", "eulerian-count"):
            sp.add_argument("--cap-eulerian", type=int, default=DEFAULT_EULERIAN_CAP)
        if name in ("certify", "polynomial", "at-exact"):
            sp.add_argument("--cap-expand", type=int, default=DEFAULT_EXPAND_CAP)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailure as exc:
        sys.stderr.write(f"verification failed: {exc}\n")
        return EXIT_FAIL
    except CapExceeded as exc:
        sys.stderr.write(f"refused: {exc}\n")
        return EXIT_USAGE
    except (fmt.FormatError, PlanarError, OrientationError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
