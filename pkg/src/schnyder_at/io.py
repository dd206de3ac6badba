"""JSON and DOT serialisation."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .augmented import AugmentedOrientation
from .certificate import ATCertificate, EulerianCount
from .planar import Edge, PlaneGraph, edge_key
from .schnyder import COLORS

CERTIFICATE_FORMAT = "at-certificate/1"


class FormatError(ValueError):
    """Input does not follow one of the documented file formats."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1) + "\n"


def graph_to_json(g: PlaneGraph) -> dict:
    return {"n": g.vertex_count, "rotations": [list(r) for r in g.rotations], "outer_face": list(g.outer_face)}


def graph_from_json(data: Any) -> PlaneGraph:
    if not isinstance(data, dict):
        raise FormatError("graph JSON must be an object")
    missing = {"n", "rotations", "outer_face"} - set(data)
    if missing:
        raise FormatError(f"graph JSON missing keys: {sorted(missing)}")
    n, rots, outer = data["n"], data["rotations"], data["outer_face"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise FormatError('"n" must be an integer')
    if not isinstance(rots, list) or not all(isinstance(r, list) for r in rots):
        raise FormatError('"rotations" must be an array of arrays')
    if not isinstance(outer, list):
        raise FormatError('"outer_face" must be an array')
    for x in [w for r in rots for w in r] + outer:
        if not isinstance(x, int) or isinstance(x, bool):
            raise FormatError(f"vertex ids must be integers, got {x!r}")
    return PlaneGraph(n, tuple(tuple(r) for r in rots), tuple(outer))


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def load_graph(path: str | Path) -> PlaneGraph:
    data = load_json(path)
    if isinstance(data, dict) and "graph" in data and "n" not in data:
        data = data["graph"]
    return graph_from_json(data)


def edge_records(
    edges: list[Edge],
    heads: Mapping[Edge, int],
    colors: Mapping[Edge, int] | None = None,
    strengths: Mapping[Edge, int] | None = None,
) -> list[dict]:
    out = []
    for e in edges:
        c = None if colors is None or e not in colors else COLORS[colors[e]]
        out.append(
            {
                "u": e[0],
                "v": e[1],
                "head": heads[e],
                "color": c,
                "strength": None if strengths is None else strengths.get(e),
            }
        )
    return out


def parse_edge_records(records: Any) -> tuple[dict[Edge, int], dict[Edge, int | None], dict[Edge, int]]:
    """Return ``(heads, colors, strengths)``; missing strengths default to 1."""
    if isinstance(records, dict):
        records = records.get("edges")
    if not isinstance(records, list):
        raise FormatError("expected an array of edge records")
    heads: dict[Edge, int] = {}
    colors: dict[Edge, int | None] = {}
    strengths: dict[Edge, int] = {}
    for rec in records:
        try:
            u, v, h = int(rec["u"]), int(rec["v"]), int(rec["head"])
        except (KeyError, TypeError, ValueError):
            raise FormatError(f"bad edge record {rec!r}") from None
        if h not in (u, v) or u == v:
            raise FormatError(f"bad edge record {rec!r}")
        e = edge_key(u, v)
        if e in heads:
            raise FormatError(f"duplicate edge record for {e}")
        heads[e] = h
        col = rec.get("color")
        if col is not None and col not in COLORS:
            raise FormatError(f"unknown color {col!r}")
        colors[e] = None if col is None else COLORS.index(col)
        s = rec.get("strength")
        strengths[e] = 1 if s is None else int(s)
    return heads, colors, strengths


def augmented_from_records(records: Any, n: int | None = None) -> AugmentedOrientation:
    heads, _, strengths = parse_edge_records(records)
    if n is None:
        n = 1 + max((max(e) for e in heads), default=-1)
    return AugmentedOrientation(n, tuple(sorted(heads)), heads, strengths)


def certificate_to_json(cert: ATCertificate) -> dict:
    a = cert.augmented
    return {
        "format": CERTIFICATE_FORMAT,
        "graph": graph_to_json(cert.graph),
        "edges": edge_records(list(a.edges), a.heads, cert.colors, a.strengths),
        "doubled_tree": [list(e) for e in cert.doubled_tree],
        "max_aug_indegree": cert.max_aug_indegree,
        "eulerian": None if cert.eulerian is None else cert.eulerian.as_dict(),
        "claimed_bound": cert.claimed_bound,
    }


def certificate_from_json(data: Any) -> ATCertificate:
    if not isinstance(data, dict) or data.get("format") != CERTIFICATE_FORMAT:
        raise FormatError(f'certificate must declare "format": "{CERTIFICATE_FORMAT}"')
    g = graph_from_json(data["graph"])
    heads, colors, strengths = parse_edge_records(data["edges"])
    a = AugmentedOrientation(g.n, tuple(sorted(heads)), heads, strengths)
    eu = data.get("eulerian")
    cert = ATCertificate(
        graph=g,
        augmented=a,
        colors={e: c for e, c in colors.items() if c is not None},
        doubled_tree=[tuple(e) for e in data["doubled_tree"]],
        max_aug_indegree=int(data["max_aug_indegree"]),
        eulerian=None if eu is None else EulerianCount(eu["even"], eu["odd"], eu["includes_empty"]),
    )
    if cert.claimed_bound != data["claimed_bound"]:
        raise FormatError("claimed_bound disagrees with max_aug_indegree")
    return cert


def to_dot(
    n: int,
    edges: list[Edge],
    heads: Mapping[Edge, int] | None = None,
    colors: Mapping[Edge, int] | None = None,
    strengths: Mapping[Edge, int] | None = None,
    name: str = "G",
) -> str:
    """Graphviz text; realizer colors become ``color`` attributes, doubled edges are bold."""
    lines = [f"digraph {name} {{" if heads else f"graph {name} {{"]
    lines += [f"  {v};" for v in range(n)]
    for e in edges:
        attrs = []
        if colors and e in colors:
            attrs.append(f"color={COLORS[colors[e]]}")
        if strengths and strengths.get(e, 1) > 1:
            attrs.append(f'penwidth={2 * strengths[e]} label="{strengths[e]}"')
        if heads:
            h = heads[e]
            t = e[0] if h == e[1] else e[1]
            link = f"  {t} -> {h}"
        else:
            link = f"  {e[0]} -- {e[1]}"
        lines.append(link + (f" [{' '.join(attrs)}]" if attrs else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
