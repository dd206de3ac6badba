"""Internal 3-orientations, realizers (Schnyder woods), flips and regions.

Orientations follow the Alon-Tarsi friendly convention: every interior
vertex has *in*-degree 3, and each color class is a tree whose edges point
away from its root.  Colors are the integers 0, 1, 2 (red, green, blue).
With the outer face listed clockwise as ``(o0, o1, o2)`` the roots are
``red = o2``, ``green = o1``, ``blue = o0``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .planar import (
    Edge,
    PlanarError,
    PlaneGraph,
    edge_key,
    is_counterclockwise,
    require_triangulation,
    triangulate,
    validate,
)

RED, GREEN, BLUE = 0, 1, 2
COLORS = ("red", "green", "blue")


class OrientationError(ValueError):
    pass


def color_index(color: int | str) -> int:
    if isinstance(color, str):
        try:
            return COLORS.index(color)
        except ValueError:
            raise ValueError(f"unknown color {color!r}") from None
    if color not in (0, 1, 2):
        raise ValueError(f"unknown color {color!r}")
    return color


def roots_of(g: PlaneGraph) -> tuple[int, int, int]:
    o0, o1, o2 = g.outer_face
    return (o2, o1, o0)


@dataclass(frozen=True)
class InternalOrientation:
    base: PlaneGraph
    heads: Mapping[Edge, int]

    def key(self) -> tuple[int, ...]:
        return tuple(self.heads[e] for e in self.base.interior_edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InternalOrientation):
            return NotImplemented
        return self.base == other.base and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.base, self.key()))

    def tail(self, e: Edge) -> int:
        return e[0] if self.heads[e] == e[1] else e[1]

    def points(self, u: int, v: int) -> bool:
        """True iff the interior edge ``uv`` is directed ``u -> v``."""
        e = edge_key(u, v)
        return e in self.heads and self.heads[e] == v

    def in_degrees(self) -> list[int]:
        deg = [0] * self.base.n
        for h in self.heads.values():
            deg[h] += 1
        return deg

    def arcs(self) -> list[tuple[int, int]]:
        return [(self.tail(e), self.heads[e]) for e in self.base.interior_edges]


def check_orientation(o: InternalOrientation) -> list[str]:
    g = o.base
    errs = []
    if set(o.heads) != set(g.interior_edges):
        errs.append("orientation must cover exactly the interior edges")
        return errs
    deg = o.in_degrees()
    for v in g.interior_vertices:
        if deg[v] != 3:
            errs.append(f"interior vertex {v} has in-degree {deg[v]}")
    for v in g.exterior:
        if deg[v]:
            errs.append(f"interior edge directed toward exterior vertex {v}")
    return errs


def make_orientation(g: PlaneGraph, heads: Mapping[Edge, int]) -> InternalOrientation:
    o = InternalOrientation(g, {e: heads[e] for e in g.interior_edges})
    errs = check_orientation(o)
    if errs:
        raise OrientationError("; ".join(errs))
    return o


@dataclass(frozen=True)
class Realizer:
    base: PlaneGraph
    colors: Mapping[Edge, int]
    heads: Mapping[Edge, int]
    roots: tuple[int, int, int]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Realizer):
            return NotImplemented
        es = self.base.interior_edges
        return (
            self.base == other.base
            and self.roots == other.roots
            and all(self.colors[e] == other.colors[e] and self.heads[e] == other.heads[e] for e in es)
        )

    def __hash__(self) -> int:
        es = self.base.interior_edges
        return hash((self.base, tuple((self.colors[e], self.heads[e]) for e in es)))

    def tail(self, e: Edge) -> int:
        return e[0] if self.heads[e] == e[1] else e[1]

    def color_class(self, color: int | str) -> list[tuple[int, int]]:
        """Arcs ``(tail, head)`` of one tree."""
        c = color_index(color)
        return [(self.tail(e), self.heads[e]) for e in self.base.interior_edges if self.colors[e] == c]

    def parent(self, v: int, color: int | str) -> int:
        """Tail of the incoming edge of ``color`` at interior vertex ``v``."""
        c = color_index(color)
        for w in self.base.rotations[v]:
            e = edge_key(v, w)
            if self.heads.get(e) == v and self.colors[e] == c:
                return w
        raise OrientationError(f"vertex {v} has no incoming {COLORS[c]} edge")


def _incoming_layout(g: PlaneGraph, heads: Mapping[Edge, int], v: int) -> list[int]:
    """Rotation positions at ``v`` of the incoming edges."""
    return [i for i, w in enumerate(g.rotations[v]) if heads.get(edge_key(v, w)) == v]


def realizer_from_orientation(o: InternalOrientation) -> Realizer:
    """The unique realizer whose orientation is ``o``.

    Colors are pushed outward from the roots: once the color of one
    incoming edge at ``v`` is known the local rule fixes every edge around
    ``v``.  The result is checked rather than trusted.
    """
    g = o.base
    errs = check_orientation(o)
    if errs:
        raise OrientationError("; ".join(errs))
    heads = o.heads
    roots = roots_of(g)
    colors: dict[Edge, int] = {}
    labelled: set[int] = set()
    queue: deque[tuple[Edge, int]] = deque()

    for c, r in enumerate(roots):
        for w in g.rotations[r]:
            e = edge_key(r, w)
            if e in heads:
                colors[e] = c
                queue.append((e, c))

    while queue:
        e, c = queue.popleft()
        v = heads[e]
        if v in labelled:
            continue
        labelled.add(v)
        rot = g.rotations[v]
        k = len(rot)
        start = rot.index(o.tail(e))
        current = c
        for step in range(1, k):
            w = rot[(start + step) % k]
            f = edge_key(v, w)
            if heads[f] == v:
                current = (current + 1) % 3
                continue
            col = (current + 2) % 3
            if f in colors and colors[f] != col:
                raise OrientationError(f"inconsistent color on edge {f}")
            if f not in colors:
                colors[f] = col
                queue.append((f, col))

    missing = [v for v in g.interior_vertices if v not in labelled]
    if missing:
        raise OrientationError(f"vertices never reached while coloring: {missing}")
    r = Realizer(g, colors, dict(heads), roots)
    problems = check_realizer(r)
    if problems:
        raise OrientationError("internal consistency failure: " + "; ".join(problems))
    return r


def orientation_of(r: Realizer) -> InternalOrientation:
    return InternalOrientation(r.base, dict(r.heads))


def check_realizer(r: Realizer) -> list[str]:
    """All violated realizer axioms (empty list when ``r`` is a realizer)."""
    g = r.base
    errs: list[str] = []
    if set(r.colors) != set(g.interior_edges) or set(r.heads) != set(g.interior_edges):
        return ["colors/heads must cover exactly the interior edges"]
    for v in g.exterior:
        for w in g.rotations[v]:
            if r.heads.get(edge_key(v, w)) == v:
                errs.append(f"interior edge {w}->{v} points at exterior vertex")

    for v in g.interior_vertices:
        rot = g.rotations[v]
        incoming = _incoming_layout(g, r.heads, v)
        in_colors = sorted(r.colors[edge_key(v, rot[i])] for i in incoming)
        if in_colors != [RED, GREEN, BLUE]:
            errs.append(f"vertex {v}: incoming colors {in_colors}, need one of each")
            continue
        # rotate so the red incoming edge comes first, then read the rule
        start = next(i for i in incoming if r.colors[edge_key(v, rot[i])] == RED)
        current = None
        for step in range(len(rot)):
            w = rot[(start + step) % len(rot)]
            e = edge_key(v, w)
            if r.heads[e] == v:
                expected_in = RED if current is None else (current + 1) % 3
                if r.colors[e] != expected_in:
                    errs.append(f"vertex {v}: incoming edges not in red, green, blue ccw order")
                    break
                current = r.colors[e]
            elif r.colors[e] != (current + 2) % 3:
                errs.append(f"vertex {v}: outgoing edge to {w} has color {COLORS[r.colors[e]]} in wrong sector")
                break

    for c in range(3):
        arcs = r.color_class(c)
        parent: dict[int, int] = {}
        for t, h in arcs:
            if h in parent:
                errs.append(f"{COLORS[c]}: vertex {h} has two parents")
            parent[h] = t
            if t in g.exterior and t != r.roots[c]:
                errs.append(f"{COLORS[c]}: edge leaves exterior vertex {t}, not the root")
        for v in g.interior_vertices:
            seen = {v}
            x = v
            while x in parent:
                x = parent[x]
                if x in seen:
                    errs.append(f"{COLORS[c]}: cycle through {v}")
                    break
                seen.add(x)
            else:
                if x != r.roots[c]:
                    errs.append(f"{COLORS[c]}: path from {v} ends at {x}, not root {r.roots[c]}")
    return errs


def is_directed_triangle(o: InternalOrientation, t: Sequence[int]) -> bool:
    a, b, c = t
    return o.points(a, b) and o.points(b, c) and o.points(c, a)


def _triangles(g: PlaneGraph) -> list[tuple[int, int, int]]:
    """All 3-cycles as sorted triples."""
    out = []
    nb = [set(r) for r in g.rotations]
    for u, v in g.edges:
        for w in sorted(nb[u] & nb[v]):
            if w > v:
                out.append((u, v, w))
    return out


def find_clockwise_triangle(o: InternalOrientation) -> tuple[int, int, int] | None:
    """A clockwise directed triangle of interior edges, or ``None``.

    Facial triangles are scanned first; a clockwise directed facial triangle
    ``a -> c -> b`` is one whose face walk is ``(a, b, c)``.
    """
    g = o.base
    for a, b, c in g.inner_faces:
        if o.points(a, c) and o.points(c, b) and o.points(b, a):
            return (a, c, b)
    facial = {tuple(sorted(f)) for f in g.inner_faces}
    for tri in _triangles(g):
        if tri in facial:
            continue
        u, v, w = tri
        for cyc in ((u, v, w), (u, w, v)):
            if is_directed_triangle(o, cyc) and not is_counterclockwise(g, cyc):
                return cyc
    return None


def flip(o: InternalOrientation, t: Sequence[int]) -> InternalOrientation:
    """Reverse the directed triangle ``t``."""
    if len(t) != 3 or not is_directed_triangle(o, t):
        raise OrientationError(f"{tuple(t)} is not a directed triangle of the orientation")
    heads = dict(o.heads)
    a, b, c = t
    for x, y in ((a, b), (b, c), (c, a)):
        heads[edge_key(x, y)] = x
    return InternalOrientation(o.base, heads)


def canonicalize_ccw(o: InternalOrientation, max_flips: int | None = None) -> InternalOrientation:
    """Flip clockwise triangles until none is left."""
    errs = check_orientation(o)
    if errs:
        raise OrientationError("; ".join(errs))
    cap = 4 ** o.base.n if max_flips is None else max_flips
    flips = 0
    while (t := find_clockwise_triangle(o)) is not None:
        if flips >= cap:
            raise OrientationError(f"flip descent did not terminate within {cap} flips")
        o = flip(o, t)
        flips += 1
    return o


def colored_path(r: Realizer, v: int, color: int | str) -> list[int]:
    """Vertices of the monochromatic path from interior ``v`` to the root.

    Edges along it point toward ``v`` (the path is directed root -> v).
    """
    c = color_index(color)
    g = r.base
    if v in g.exterior or not 0 <= v < g.n:
        raise OrientationError(f"{v} is not an interior vertex")
    path = [v]
    while path[-1] not in g.exterior:
        path.append(r.parent(path[-1], c))
        if len(path) > g.n:
            raise OrientationError("colored path does not reach the root")
    return path


@dataclass(frozen=True)
class Region:
    color: int
    vertex: int
    boundary: tuple[int, ...]
    vertices: frozenset[int]
    edges: frozenset[Edge]
    faces: frozenset[tuple[int, ...]]

    def contains(self, other: "Region") -> bool:
        return other.vertices <= self.vertices and other.edges <= self.edges


def _face_dual(g: PlaneGraph) -> tuple[list[tuple[int, ...]], dict[Edge, list[int]], int]:
    walks = [f.boundary for f in g._faces]
    outer = next(i for i, f in enumerate(g._faces) if f.is_outer)
    by_edge: dict[Edge, list[int]] = {}
    for i, w in enumerate(walks):
        for j in range(len(w)):
            by_edge.setdefault(edge_key(w[j], w[(j + 1) % len(w)]), []).append(i)
    return walks, by_edge, outer


def region(r: Realizer, v: int, color: int | str) -> Region:
    """Subgraph bounded by the two other-colored paths of ``v`` and the outer
    edge joining their roots."""
    c = color_index(color)
    g = r.base
    p1 = colored_path(r, v, (c + 1) % 3)
    p2 = colored_path(r, v, (c + 2) % 3)
    boundary = tuple(p1 + p2[::-1][:-1])
    bedges = {edge_key(boundary[i], boundary[(i + 1) % len(boundary)]) for i in range(len(boundary))}

    walks, by_edge, outer = _face_dual(g)
    reached = {outer}
    stack = [outer]
    while stack:
        f = stack.pop()
        w = walks[f]
        for j in range(len(w)):
            e = edge_key(w[j], w[(j + 1) % len(w)])
            if e in bedges:
                continue
            for h in by_edge[e]:
                if h not in reached:
                    reached.add(h)
                    stack.append(h)
    inside = [walks[i] for i in range(len(walks)) if i not in reached]
    verts = set(boundary)
    edges = set(bedges)
    for w in inside:
        verts.update(w)
        edges.update(edge_key(w[j], w[(j + 1) % len(w)]) for j in range(len(w)))
    return Region(c, v, boundary, frozenset(verts), frozenset(edges), frozenset(inside))


def schnyder_drawing(r: Realizer) -> list[tuple[int, int]]:
    """Integer coordinates: (#inner faces in red region, #inner faces in green region)."""
    g = r.base
    total = 2 * g.n - 5
    pos: list[tuple[int, int]] = [(0, 0)] * g.n
    vr, vg, vb = r.roots
    pos[vr] = (total, 0)
    pos[vg] = (0, total)
    pos[vb] = (0, 0)
    for v in g.interior_vertices:
        pos[v] = (len(region(r, v, RED).faces), len(region(r, v, GREEN).faces))
    return pos


@lru_cache(maxsize=256)
def _drawing_cached(g: PlaneGraph) -> tuple[tuple[int, int], ...]:
    from .procedure import thomassen_procedure_on_triangulation

    t = g
    rep = validate(g)
    if not rep.ok:
        raise PlanarError("; ".join(rep.errors))
    if not rep.is_triangulation:
        t, _ = triangulate(g)
    res = thomassen_procedure_on_triangulation(t)
    return tuple(schnyder_drawing(realizer_from_orientation(res.internal_orientation())))


def default_drawing(g: PlaneGraph) -> tuple[tuple[int, int], ...]:
    """Cached Schnyder drawing of ``g`` (of a triangulation of ``g`` if needed)."""
    return _drawing_cached(g)


def canonical_orientation(t: PlaneGraph) -> InternalOrientation:
    """The counterclockwise internal 3-orientation, via the peeling procedure."""
    from .procedure import thomassen_procedure_on_triangulation

    require_triangulation(t)
    return thomassen_procedure_on_triangulation(t).internal_orientation()
