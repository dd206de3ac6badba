"""Plane graphs given by rotation systems.

Conventions used throughout the package:

* ``rotations[v]`` lists the neighbours of ``v`` in counterclockwise order.
* The face to the left of the directed edge ``u -> v`` continues with
  ``v -> w`` where ``w`` is the neighbour immediately *before* ``u`` in the
  counterclockwise rotation at ``v``.  Inner faces are therefore traced
  counterclockwise and the outer face clockwise.
* ``outer_face`` is stored in that clockwise order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


class PlanarError(ValueError):
    """Raised when an input is not a valid plane graph for the requested use."""


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = list(b).index(a[0])
    except ValueError:
        return False
    return all(a[i] == b[(k + i) % len(b)] for i in range(len(a)))


@dataclass(frozen=True)
class Face:
    boundary: tuple[int, ...]
    is_outer: bool = False

    def __len__(self) -> int:
        return len(self.boundary)

    def directed_edges(self) -> list[Edge]:
        b = self.boundary
        return [(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]


@dataclass(frozen=True)
class PlaneGraph:
    """Immutable rotation-system embedding.

    Construction does not validate; call :func:`validate` (or
    :meth:`checked`) before relying on the invariants.
    """

    vertex_count: int
    rotations: tuple[tuple[int, ...], ...]
    outer_face: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotations", tuple(tuple(r) for r in self.rotations))
        object.__setattr__(self, "outer_face", tuple(self.outer_face))

    @property
    def n(self) -> int:
        return self.vertex_count

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        es = {edge_key(u, v) for u, rot in enumerate(self.rotations) for v in rot if u != v}
        return tuple(sorted(es))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def _position(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(rot)} for rot in self.rotations)

    @cached_property
    def exterior(self) -> frozenset[int]:
        return frozenset(self.outer_face)

    @cached_property
    def interior_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if v not in self.exterior)

    @cached_property
    def outer_edges(self) -> frozenset[Edge]:
        f = self.outer_face
        return frozenset(edge_key(f[i], f[(i + 1) % len(f)]) for i in range(len(f)))

    @cached_property
    def interior_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e not in self.outer_edges)

    def adjacent(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def next_in_face(self, u: int, v: int) -> int:
        """Third vertex ``w`` of the face step ``u -> v -> w``."""
        rot = self.rotations[v]
        return rot[(self._position[v][u] - 1) % len(rot)]

    def face_walks(self) -> list[tuple[int, ...]]:
        """All face walks, deterministic order (by first unused directed edge)."""
        seen: set[Edge] = set()
        walks = []
        for u in range(self.n):
            for v in self.rotations[u]:
                if (u, v) in seen:
                    continue
                walk = []
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    walk.append(a)
                    a, b = b, self.next_in_face(a, b)
                walks.append(tuple(walk))
        return walks

    @cached_property
    def _faces(self) -> tuple[Face, ...]:
        out = []
        found_outer = False
        for w in self.face_walks():
            is_outer = not found_outer and _same_cycle(w, self.outer_face)
            found_outer = found_outer or is_outer
            out.append(Face(w, is_outer))
        return tuple(out)

    @property
    def inner_faces(self) -> list[tuple[int, ...]]:
        return [f.boundary for f in self._faces if not f.is_outer]

    def checked(self) -> "PlaneGraph":
        report = validate(self)
        if not report.ok:
            raise PlanarError("; ".join(report.errors))
        return self

    def is_triangulation(self) -> bool:
        return validate(self).is_triangulation


@dataclass
class ValidationReport:
    vertex_count: int = 0
    edge_count: int = 0
    face_count: int = 0
    errors: list[str] = field(default_factory=list)
    is_triangulation: bool = False
    is_near_triangulation: bool = False

    @property
    def ok(self) -> bool:
        return not self.errors

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "V": self.vertex_count,
            "E": self.edge_count,
            "F": self.face_count,
            "is_triangulation": self.is_triangulation,
            "is_near_triangulation": self.is_near_triangulation,
            "errors": list(self.errors),
        }


def validate(g: PlaneGraph) -> ValidationReport:
    """Check the plane-graph invariants, collecting every violation found."""
    rep = ValidationReport(vertex_count=g.vertex_count)
    errs = rep.errors
    n = g.vertex_count
    if n < 0:
        errs.append("negative vertex count")
        return rep
    if len(g.rotations) != n:
        errs.append(f"expected {n} rotation lists, got {len(g.rotations)}")
        return rep
    structural_ok = True
    for v, rot in enumerate(g.rotations):
        for w in rot:
            if not isinstance(w, int) or not 0 <= w < n:
                errs.append(f"vertex {v}: unknown neighbour id {w!r}")
                structural_ok = False
            elif w == v:
                errs.append(f"vertex {v}: self-loop")
                structural_ok = False
        if len(set(rot)) != len(rot):
            errs.append(f"vertex {v}: repeated neighbour in rotation")
            structural_ok = False
    if not structural_ok:
        return rep
    for v, rot in enumerate(g.rotations):
        for w in rot:
            if v not in g.rotations[w]:
                errs.append(f"asymmetric adjacency: {w} in rotation of {v} but not vice versa")
                structural_ok = False
    for v in g.outer_face:
        if not isinstance(v, int) or not 0 <= v < n:
            errs.append(f"outer face: unknown vertex id {v!r}")
            structural_ok = False
    if not structural_ok:
        return rep

    rep.edge_count = len(g.edges)
    if n == 0:
        errs.append("empty graph")
        return rep
    if not _connected(n, g.rotations):
        errs.append("graph is not connected")
        return rep
    walks = g.face_walks()
    rep.face_count = len(walks)
    if n - rep.edge_count + rep.face_count != 2:
        errs.append(
            f"Euler formula violated: V - E + F = {n} - {rep.edge_count} + {rep.face_count}"
            f" = {n - rep.edge_count + rep.face_count}"
        )
    outer_matches = [w for w in walks if _same_cycle(w, g.outer_face)]
    if not outer_matches:
        errs.append("outer_face is not a face walk (expected clockwise boundary order)")
    if errs:
        return rep

    inner = [w for w in walks if not _same_cycle(w, g.outer_face)]
    all_simple = all(len(set(w)) == len(w) for w in walks)
    if all(len(w) == 3 for w in inner) and all_simple and n >= 3:
        rep.is_near_triangulation = True
        rep.is_triangulation = len(g.outer_face) == 3 and rep.edge_count == 3 * n - 6
    return rep


def _connected(n: int, rotations: Sequence[Sequence[int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in rotations[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def faces(g: PlaneGraph) -> list[Face]:
    """Face walks of a valid plane graph; every directed edge lies in exactly one."""
    g.checked()
    return list(g._faces)


def require_triangulation(g: PlaneGraph) -> PlaneGraph:
    rep = validate(g)
    if not rep.ok:
        raise PlanarError("; ".join(rep.errors))
    if not rep.is_triangulation:
        raise PlanarError("graph is not a plane triangulation")
    return g


def _insert_after(rot: list[int], anchor: int, new: int) -> None:
    rot.insert(rot.index(anchor) + 1, new)


def triangulate(g: PlaneGraph) -> tuple[PlaneGraph, list[Edge]]:
    """Add chords until every face (outer included) is a triangle.

    Returns the triangulation and the added edges in insertion order.  The
    rotations of ``g`` survive as subsequences.
    """
    g.checked()
    if g.vertex_count < 3:
        raise PlanarError("triangulate needs at least 3 vertices")
    rots = [list(r) for r in g.rotations]
    adj = {edge_key(u, v) for u in range(g.n) for v in rots[u]}
    outer_dart = (g.outer_face[0], g.outer_face[1])
    added: list[Edge] = []

    while True:
        cur = PlaneGraph(g.n, tuple(tuple(r) for r in rots), ())
        target = None
        for walk in cur.face_walks():
            if len(walk) > 3:
                target = walk
                break
        if target is None:
            break
        f = target
        k = len(f)
        chord = None
        # distance-2 chords first, then any pair of corners
        for i in range(k):
            a, c = f[i], f[(i + 2) % k]
            if a != c and edge_key(a, c) not in adj:
                chord = (i, (i + 2) % k)
                break
        if chord is None:
            for i in range(k):
                for j in range(i + 2, k):
                    a, c = f[i], f[j]
                    if a != c and edge_key(a, c) not in adj:
                        chord = (i, j)
                        break
                if chord:
                    break
        if chord is None:
            raise PlanarError(f"no admissible chord in face {f}")
        i, j = chord
        a, c = f[i], f[j]
        _insert_after(rots[a], f[(i + 1) % k], c)
        _insert_after(rots[c], f[(j + 1) % k], a)
        adj.add(edge_key(a, c))
        added.append(edge_key(a, c))

    # the outer face is the walk still containing the original outer dart
    cur = PlaneGraph(g.n, tuple(tuple(r) for r in rots), ())
    a, b = outer_dart
    c = cur.next_in_face(a, b)
    out = PlaneGraph(g.n, cur.rotations, (a, b, c))
    require_triangulation(out)
    return out, added


def signed_area2(points: Sequence[tuple[float, float]]) -> float:
    """Twice the signed area of a polygon (positive when counterclockwise)."""
    s = 0
    k = len(points)
    for i in range(k):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % k]
        s += x1 * y2 - x2 * y1
    return s


def check_simple_cycle(g: PlaneGraph, cycle: Sequence[int]) -> None:
    if len(cycle) < 3:
        raise PlanarError("a cycle needs at least 3 vertices")
    if len(set(cycle)) != len(cycle):
        raise PlanarError("cycle is not simple")
    for i in range(len(cycle)):
        u, v = cycle[i], cycle[(i + 1) % len(cycle)]
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.adjacent(u, v):
            raise PlanarError(f"{u}-{v} is not an edge")


def is_counterclockwise(
    g: PlaneGraph,
    cycle: Sequence[int],
    drawing: Sequence[tuple[int, int]] | None = None,
) -> bool:
    """True iff the bounded side of ``cycle`` lies to the left of its traversal.

    Uses the sign of the enclosed area in a planar straight-line drawing.
    By default the Schnyder drawing of ``g`` (triangulated first if needed)
    is used; its coordinates are integers so the test is exact.
    """
    check_simple_cycle(g, cycle)
    if drawing is None:
        from .schnyder import default_drawing

        drawing = default_drawing(g)
    area = signed_area2([drawing[v] for v in cycle])
    if area == 0:
        raise PlanarError("degenerate cycle in drawing")
    return area > 0


def from_adjacency_positions(
    positions: Sequence[tuple[float, float]], edges: Iterable[Edge]
) -> PlaneGraph:
    """Build the rotation system of a straight-line drawing.

    Rotations are sorted by angle; the outer face is the walk with negative
    area.  Meant for hand-made fixtures (cube, octahedron, ...).
    """
    import math

    n = len(positions)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rots = []
    for v in range(n):
        x0, y0 = positions[v]
        rots.append(
            tuple(sorted(nbrs[v], key=lambda w: math.atan2(positions[w][1] - y0, positions[w][0] - x0)))
        )
    g = PlaneGraph(n, tuple(rots), ())
    walks = g.face_walks()
    outer = min(walks, key=lambda w: signed_area2([positions[v] for v in w]))
    return PlaneGraph(n, g.rotations, outer)
