"""Test triangulations and exhaustive oracles for small instances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Literal

from .planar import Edge, PlaneGraph, from_adjacency_positions, require_triangulation
from .schnyder import InternalOrientation, check_orientation


class CapExceeded(ValueError):
    """An exhaustive computation was refused because the input is too large."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class GeneratorConfig:
    target_n: int
    seed: int = 0
    method: Literal["stacked"] = "stacked"

    def __post_init__(self) -> None:
        if self.target_n < 3:
            raise ValueError("target_n must be at least 3")
        if self.method != "stacked":
            raise ValueError(f"unknown method {self.method!r}")


def k3() -> PlaneGraph:
    return PlaneGraph(3, ((1, 2), (2, 0), (0, 1)), (0, 2, 1))


def stacked_triangulation(cfg: GeneratorConfig | int, seed: int | None = None) -> PlaneGraph:
    """Grow K3 by inserting vertices into uniformly chosen inner faces.

    Randomness comes from :class:`random.Random` seeded with ``cfg.seed``
    (Mersenne Twister, stable across Python versions for ``randrange``).
    """
    if isinstance(cfg, int):
        cfg = GeneratorConfig(cfg, 0 if seed is None else seed)
    return stack_onto(k3(), cfg.target_n, cfg.seed)


def stack_onto(base: PlaneGraph, target_n: int, seed: int) -> PlaneGraph:
    """Insert vertices ``base.n, ..., target_n - 1`` into random inner faces of ``base``.

    Stacked triangulations have a single internal 3-orientation; stacking
    onto a richer base (octahedron, ...) keeps the lattice nontrivial.
    """
    require_triangulation(base)
    rng = random.Random(seed)
    rots = [list(r) for r in base.rotations]
    inner = [tuple(f) for f in base.inner_faces]
    for w in range(base.n, target_n):
        i = rng.randrange(len(inner))
        a, b, c = inner[i]
        for x, y in ((a, b), (b, c), (c, a)):
            r = rots[x]
            r.insert(r.index(y) + 1, w)
        rots.append([a, b, c])
        inner[i : i + 1] = [(a, b, w), (b, c, w), (c, a, w)]
    g = PlaneGraph(max(target_n, base.n), tuple(tuple(r) for r in rots), base.outer_face)
    return require_triangulation(g)


def flip_edge(t: PlaneGraph, e: Edge) -> PlaneGraph | None:
    """Replace interior edge ``uv`` by the other diagonal of its two faces.

    Returns ``None`` when that diagonal already exists.
    """
    u, v = e
    a = t.next_in_face(u, v)
    b = t.next_in_face(v, u)
    if e in t.outer_edges or t.adjacent(a, b):
        return None
    rots = [list(r) for r in t.rotations]
    rots[u].remove(v)
    rots[v].remove(u)
    rots[a].insert(rots[a].index(u) + 1, b)
    rots[b].insert(rots[b].index(v) + 1, a)
    return PlaneGraph(t.n, tuple(tuple(r) for r in rots), t.outer_face)


def diversify(t: PlaneGraph, flips: int, seed: int) -> PlaneGraph:
    """Random edge flips keeping minimum degree 3 (fixture variety only)."""
    rng = random.Random(seed)
    for _ in range(flips):
        g = flip_edge(t, rng.choice(t.interior_edges))
        if g is not None and min(g.degree(v) for v in range(g.n)) >= 3:
            t = g
    return require_triangulation(t)


def k4() -> PlaneGraph:
    return stacked_triangulation(GeneratorConfig(4, 0))


def octahedron() -> PlaneGraph:
    pos = [(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 0.8), (2.8, 2.0), (1.2, 2.0)]
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)]
    return require_triangulation(from_adjacency_positions(pos, edges))


def cube() -> PlaneGraph:
    pos = [(0, 0), (6, 0), (6, 6), (0, 6), (2, 2), (4, 2), (4, 4), (2, 4)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)]
    return from_adjacency_positions(pos, edges)


def prism(k: int) -> PlaneGraph:
    """Plane drawing of the k-gonal prism (two nested k-cycles)."""
    import math

    pos = [(10 * math.cos(2 * math.pi * i / k), 10 * math.sin(2 * math.pi * i / k)) for i in range(k)]
    pos += [(4 * math.cos(2 * math.pi * i / k + 0.3), 4 * math.sin(2 * math.pi * i / k + 0.3)) for i in range(k)]
    edges = [(i, (i + 1) % k) for i in range(k)] + [(k + i, k + (i + 1) % k) for i in range(k)] + [(i, k + i) for i in range(k)]
    return from_adjacency_positions(pos, edges)


def grid(rows: int, cols: int) -> PlaneGraph:
    pos = [(c, r) for r in range(rows) for c in range(cols)]
    edges = [(r * cols + c, r * cols + c + 1) for r in range(rows) for c in range(cols - 1)]
    edges += [(r * cols + c, (r + 1) * cols + c) for r in range(rows - 1) for c in range(cols)]
    return from_adjacency_positions(pos, edges)


def square() -> PlaneGraph:
    return from_adjacency_positions([(0, 0), (1, 0), (1, 1), (0, 1)], [(0, 1), (1, 2), (2, 3), (3, 0)])


def single_edge() -> tuple[int, list[Edge]]:
    return 2, [(0, 1)]


def suite(max_n: int = 12, seeds: int = 3) -> Iterator[tuple[str, PlaneGraph]]:
    """Named triangulations used by the acceptance checks, up to ``max_n`` vertices.

    Besides K3, K4 and stacked triangulations (which have one internal
    3-orientation each) it includes triangulated prisms, cube and grid and
    vertices stacked onto the octahedron, whose orientation lattices are
    larger.
    """
    from .planar import triangulate

    yield "K3", k3()
    yield "K4", k4()
    yield "octahedron", octahedron()
    fixed = [("cube+", cube()), ("prism3+", prism(3)), ("prism4+", prism(4)), ("prism5+", prism(5)), ("grid3x3+", grid(3, 3))]
    for name, g in fixed:
        if g.n <= max_n:
            yield name, triangulate(g)[0]
    for n in range(7, max_n + 1):
        for s in range(seeds):
            yield f"octa-stacked-n{n}-s{s}", stack_onto(octahedron(), n, s)
    # seeds picked for large orientation lattices (5 and 10 orientations)
    for n, s in ((8, 6), (8, 26), (9, 19), (9, 194)):
        if n <= max_n:
            yield f"flipped-n{n}-s{s}", diversify(stacked_triangulation(GeneratorConfig(n, s)), 3 * n, s)
    for n in range(6, max_n + 1):
        for s in range(seeds):
            yield f"flipped-n{n}-s{s}", diversify(stacked_triangulation(GeneratorConfig(n, s)), 3 * n, s)
    for n in range(5, max_n + 1):
        for s in range(seeds):
            yield f"stacked-n{n}-s{s}", stacked_triangulation(GeneratorConfig(n, s))


def enumerate_internal_3_orientations(t: PlaneGraph, cap: int = 22) -> list[InternalOrientation]:
    """Every orientation of the interior edges with in-degree 3 at interior vertices.

    Exterior vertices are not constrained during the search; the
    consequence that none of them receives an interior edge is checked.
    """
    require_triangulation(t)
    edges = list(t.interior_edges)
    if len(edges) > cap:
        raise CapExceeded("interior edges", len(edges), cap)
    interior = set(t.interior_vertices)
    remaining = [0] * t.n
    for u, v in edges:
        remaining[u] += 1
        remaining[v] += 1
    indeg = [0] * t.n
    heads: list[int] = [0] * len(edges)
    out: list[InternalOrientation] = []

    def feasible(v: int) -> bool:
        if v not in interior:
            return True
        return indeg[v] <= 3 and indeg[v] + remaining[v] >= 3

    def rec(i: int) -> None:
        if i == len(edges):
            o = InternalOrientation(t, dict(zip(edges, heads)))
            errs = check_orientation(o)
            assert not errs, errs
            out.append(o)
            return
        u, v = edges[i]
        remaining[u] -= 1
        remaining[v] -= 1
        for h in (u, v):
            indeg[h] += 1
            heads[i] = h
            if feasible(u) and feasible(v):
                rec(i + 1)
            indeg[h] -= 1
        remaining[u] += 1
        remaining[v] += 1

    rec(0)
    return out


def random_orientation(n: int, edges: list[Edge], rng: random.Random) -> dict[Edge, int]:
    return {e: e[rng.randrange(2)] for e in edges}
