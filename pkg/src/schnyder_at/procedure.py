"""Thomassen-style peeling that orients a near triangulation.

The current near triangulation is kept as a set of counterclockwise
triangles.  A step either splits along a chord of the outer cycle or peels
the vertex ``v3`` following ``v2`` clockwise: its outer-cycle edges are
oriented into ``v3`` with strength 1, the rest out of ``v3`` with
strength 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .augmented import AugmentedOrientation
from .planar import Edge, PlanarError, PlaneGraph, edge_key, validate
from .schnyder import InternalOrientation

Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class NearTriangulation:
    graph: PlaneGraph
    v1: int
    v2: int

    def check(self) -> None:
        rep = validate(self.graph)
        if not rep.ok:
            raise PlanarError("; ".join(rep.errors))
        if not rep.is_near_triangulation:
            raise PlanarError("not a 2-connected near triangulation")
        f = self.graph.outer_face
        k = len(f)
        if not any(f[i] == self.v1 and f[(i + 1) % k] == self.v2 for i in range(k)):
            raise PlanarError(f"({self.v1}, {self.v2}) are not clockwise consecutive on the outer cycle")


@dataclass
class Step:
    kind: str  # "chord" or "orient"
    v1: int
    v2: int
    faces: tuple[Triangle, ...]
    chord: Edge | None = None
    part1: tuple[int, ...] = ()
    part2: tuple[int, ...] = ()
    central: int | None = None
    oriented: list[tuple[int, int, int]] = field(default_factory=list)

    def as_dict(self) -> dict:
        d: dict = {"kind": self.kind, "v1": self.v1, "v2": self.v2, "faces": [list(f) for f in self.faces]}
        if self.kind == "chord":
            d.update(chord=list(self.chord), H1=list(self.part1), H2=list(self.part2))
        else:
            d.update(central=self.central, oriented=[list(a) for a in self.oriented])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Step":
        s = cls(d["kind"], d["v1"], d["v2"], tuple(tuple(f) for f in d["faces"]))
        if s.kind == "chord":
            s.chord = tuple(d["chord"])
            s.part1 = tuple(d["H1"])
            s.part2 = tuple(d["H2"])
        else:
            s.central = d["central"]
            s.oriented = [tuple(a) for a in d["oriented"]]
        return s


@dataclass
class ProcedureTrace:
    n: int
    preoriented: tuple[int, int, int]
    steps: list[Step] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "preoriented": list(self.preoriented),
            "steps": [s.as_dict() for s in self.steps],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ProcedureTrace":
        return cls(d["n"], tuple(d["preoriented"]), [Step.from_dict(s) for s in d["steps"]])


@dataclass
class ProcedureResult:
    graph: PlaneGraph
    heads: dict[Edge, int]
    strengths: dict[Edge, int]
    trace: ProcedureTrace

    def augmented(self) -> AugmentedOrientation:
        edges = self.graph.edges
        return AugmentedOrientation(self.graph.n, edges, dict(self.heads), dict(self.strengths))

    def internal_orientation(self) -> InternalOrientation:
        return InternalOrientation(self.graph, {e: self.heads[e] for e in self.graph.interior_edges})

    def doubled_edges(self) -> list[Edge]:
        return sorted(e for e, s in self.strengths.items() if s == 2)


def _face_edges(f: Triangle) -> list[Edge]:
    a, b, c = f
    return [edge_key(a, b), edge_key(b, c), edge_key(c, a)]


def _has_dart(f: Triangle, x: int, y: int) -> bool:
    a, b, c = f
    return (x, y) in ((a, b), (b, c), (c, a))


def _boundary_ccw(faces: Iterable[Triangle]) -> dict[int, int]:
    """Successor map of the counterclockwise boundary walk."""
    count: dict[Edge, int] = {}
    darts = []
    for a, b, c in faces:
        for x, y in ((a, b), (b, c), (c, a)):
            count[edge_key(x, y)] = count.get(edge_key(x, y), 0) + 1
            darts.append((x, y))
    succ: dict[int, int] = {}
    for x, y in darts:
        if count[edge_key(x, y)] == 1:
            if x in succ:
                raise PlanarError("outer boundary is not a simple cycle")
            succ[x] = y
    return succ


def outer_cycle_cw(faces: Sequence[Triangle], v1: int, v2: int) -> list[int]:
    """Outer cycle in clockwise order starting ``v1, v2, v3, ...``."""
    succ = _boundary_ccw(faces)
    pred = {y: x for x, y in succ.items()}
    if succ.get(v2) != v1:
        raise PlanarError(f"({v1}, {v2}) are not clockwise consecutive on the outer cycle")
    cyc = [v1]
    x = pred[v1]
    while x != v1:
        cyc.append(x)
        x = pred[x]
        if len(cyc) > len(succ):
            raise PlanarError("outer boundary is not a simple cycle")
    if len(cyc) != len(succ):
        raise PlanarError("outer boundary is not a single cycle")
    return cyc


def _split(faces: Sequence[Triangle], chord: Edge, seed: Triangle) -> tuple[list[Triangle], list[Triangle]]:
    by_edge: dict[Edge, list[int]] = {}
    for i, f in enumerate(faces):
        for e in _face_edges(f):
            by_edge.setdefault(e, []).append(i)
    start = faces.index(seed)
    reached = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for e in _face_edges(faces[i]):
            if e == chord:
                continue
            for j in by_edge[e]:
                if j not in reached:
                    reached.add(j)
                    stack.append(j)
    part1 = [f for i, f in enumerate(faces) if i in reached]
    part2 = [f for i, f in enumerate(faces) if i not in reached]
    return part1, part2


def _vertices(faces: Iterable[Triangle]) -> tuple[int, ...]:
    return tuple(sorted({v for f in faces for v in f}))


def _run(
    faces: list[Triangle],
    v1: int,
    v2: int,
    heads: dict[Edge, int],
    strengths: dict[Edge, int],
    trace: ProcedureTrace,
) -> None:
    stack: list[tuple[list[Triangle], int, int]] = [(faces, v1, v2)]
    while stack:
        faces, v1, v2 = stack.pop()
        while faces:
            cyc = outer_cycle_cw(faces, v1, v2)
            k = len(cyc)
            on_cycle = {v: i for i, v in enumerate(cyc)}
            cycle_edges = {edge_key(cyc[i], cyc[(i + 1) % k]) for i in range(k)}
            all_edges = {e for f in faces for e in _face_edges(f)}
            dist = {v: (i - 1) % k for i, v in enumerate(cyc)}  # clockwise steps from v2
            chords = [
                e for e in all_edges if e not in cycle_edges and e[0] in on_cycle and e[1] in on_cycle
            ]
            if chords:
                a, b = min(chords, key=lambda e: (min(dist[e[0]], dist[e[1]]), e))
                chord = (a, b)
                seed = next(f for f in faces if _has_dart(f, v2, v1))
                part1, part2 = _split(faces, chord, seed)
                # the chord is clockwise-consecutive (d1, d2) in H2 iff d2 -> d1 is a dart of H2
                d1, d2 = (a, b) if any(_has_dart(f, b, a) for f in part2) else (b, a)
                trace.steps.append(
                    Step("chord", v1, v2, tuple(faces), chord=chord, part1=_vertices(part1), part2=_vertices(part2))
                )
                stack.append((part2, d1, d2))
                faces = part1
                continue

            v3 = cyc[2]
            nxt = cyc[3 % k]
            step = Step("orient", v1, v2, tuple(faces), central=v3)
            nbrs = sorted({x for f in faces if v3 in f for x in f if x != v3})
            for w in nbrs:
                e = edge_key(v3, w)
                if e in heads:
                    raise PlanarError(f"edge {e} oriented twice (invariant broken)")
                if w in (v2, nxt):
                    heads[e], strengths[e] = v3, 1
                    step.oriented.append((w, v3, 1))
                else:
                    heads[e], strengths[e] = w, 2
                    step.oriented.append((v3, w, 2))
            trace.steps.append(step)
            faces = [f for f in faces if v3 not in f]


def thomassen_procedure(nt: NearTriangulation, preoriented_head: int | None = None) -> ProcedureResult:
    """Orient every edge of ``nt`` with strengths in {1, 2}.

    The distinguished edge ``v1 v2`` is oriented ``v2 -> v1`` unless
    ``preoriented_head`` says otherwise.
    """
    nt.check()
    g = nt.graph
    head = nt.v1 if preoriented_head is None else preoriented_head
    if head not in (nt.v1, nt.v2):
        raise PlanarError("preoriented head must be v1 or v2")
    tail = nt.v2 if head == nt.v1 else nt.v1
    e12 = edge_key(nt.v1, nt.v2)
    heads = {e12: head}
    strengths = {e12: 1}
    trace = ProcedureTrace(g.n, (tail, head, 1))
    faces = [tuple(f) for f in g.inner_faces]
    _run(faces, nt.v1, nt.v2, heads, strengths, trace)
    if set(heads) != set(g.edges):
        raise PlanarError("procedure left edges unoriented")
    return ProcedureResult(g, heads, strengths, trace)


def thomassen_procedure_on_triangulation(t: PlaneGraph) -> ProcedureResult:
    """Run the procedure with ``v1, v2`` the first two outer-face vertices."""
    return thomassen_procedure(NearTriangulation(t, t.outer_face[0], t.outer_face[1]))


def check_trace(g: PlaneGraph, trace: ProcedureTrace) -> list[str]:
    """Replay ``trace`` on ``g`` and report violations of the step invariants.

    (I1) no inner edge of the current graph is oriented at a step start;
    (I2) from the second step on, each non-distinguished outer vertex has
    exactly one incoming edge, off the outer cycle and doubled (vertices of
    the input's own outer cycle are exempt, which only matters when the
    input is not a triangulation);
    (I3) edges oriented after a vertex is peeled point away from it.
    """
    errs: list[str] = []
    heads: dict[Edge, int] = {}
    strengths: dict[Edge, int] = {}
    t0, h0, s0 = trace.preoriented
    heads[edge_key(t0, h0)] = h0
    strengths[edge_key(t0, h0)] = s0
    removed_at: dict[int, int] = {}
    original_outer = set(g.outer_face)

    for idx, step in enumerate(trace.steps):
        faces = list(step.faces)
        try:
            cyc = outer_cycle_cw(faces, step.v1, step.v2)
        except PlanarError as exc:
            errs.append(f"step {idx}: {exc}")
            continue
        k = len(cyc)
        cycle_edges = {edge_key(cyc[i], cyc[(i + 1) % k]) for i in range(k)}
        inner = {e for f in faces for e in _face_edges(f)} - cycle_edges
        oriented_inner = sorted(e for e in inner if e in heads)
        if oriented_inner:
            errs.append(f"step {idx}: I1 violated, inner edges already oriented {oriented_inner}")
        if idx > 0:
            for v in cyc:
                if v in (step.v1, step.v2) or v in original_outer:
                    continue
                ins = [e for e in heads if heads[e] == v]
                if len(ins) != 1:
                    errs.append(f"step {idx}: I2 violated, vertex {v} has {len(ins)} incoming edges")
                elif ins[0] in cycle_edges or strengths[ins[0]] != 2:
                    errs.append(f"step {idx}: I2 violated, incoming edge {ins[0]} of {v} on cycle or not doubled")
        if step.kind == "orient":
            if step.central != cyc[2]:
                errs.append(f"step {idx}: central vertex {step.central} does not follow v2 clockwise")
            for tail, head, s in step.oriented:
                e = edge_key(tail, head)
                for v in (tail, head):
                    if v in removed_at and head == v:
                        errs.append(f"step {idx}: I3 violated, edge {e} oriented into peeled vertex {v}")
                heads[e] = head
                strengths[e] = s
            removed_at[step.central] = idx
        elif step.kind == "chord":
            a, b = step.chord
            if not (a in cyc and b in cyc) or step.chord in cycle_edges or step.chord not in inner:
                errs.append(f"step {idx}: {step.chord} is not a chord of the outer cycle")
        else:
            errs.append(f"step {idx}: unknown step kind {step.kind!r}")
    if set(heads) != set(g.edges):
        errs.append("replay does not orient every edge")
    return errs
