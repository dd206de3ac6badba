"""Augmented-orientation certificates for Alon-Tarsi bounds.

A certificate is an orientation of a plane triangulation in which one
Schnyder tree carries strength 2.  It has maximum augmented in-degree at
most 4 and no nonempty Eulerian structure, which bounds AT(G) by 5.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Iterator

from .augmented import AugmentedOrientation, max_augmented_indegree
from .planar import Edge, PlaneGraph, edge_key, require_triangulation
from .procedure import ProcedureResult, thomassen_procedure_on_triangulation
from .schnyder import BLUE, COLORS, GREEN, RED, Realizer, realizer_from_orientation
from .testkit import CapExceeded

DEFAULT_EULERIAN_CAP = 26


class CertificateError(RuntimeError):
    """A certificate failed one of its own checks."""


@dataclass(frozen=True)
class EulerianCount:
    even: int
    odd: int
    includes_empty: bool = True

    @property
    def nonempty(self) -> int:
        return self.even + self.odd - (1 if self.includes_empty else 0)

    @property
    def difference(self) -> int:
        return self.even - self.odd

    def as_dict(self) -> dict:
        return {"even": self.even, "odd": self.odd, "includes_empty": self.includes_empty}


def _edge_order(a: AugmentedOrientation) -> list[tuple[int, int, int]]:
    """Arcs ordered so vertices are finished early (small frontier)."""
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in a.edges:
        adj[u].append(v)
        adj[v].append(u)
    pos: dict[int, int] = {}
    for s in sorted(adj):
        if s in pos:
            continue
        pos[s] = len(pos)
        queue = [s]
        while queue:
            x = queue.pop(0)
            for y in sorted(adj[x]):
                if y not in pos:
                    pos[y] = len(pos)
                    queue.append(y)
    arcs = a.arcs()
    arcs.sort(key=lambda t: (max(pos[t[0]], pos[t[1]]), min(pos[t[0]], pos[t[1]])))
    return arcs


def _check_cap(a: AugmentedOrientation, cap: int | None) -> None:
    cap = DEFAULT_EULERIAN_CAP if cap is None else cap
    if len(a.edges) > cap:
        raise CapExceeded("Eulerian enumeration edges", len(a.edges), cap)


def iter_eulerian_structures(
    a: AugmentedOrientation, cap: int | None = DEFAULT_EULERIAN_CAP
) -> Iterator[list[tuple[int, int, int]]]:
    """Yield every nonempty balanced arc subset, depth first.

    A branch is cut as soon as some vertex's imbalance exceeds the total
    strength of its still-undecided arcs.
    """
    _check_cap(a, cap)
    arcs = _edge_order(a)
    bal = [0] * a.n
    rem = [0] * a.n
    for t, h, s in arcs:
        rem[t] += s
        rem[h] += s
    chosen: list[tuple[int, int, int]] = []

    def rec(i: int) -> Iterator[list[tuple[int, int, int]]]:
        if i == len(arcs):
            if chosen:
                yield list(chosen)
            return
        t, h, s = arcs[i]
        rem[t] -= s
        rem[h] -= s
        if abs(bal[t]) <= rem[t] and abs(bal[h]) <= rem[h]:
            yield from rec(i + 1)
        bal[t] -= s
        bal[h] += s
        chosen.append(arcs[i])
        if abs(bal[t]) <= rem[t] and abs(bal[h]) <= rem[h]:
            yield from rec(i + 1)
        chosen.pop()
        bal[t] += s
        bal[h] -= s
        rem[t] += s
        rem[h] += s

    yield from rec(0)


def count_eulerian_structures(
    a: AugmentedOrientation,
    cap: int | None = DEFAULT_EULERIAN_CAP,
    includes_empty: bool = True,
) -> EulerianCount:
    """Count balanced arc subsets by parity of their size.

    Sweeps the arcs in order keeping, for every reachable assignment of
    imbalances on the not-yet-finished vertices, how many subsets of each
    parity produce it.  Exact and deterministic.
    """
    _check_cap(a, cap)
    arcs = _edge_order(a)
    last: dict[int, int] = {}
    rem = [0] * a.n
    for i, (t, h, s) in enumerate(arcs):
        last[t] = last[h] = i
        rem[t] += s
        rem[h] += s
    # state: sorted tuple of (vertex, balance) with nonzero balance -> [even, odd]
    states: dict[tuple[tuple[int, int], ...], list[int]] = {(): [1, 0]}
    for i, (t, h, s) in enumerate(arcs):
        rem[t] -= s
        rem[h] -= s
        nxt: dict[tuple[tuple[int, int], ...], list[int]] = {}
        for key, (ev, od) in states.items():
            bal = dict(key)
            for take in (False, True):
                b = dict(bal)
                if take:
                    b[t] = b.get(t, 0) - s
                    b[h] = b.get(h, 0) + s
                if abs(b.get(t, 0)) > rem[t] or abs(b.get(h, 0)) > rem[h]:
                    continue
                k = tuple(sorted((v, x) for v, x in b.items() if x))
                slot = nxt.setdefault(k, [0, 0])
                if take:
                    slot[0] += od
                    slot[1] += ev
                else:
                    slot[0] += ev
                    slot[1] += od
        states = nxt
    even, odd = states.get((), [0, 0])
    if not includes_empty:
        even -= 1
    return EulerianCount(even, odd, includes_empty)


def count_eulerian_brute(a: AugmentedOrientation, includes_empty: bool = True) -> EulerianCount:
    """Reference count via the depth-first enumerator."""
    even = 1 if includes_empty else 0
    odd = 0
    for s in iter_eulerian_structures(a, cap=None if len(a.edges) <= DEFAULT_EULERIAN_CAP else len(a.edges)):
        if len(s) % 2:
            odd += 1
        else:
            even += 1
    return EulerianCount(even, odd, includes_empty)


def find_directed_cycle(arcs: list[tuple[int, int, int]]) -> list[int] | None:
    """A simple directed cycle (vertex list) among ``arcs``, if any."""
    out: dict[int, list[int]] = defaultdict(list)
    for t, h, _ in arcs:
        out[t].append(h)
    state: dict[int, int] = {}
    stack_path: list[int] = []

    def dfs(v: int) -> list[int] | None:
        state[v] = 1
        stack_path.append(v)
        for w in out[v]:
            if state.get(w) == 1:
                return stack_path[stack_path.index(w) :]
            if w not in state:
                found = dfs(w)
                if found:
                    return found
        stack_path.pop()
        state[v] = 2
        return None

    for v in sorted(out):
        if v not in state:
            found = dfs(v)
            if found:
                return found
    return None


@dataclass
class ATCertificate:
    graph: PlaneGraph
    augmented: AugmentedOrientation
    colors: dict[Edge, int]
    doubled_tree: list[Edge]
    max_aug_indegree: int
    eulerian: EulerianCount | None = None
    witness: list[tuple[int, int, int]] | None = None

    @property
    def claimed_bound(self) -> int:
        return self.max_aug_indegree + 1

    @property
    def monomial(self) -> tuple[int, ...]:
        """Exponent vector: augmented in-degrees."""
        return tuple(self.augmented.in_degrees())

    def problems(self) -> list[str]:
        errs = []
        if self.max_aug_indegree > 4:
            errs.append(f"max augmented in-degree {self.max_aug_indegree} > 4")
        if self.eulerian is not None and self.eulerian.nonempty:
            errs.append(f"{self.eulerian.nonempty} nonempty Eulerian structures")
        o = self.graph.outer_face
        a = self.augmented
        outer_arcs = [(a.tail(edge_key(o[i], o[(i + 1) % 3])), a.heads[edge_key(o[i], o[(i + 1) % 3])]) for i in range(3)]
        if find_directed_cycle([(t, h, 1) for t, h in outer_arcs]):
            errs.append("outer face is a directed cycle")
        for e in self.graph.interior_edges:
            if a.heads[e] in self.graph.exterior:
                errs.append(f"interior edge {e} heads into an exterior vertex")
        return errs


def build_certificate(
    t: PlaneGraph,
    count: bool = True,
    cap: int | None = DEFAULT_EULERIAN_CAP,
) -> ATCertificate:
    """Orient ``t`` by the peeling procedure and double its Schnyder tree.

    Eulerian structures are counted only when ``count`` is set and the
    edge count is within ``cap``.
    """
    require_triangulation(t)
    res: ProcedureResult = thomassen_procedure_on_triangulation(t)
    realizer = realizer_from_orientation(res.internal_orientation())
    doubled = res.doubled_edges()
    red = sorted(edge_key(x, y) for x, y in realizer.color_class(RED))
    if doubled != red:
        raise CertificateError("doubled edges are not the red Schnyder tree")
    aug = res.augmented()
    cert = ATCertificate(
        graph=t,
        augmented=aug,
        colors=dict(realizer.colors),
        doubled_tree=doubled,
        max_aug_indegree=max_augmented_indegree(aug),
    )
    if count and (cap is None or len(aug.edges) <= cap):
        cert.eulerian = count_eulerian_structures(aug, cap=cap)
        if cert.eulerian.nonempty:
            cert.witness = next(iter_eulerian_structures(aug, cap=cap), None)
    return cert


def degeneracy_order(n: int, edges: list[Edge]) -> tuple[int, list[int]]:
    """Repeated minimum-degree removal with a bucket queue (ties: smallest id).

    Returns the degeneracy and the removal order.
    """
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    deg = [len(a) for a in adj]
    buckets: list[set[int]] = [set() for _ in range(max(deg, default=0) + 1)]
    for v in range(n):
        buckets[deg[v]].add(v)
    removed = [False] * n
    order = []
    k = 0
    d = 0
    for _ in range(n):
        d = max(0, d - 1)
        while not buckets[d]:
            d += 1
        v = min(buckets[d])
        buckets[d].remove(v)
        removed[v] = True
        order.append(v)
        k = max(k, d)
        for w in adj[v]:
            if not removed[w]:
                buckets[deg[w]].remove(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
    return k, order


def is_acyclic(n: int, arcs: list[tuple[int, int]]) -> bool:
    ts: TopologicalSorter = TopologicalSorter({v: set() for v in range(n)})
    for t, h in arcs:
        ts.add(h, t)
    try:
        ts.prepare()
    except CycleError:
        return False
    return True


@dataclass
class ForestDecomposition:
    graph: PlaneGraph
    forest: list[Edge]
    arcs: list[tuple[int, int]]
    forest_color: int = BLUE
    realizer: Realizer | None = field(default=None, repr=False)

    def max_indegree(self) -> int:
        deg = [0] * self.graph.n
        for _, h in self.arcs:
            deg[h] += 1
        return max(deg, default=0)

    def problems(self) -> list[str]:
        errs = []
        rest = {edge_key(t, h) for t, h in self.arcs}
        if rest & set(self.forest) or rest | set(self.forest) != set(self.graph.edges):
            errs.append("forest and oriented remainder do not partition the edges")
        if not is_acyclic(self.graph.n, self.arcs):
            errs.append("orientation of t - F has a directed cycle")
        if self.max_indegree() > 2:
            errs.append(f"in-degree {self.max_indegree()} > 2")
        k, _ = degeneracy_order(self.graph.n, sorted(rest))
        if k > 2:
            errs.append(f"t - F is {k}-degenerate, not 2-degenerate")
        return errs


def forest_decomposition(t: PlaneGraph, forest_color: int | str = BLUE) -> ForestDecomposition:
    """Split ``t`` into one Schnyder tree and an acyclic in-degree-2 remainder."""
    from .schnyder import color_index

    require_triangulation(t)
    c = color_index(forest_color)
    res = thomassen_procedure_on_triangulation(t)
    r = realizer_from_orientation(res.internal_orientation())
    forest = sorted(edge_key(x, y) for x, y in r.color_class(c))
    arcs = [a for cc in range(3) if cc != c for a in r.color_class(cc)]
    o0, o1, o2 = t.outer_face
    arcs += [(o0, o1), (o0, o2), (o1, o2)]
    dec = ForestDecomposition(t, forest, sorted(arcs), c, r)
    errs = dec.problems()
    if errs:
        raise CertificateError("; ".join(errs))
    return dec


__all__ = [
    "ATCertificate",
    "COLORS",
    "CertificateError",
    "EulerianCount",
    "ForestDecomposition",
    "GREEN",
    "build_certificate",
    "count_eulerian_brute",
    "count_eulerian_structures",
    "degeneracy_order",
    "find_directed_cycle",
    "forest_decomposition",
    "is_acyclic",
    "iter_eulerian_structures",
    "max_augmented_indegree",
]
