"""Orientations with edge strengths."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .planar import Edge, edge_key


@dataclass(frozen=True)
class AugmentedOrientation:
    """Every edge oriented (``heads``) and given a positive strength.

    Works over any simple graph on ``0..n-1``; ``edges`` are ``(u, v)``
    with ``u < v``.
    """

    n: int
    edges: tuple[Edge, ...]
    heads: Mapping[Edge, int]
    strengths: Mapping[Edge, int]

    def __post_init__(self) -> None:
        for e in self.edges:
            if e != edge_key(*e):
                raise ValueError(f"edge {e} not normalised")
            if self.heads.get(e) not in e:
                raise ValueError(f"edge {e} has no valid head")
            if self.strengths.get(e, 0) < 1:
                raise ValueError(f"edge {e} needs a positive strength")

    @classmethod
    def uniform(cls, n: int, heads: Mapping[Edge, int], strength: int = 1) -> "AugmentedOrientation":
        edges = tuple(sorted(heads))
        return cls(n, edges, dict(heads), {e: strength for e in edges})

    def tail(self, e: Edge) -> int:
        h = self.heads[e]
        return e[0] if h == e[1] else e[1]

    def arcs(self) -> list[tuple[int, int, int]]:
        """``(tail, head, strength)`` per edge, in edge order."""
        return [(self.tail(e), self.heads[e], self.strengths[e]) for e in self.edges]

    def in_degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            deg[self.heads[e]] += self.strengths[e]
        return deg

    def out_degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            deg[self.tail(e)] += self.strengths[e]
        return deg

    def with_heads(self, heads: Mapping[Edge, int]) -> "AugmentedOrientation":
        return AugmentedOrientation(self.n, self.edges, dict(heads), self.strengths)


def max_augmented_indegree(a: AugmentedOrientation) -> int:
    return max(a.in_degrees(), default=0)
