"""Exact sparse polynomials and the Alon-Tarsi polynomial oracle.

Sign convention: every edge ``{i, j}`` with ``i < j`` contributes the
factor ``x_i^D - x_j^D``.  alpha and AT do not depend on it; raw
coefficients do.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .augmented import AugmentedOrientation
from .planar import Edge, edge_key
from .testkit import CapExceeded

DEFAULT_EXPAND_CAP = 20

Monomial = tuple[int, ...]


class SparsePolynomial:
    """Integer polynomial in ``nvars`` variables, ``{exponent tuple: coefficient}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise ValueError(f"monomial {m} has wrong arity")
            if c:
                self.terms[tuple(m)] = self.terms.get(tuple(m), 0) + c
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def constant(cls, nvars: int, c: int = 1) -> "SparsePolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def binomial(cls, nvars: int, i: int, j: int, power: int = 1) -> "SparsePolynomial":
        """``x_i^power - x_j^power``."""
        a = [0] * nvars
        b = [0] * nvars
        a[i] = power
        b[j] = power
        return cls(nvars, {tuple(a): 1, tuple(b): -1})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __mul__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        p = SparsePolynomial(self.nvars)
        p.terms = {m: c for m, c in out.items() if c}
        return p

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(m) for m in self.terms)

    def coefficient(self, m: Sequence[int]) -> int:
        return self.terms.get(tuple(m), 0)

    def top_terms(self) -> dict[Monomial, int]:
        d = self.degree()
        return {m: c for m, c in self.terms.items() if sum(m) == d}

    def to_text(self) -> str:
        """Canonical text: terms by exponent vector, lexicographically descending."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            vars_ = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e]
            parts.append(" ".join([f"{c:+d}", *vars_]))
        return " ".join(parts)

    @classmethod
    def from_text(cls, nvars: int, text: str) -> "SparsePolynomial":
        text = text.strip()
        if text == "0":
            return cls(nvars)
        terms: dict[Monomial, int] = {}
        current: list[int] | None = None
        coef = 0
        for tok in text.split():
            if tok[0] in "+-" and tok[1:].isdigit():
                if current is not None:
                    terms[tuple(current)] = terms.get(tuple(current), 0) + coef
                current = [0] * nvars
                coef = int(tok)
            else:
                if current is None:
                    raise ValueError(f"malformed polynomial text near {tok!r}")
                i, e = _parse_var(tok)
                current[i] += e
        if current is not None:
            terms[tuple(current)] = terms.get(tuple(current), 0) + coef
        return cls(nvars, terms)

    def __repr__(self) -> str:
        return f"SparsePolynomial({self.nvars}, {self.to_text()!r})"


_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _parse_var(tok: str) -> tuple[int, int]:
    m = _VAR.match(tok)
    if not m:
        raise ValueError(f"bad variable token {tok!r}")
    return int(m.group(1)), int(m.group(2) or 1)


def parse_monomial(text: str, nvars: int) -> Monomial:
    """Parse ``"x0^2*x1"`` (``1`` for the empty monomial)."""
    exps = [0] * nvars
    text = text.strip()
    if text in ("", "1"):
        return tuple(exps)
    for tok in text.split("*"):
        i, e = _parse_var(tok.strip())
        if i >= nvars:
            raise ValueError(f"variable x{i} out of range for {nvars} variables")
        exps[i] += e
    return tuple(exps)


def format_monomial(m: Sequence[int]) -> str:
    parts = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e]
    return "*".join(parts) or "1"


def _normalise(edges: Iterable[Sequence[int]]) -> list[Edge]:
    out = sorted({edge_key(int(u), int(v)) for u, v in edges})
    if any(u == v for u, v in out):
        raise ValueError("self-loops are not allowed")
    return out


def _product(nvars: int, factors: Iterable[SparsePolynomial]) -> SparsePolynomial:
    p = SparsePolynomial.constant(nvars)
    for f in factors:
        p = p * f
    return p


def _cap(edges: Sequence[Edge], cap: int | None) -> None:
    cap = DEFAULT_EXPAND_CAP if cap is None else cap
    if len(edges) > cap:
        raise CapExceeded("polynomial expansion edges", len(edges), cap)


def graph_polynomial(n: int, edges: Iterable[Sequence[int]], cap: int | None = DEFAULT_EXPAND_CAP) -> SparsePolynomial:
    """Expand the product of ``x_i - x_j`` over edges ``i < j``."""
    es = _normalise(edges)
    _cap(es, cap)
    return _product(n, (SparsePolynomial.binomial(n, i, j) for i, j in es))


def weighted_polynomial(
    n: int, strengths: Mapping[Edge, int], cap: int | None = DEFAULT_EXPAND_CAP
) -> SparsePolynomial:
    es = sorted(strengths)
    _cap(es, cap)
    return _product(n, (SparsePolynomial.binomial(n, i, j, strengths[(i, j)]) for i, j in es))


def augmented_polynomial(a: AugmentedOrientation, cap: int | None = DEFAULT_EXPAND_CAP) -> SparsePolynomial:
    """Product of ``x_i^D - x_j^D``; the orientation of ``a`` is ignored."""
    return weighted_polynomial(a.n, {e: a.strengths[e] for e in a.edges}, cap)


def cofactor_polynomial(n: int, strengths: Mapping[Edge, int]) -> SparsePolynomial:
    """Product of ``sum_k x_i^(D-1-k) x_j^k`` so that f_G times it is W."""
    factors = []
    for (i, j), d in sorted(strengths.items()):
        terms: dict[Monomial, int] = {}
        for k in range(d):
            m = [0] * n
            m[i] += d - 1 - k
            m[j] += k
            terms[tuple(m)] = terms.get(tuple(m), 0) + 1
        factors.append(SparsePolynomial(n, terms))
    return _product(n, factors)


def alpha(p: SparsePolynomial) -> int:
    """Smallest max-exponent over top-degree monomials of ``p``."""
    if p.is_zero():
        raise ValueError("alpha of the zero polynomial is undefined")
    return min(max(m, default=0) for m in p.top_terms())


def at_number_exact(n: int, edges: Iterable[Sequence[int]], cap: int | None = DEFAULT_EXPAND_CAP) -> int:
    es = _normalise(edges)
    if not es:
        return 1
    return alpha(graph_polynomial(n, es, cap)) + 1


def orientation_sum(
    n: int, strengths: Mapping[Edge, int], cap: int | None = DEFAULT_EXPAND_CAP
) -> dict[Monomial, int]:
    """Coefficients obtained by summing signed orientation monomials.

    Each orientation picks ``+x_i^D`` when edge ``{i<j}`` points to ``i``
    and ``-x_j^D`` otherwise; the exponent of ``x_v`` is then the
    augmented in-degree of ``v``.
    """
    es = sorted(strengths)
    _cap(es, cap)
    out: dict[Monomial, int] = {}
    for choice in itertools.product((0, 1), repeat=len(es)):
        deg = [0] * n
        sign = 1
        for (i, j), to_j in zip(es, choice):
            d = strengths[(i, j)]
            if to_j:
                deg[j] += d
                sign = -sign
            else:
                deg[i] += d
        m = tuple(deg)
        out[m] = out.get(m, 0) + sign
    return {m: c for m, c in out.items() if c}


def coefficient_via_orientations(
    n: int,
    strengths: Mapping[Edge, int],
    monomial: Sequence[int],
    cap: int | None = DEFAULT_EXPAND_CAP,
) -> int:
    """Coefficient of ``monomial`` in W, by enumerating orientations only."""
    target = tuple(monomial)
    es = sorted(strengths)
    _cap(es, cap)
    total = 0
    for choice in itertools.product((0, 1), repeat=len(es)):
        deg = [0] * n
        flips = 0
        for (i, j), to_j in zip(es, choice):
            if to_j:
                deg[j] += strengths[(i, j)]
                flips += 1
            else:
                deg[i] += strengths[(i, j)]
        if tuple(deg) == target:
            total += -1 if flips % 2 else 1
    return total


def orientation_sign(a: AugmentedOrientation) -> int:
    """Sign of the monomial that orientation ``a`` selects."""
    flips = sum(1 for (i, j) in a.edges if a.heads[(i, j)] == j)
    return -1 if flips % 2 else 1


@dataclass
class MonomialReport:
    monomial: Monomial
    coefficient: int
    degree: int
    w_degree: int
    max_exponent: int
    alpha_w: int
    alpha_f: int
    divisibility: bool
    bound: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "monomial": format_monomial(self.monomial),
            "coefficient": self.coefficient,
            "degree": self.degree,
            "w_degree": self.w_degree,
            "max_exponent": self.max_exponent,
            "alpha_W": self.alpha_w,
            "alpha_f": self.alpha_f,
            "W_equals_f_times_P": self.divisibility,
            "at_bound": self.bound,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def certify_monomial(cert, cap: int | None = DEFAULT_EXPAND_CAP) -> MonomialReport:
    """Check a certificate algebraically.

    (a) its monomial has coefficient +-1 in W, (b) it is top-degree with
    every exponent at most 4, (c) W = f_G * P exactly, (d) hence AT <= 5.
    """
    a: AugmentedOrientation = cert.augmented
    strengths = {e: a.strengths[e] for e in a.edges}
    w = augmented_polynomial(a, cap)
    f = graph_polynomial(a.n, a.edges, cap)
    p = cofactor_polynomial(a.n, strengths)
    m = tuple(a.in_degrees())
    coeff = w.coefficient(m)
    rep = MonomialReport(
        monomial=m,
        coefficient=coeff,
        degree=sum(m),
        w_degree=w.degree(),
        max_exponent=max(m),
        alpha_w=alpha(w),
        alpha_f=alpha(f),
        divisibility=(f * p == w),
        bound=alpha(f) + 1,
    )
    if abs(coeff) != 1:
        rep.failures.append(f"coefficient of {format_monomial(m)} in W is {coeff}, expected +-1")
    if rep.degree != rep.w_degree:
        rep.failures.append(f"certificate monomial has degree {rep.degree}, W has degree {rep.w_degree}")
    if rep.max_exponent > 4:
        rep.failures.append(f"max exponent {rep.max_exponent} > 4")
    if not rep.divisibility:
        rep.failures.append("W != f_G * P")
    if rep.alpha_w > rep.max_exponent and abs(coeff) == 1:
        rep.failures.append("alpha(W) exceeds the certificate exponent")
    if rep.alpha_f > rep.alpha_w:
        rep.failures.append("alpha(f_G) > alpha(W)")
    if rep.bound > 5:
        rep.failures.append(f"AT = {rep.bound} > 5")
    return rep
