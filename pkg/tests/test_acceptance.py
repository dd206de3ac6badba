"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import random
import time

import pytest

from conftest import record_criterion
from schnyder_at.augmented import AugmentedOrientation
from schnyder_at.certificate import build_certificate, count_eulerian_structures, degeneracy_order, forest_decomposition
from schnyder_at.planar import edge_key
from schnyder_at.polynomial import (
    DEFAULT_EXPAND_CAP,
    at_number_exact,
    certify_monomial,
    coefficient_via_orientations,
    weighted_polynomial,
)
from schnyder_at.procedure import check_trace, thomassen_procedure_on_triangulation
from schnyder_at.schnyder import (
    RED,
    canonicalize_ccw,
    check_realizer,
    find_clockwise_triangle,
    realizer_from_orientation,
    region,
)
from schnyder_at.testkit import GeneratorConfig, enumerate_internal_3_orientations, k3, k4, stacked_triangulation, suite

pytestmark = pytest.mark.acceptance

SUITE = list(suite(12, 3))


def test_criterion_1_realizer_axioms():
    start = time.perf_counter()
    failures = []
    for seed in range(200):
        t = stacked_triangulation(GeneratorConfig(4 + seed % 9, seed))
        res = thomassen_procedure_on_triangulation(t)
        r = realizer_from_orientation(res.internal_orientation())
        errs = check_realizer(r)
        # spanning trees: each class reaches every interior vertex exactly once
        for c in range(3):
            if sorted(h for _, h in r.color_class(c)) != sorted(t.interior_vertices):
                errs.append(f"color {c} does not span the interior")
        if errs:
            failures.append((seed, errs))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    record_criterion(1, ok, f"200 stacked triangulations, {len(failures)} failures, {elapsed:.2f}s (limit 10s)")
    assert ok, failures[:3]


def test_criterion_2_ccw_uniqueness():
    start = time.perf_counter()
    checked, failures = 0, []
    for name, t in SUITE:
        if len(t.interior_edges) > 18:
            continue
        checked += 1
        orients = enumerate_internal_3_orientations(t)
        minimal = [o for o in orients if find_clockwise_triangle(o) is None]
        if len(minimal) != 1:
            failures.append((name, f"{len(minimal)} ccw orientations"))
            continue
        if any(canonicalize_ccw(o) != minimal[0] for o in orients):
            failures.append((name, "flip descent reached another orientation"))
    elapsed = time.perf_counter() - start
    names = {n for n, _ in SUITE}
    ok = not failures and elapsed < 60 and "octahedron" in names
    record_criterion(2, ok, f"{checked} instances, {len(failures)} failures, {elapsed:.2f}s (limit 60s)")
    assert ok, failures


def test_criterion_3_procedure_cross_check():
    failures = []
    for name, t in SUITE:
        res = thomassen_procedure_on_triangulation(t)
        o = res.internal_orientation()
        if canonicalize_ccw(o) != o:
            failures.append((name, "not flip-canonical"))
        r = realizer_from_orientation(o)
        if r.roots[RED] != t.outer_face[2]:
            failures.append((name, "red root is not the non-distinguished outer vertex"))
        if res.doubled_edges() != sorted(edge_key(*a) for a in r.color_class(RED)):
            failures.append((name, "doubled edges differ from the red tree"))
        errs = check_trace(t, res.trace)
        if errs:
            failures.append((name, errs))
    ok = not failures
    record_criterion(3, ok, f"{len(SUITE)} instances, {len(failures)} failures")
    assert ok, failures


def test_criterion_4_certificate_soundness():
    failures, timings = [], {}
    for name, t in SUITE:
        if len(t.edges) > 26:
            continue
        start = time.perf_counter()
        cert = build_certificate(t)
        elapsed = time.perf_counter() - start
        timings[name] = (len(t.edges), elapsed)
        if cert.max_aug_indegree > 4:
            failures.append((name, f"max in-degree {cert.max_aug_indegree}"))
        if (cert.eulerian.even, cert.eulerian.odd) != (1, 0):
            failures.append((name, cert.eulerian.as_dict()))
    octa_time = timings["octahedron"][1]
    e24 = [s for e, s in timings.values() if e == 24]
    slow = octa_time >= 1 or any(s >= 120 for s in e24)
    ok = not failures and not slow and bool(e24)
    record_criterion(
        4,
        ok,
        f"{len(timings)} instances, {len(failures)} failures, octahedron {octa_time:.3f}s (limit 1s), "
        f"slowest E=24 {max(e24):.2f}s (limit 120s)",
    )
    assert ok, failures


def test_criterion_5_polynomial_verification():
    failures, checked = [], 0
    for name, t in SUITE:
        if len(t.edges) > 18:
            continue
        checked += 1
        rep = certify_monomial(build_certificate(t))
        if not rep.passed or not rep.divisibility or abs(rep.coefficient) != 1 or rep.max_exponent > 4:
            failures.append((name, rep.failures))
        if rep.alpha_f > 4 or rep.bound > 5:
            failures.append((name, f"alpha(f_G)={rep.alpha_f}"))
    ok = not failures
    record_criterion(5, ok, f"{checked} instances with E <= 18, {len(failures)} failures")
    assert ok, failures


def test_criterion_6_exact_at_values():
    values = {
        "single edge": at_number_exact(2, [(0, 1)]),
        "K3": at_number_exact(3, k3().edges),
        "K4": at_number_exact(4, k4().edges),
    }
    expected = {"single edge": 2, "K3": 3, "K4": 4}
    over = []
    checked = 0
    for name, t in SUITE:
        if len(t.edges) > DEFAULT_EXPAND_CAP:
            continue
        checked += 1
        at = at_number_exact(t.n, t.edges)
        if at > 5:
            over.append((name, at))
    ok = values == expected and not over
    record_criterion(6, ok, f"{values}; {checked} expandable instances, {len(over)} above 5")
    assert ok, (values, over)


def test_criterion_7_forest_decomposition():
    failures = []
    for name, t in SUITE:
        dec = forest_decomposition(t)
        k, _ = degeneracy_order(t.n, sorted(edge_key(a, b) for a, b in dec.arcs))
        errs = dec.problems()
        if k > 2 or dec.max_indegree() > 2 or errs:
            failures.append((name, k, errs))
    ok = not failures
    record_criterion(7, ok, f"{len(SUITE)} instances, {len(failures)} failures")
    assert ok, failures


def _random_monomial(rng, n, degree):
    m = [0] * n
    for _ in range(degree):
        m[rng.randrange(n)] += 1
    return tuple(m)


def test_criterion_8_oracle_agreement():
    rng = random.Random(2024)
    failures, checked, monomials = [], 0, 0
    for name, t in SUITE:
        if len(t.edges) > 14:
            continue
        checked += 1
        strengths = dict(build_certificate(t, count=False).augmented.strengths)
        w = weighted_polynomial(t.n, strengths)
        support = sorted(w.terms)
        deg = w.degree()
        for i in range(50):
            # half from the support (nonzero coefficients), half uniform of top degree
            m = rng.choice(support) if i % 2 == 0 else _random_monomial(rng, t.n, deg)
            monomials += 1
            if coefficient_via_orientations(t.n, strengths, m) != w.coefficient(m):
                failures.append((name, m))
        for _ in range(20):
            heads = {e: e[rng.randrange(2)] for e in t.edges}
            a = AugmentedOrientation(t.n, t.edges, heads, strengths)
            c = count_eulerian_structures(a)
            if abs(w.coefficient(tuple(a.in_degrees()))) != abs(c.even - c.odd):
                failures.append((name, "CE-CO", heads))
    ok = not failures
    record_criterion(8, ok, f"{checked} instances, {monomials} monomials + {20 * checked} orientations, {len(failures)} mismatches")
    assert ok, failures[:5]


def test_criterion_9_region_law():
    failures, pairs = [], 0
    for name, t in SUITE:
        if t.n > 10:
            continue
        r = realizer_from_orientation(thomassen_procedure_on_triangulation(t).internal_orientation())
        for c in range(3):
            regs = {v: region(r, v, c) for v in t.interior_vertices}
            for v, rv in regs.items():
                for u, ru in regs.items():
                    if u == v or u not in rv.vertices:
                        continue
                    pairs += 1
                    if not rv.contains(ru):
                        failures.append((name, c, u, v))
    ok = not failures
    record_criterion(9, ok, f"{pairs} contained pairs checked, {len(failures)} violations")
    assert ok, failures[:5]
