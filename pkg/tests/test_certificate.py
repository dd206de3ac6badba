import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bitmask_eulerian, small_triangulations
from schnyder_at.augmented import AugmentedOrientation
from schnyder_at.certificate import (
    build_certificate,
    count_eulerian_brute,
    count_eulerian_structures,
    degeneracy_order,
    find_directed_cycle,
    forest_decomposition,
    is_acyclic,
    iter_eulerian_structures,
)
from schnyder_at.planar import edge_key
from schnyder_at.testkit import CapExceeded, GeneratorConfig, grid, stacked_triangulation, suite


def cycle_orientation(k, strengths=None):
    edges = [edge_key(i, (i + 1) % k) for i in range(k)]
    heads = {edge_key(i, (i + 1) % k): (i + 1) % k for i in range(k)}
    return AugmentedOrientation(k, edges, heads, strengths or {e: 1 for e in edges})


def test_directed_triangle_counts():
    a = cycle_orientation(3)
    c = count_eulerian_structures(a)
    assert (c.even, c.odd, c.nonempty, c.difference) == (1, 1, 1, 0)


def test_triangle_with_doubled_edge_has_no_structure():
    a = cycle_orientation(3, {(0, 1): 2, (1, 2): 1, (0, 2): 1})
    c = count_eulerian_structures(a)
    assert (c.even, c.odd) == (1, 0)
    assert list(iter_eulerian_structures(a)) == []


def test_directed_square_is_even():
    c = count_eulerian_structures(cycle_orientation(4))
    assert (c.even, c.odd, c.nonempty) == (2, 0, 1)


def test_without_empty_structure():
    c = count_eulerian_structures(cycle_orientation(4), includes_empty=False)
    assert (c.even, c.odd, c.nonempty) == (1, 0, 1)
    assert c.as_dict() == {"even": 1, "odd": 0, "includes_empty": False}


def test_cap_refused():
    t = stacked_triangulation(GeneratorConfig(12, 0))
    cert = build_certificate(t, count=False)
    with pytest.raises(CapExceeded) as info:
        count_eulerian_structures(cert.augmented, cap=20)
    assert info.value.size == 30 and info.value.cap == 20
    with pytest.raises(CapExceeded):
        next(iter_eulerian_structures(cert.augmented, cap=20))


def random_augmented(n, edges, seed):
    rng = random.Random(seed)
    heads = {e: e[rng.randrange(2)] for e in edges}
    return AugmentedOrientation(n, edges, heads, {e: rng.choice((1, 1, 2)) for e in edges})


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(4, 8))
def test_dp_dfs_bitmask_agree(seed, n):
    t = stacked_triangulation(GeneratorConfig(n, seed))
    edges = list(t.edges)[:16]
    a = random_augmented(t.n, edges, seed)
    dp = count_eulerian_structures(a)
    dfs = count_eulerian_brute(a)
    assert (dp.even, dp.odd) == (dfs.even, dfs.odd) == bitmask_eulerian(t.n, a.arcs())
    for s in iter_eulerian_structures(a):
        # balanced nonempty sets always contain a directed cycle
        assert find_directed_cycle(s) is not None


def test_find_directed_cycle():
    assert find_directed_cycle([(0, 1, 1), (1, 2, 1)]) is None
    cyc = find_directed_cycle([(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 2)])
    assert sorted(cyc) == [0, 1, 2]


def test_k4_certificate(K4):
    cert = build_certificate(K4)
    assert cert.max_aug_indegree == 4 and cert.claimed_bound == 5
    assert (cert.eulerian.even, cert.eulerian.odd) == (1, 0)
    assert cert.witness is None and cert.problems() == []
    assert sum(cert.monomial) == 6 + len(cert.doubled_tree)


def test_octahedron_certificate(octa):
    cert = build_certificate(octa)
    assert cert.max_aug_indegree <= 4
    assert cert.eulerian.nonempty == 0
    assert len(cert.doubled_tree) == octa.n - 3


def test_certificates_on_small_suite():
    for name, t in suite(9, 1):
        cert = build_certificate(t, count=len(t.edges) <= 21)
        assert cert.problems() == [], name


def test_problems_reports_tampering(K4):
    cert = build_certificate(K4)
    (e,) = cert.doubled_tree
    strengths = dict(cert.augmented.strengths)
    strengths[e] = 3
    cert.augmented = AugmentedOrientation(K4.n, cert.augmented.edges, cert.augmented.heads, strengths)
    cert.max_aug_indegree = 5
    cert.eulerian = count_eulerian_structures(cert.augmented)
    assert any("> 4" in p for p in cert.problems())


def test_degeneracy():
    assert degeneracy_order(3, [(0, 1), (1, 2), (0, 2)])[0] == 2
    k4 = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    assert degeneracy_order(4, k4)[0] == 3
    assert degeneracy_order(5, [(0, 1), (1, 2), (2, 3), (3, 4)])[0] == 1
    g = grid(3, 3)
    assert degeneracy_order(g.n, list(g.edges))[0] == 2
    for _, t in small_triangulations(9, 2):
        k, order = degeneracy_order(t.n, list(t.edges))
        assert sorted(order) == list(range(t.n))
        assert k <= 5


def test_is_acyclic():
    assert is_acyclic(3, [(0, 1), (1, 2)])
    assert not is_acyclic(3, [(0, 1), (1, 2), (2, 0)])


def test_forest_decomposition_k3_k4(K3, K4):
    d3 = forest_decomposition(K3)
    assert d3.forest == [] and d3.problems() == []
    d4 = forest_decomposition(K4)
    assert len(d4.forest) == 1 and d4.max_indegree() == 2


@pytest.mark.parametrize("color", ["red", "green", "blue"])
def test_forest_decomposition_any_color(color):
    for name, t in suite(10, 1):
        dec = forest_decomposition(t, color)
        assert dec.problems() == [], name
        assert len(dec.forest) == t.n - 3


def test_forest_decomposition_stacked_10():
    t = stacked_triangulation(GeneratorConfig(10, 42))
    dec = forest_decomposition(t)
    assert dec.problems() == []
    k, _ = degeneracy_order(t.n, [edge_key(a, b) for a, b in dec.arcs])
    assert k <= 2
