import random
from fractions import Fraction

import pytest
from conftest import brute_triangles, corpus, load, random_labels
from hypothesis import given, settings
from hypothesis import strategies as st

from trisample.exact import (
    brute_force_triangles,
    exact_avg_degree,
    exact_triangles,
    forward_degrees,
    min_endpoint_sum,
    weighted_light_sum,
)
from trisample.generators import complete_graph, cycle, empty_graph, erdos_renyi, paw
from trisample.graph import QueryGraph
from trisample.labels import Label


def test_k3():
    o = exact_triangles(complete_graph(3))
    assert o.t == 1
    assert set(o.t_e.values()) == {1}
    assert o.t_v == [2, 2, 2]


def test_k4():
    o = exact_triangles(complete_graph(4))
    assert o.t == 4
    assert set(o.t_e.values()) == {2}
    assert o.t_v == [6, 6, 6, 6]


def test_paw():
    o = exact_triangles(paw())
    assert o.t == 1
    assert o.edge_count(3, 0) == 0
    assert o.t_v == [2, 2, 2, 0]
    assert o.triangles() == [(0, 1, 2)]


def test_brute_force_small_cases():
    assert brute_force_triangles(complete_graph(4)) == 4
    assert brute_force_triangles(cycle(5)) == 0


def test_brute_force_fixture_value():
    # recorded from the brute-force enumeration itself
    g = load("er_100_p10_seed42.txt")
    assert brute_force_triangles(g) == 164
    assert exact_triangles(g).t == 164


def test_brute_force_refuses_large_graphs():
    with pytest.raises(ValueError):
        brute_force_triangles(empty_graph(2001))


@pytest.mark.parametrize("name, g", list(corpus().items()))
def test_count_identities(name, g):
    o = exact_triangles(g)
    assert sum(o.t_e.values()) == 3 * o.t
    assert sum(o.t_v) == 6 * o.t
    assert len(o.triangles()) == o.t
    for v in range(g.n):
        assert o.t_v[v] == 2 * o.vertex_triangles(v)


@pytest.mark.parametrize("name, g", [(k, g) for k, g in corpus().items() if g.n <= 120])
def test_triangle_lists_match_brute_force(name, g):
    assert sorted(exact_triangles(g).triangles()) == brute_triangles(g)


def test_weighted_light_sum_k4():
    g = complete_graph(4)
    o = exact_triangles(g)
    light = {v: Label.LIGHT for v in range(4)}
    assert weighted_light_sum(g, o, light) == 4
    assert weighted_light_sum(g, o, {**light, 0: Label.HEAVY}) == 4
    assert weighted_light_sum(g, o, {v: Label.HEAVY for v in range(4)}) == 0


def test_weighted_light_sum_is_exact_rational():
    g = paw()
    labels = {0: Label.LIGHT, 1: Label.HEAVY, 2: Label.HEAVY, 3: Label.LIGHT}
    # one light vertex on the triangle, two incident edges at weight 1/2
    assert weighted_light_sum(g, exact_triangles(g), labels) == Fraction(1)


def _all_heavy(triangles, labels):
    return sum(all(labels[v] is Label.HEAVY for v in tri) for tri in triangles)


@pytest.mark.parametrize("name, g", list(corpus().items()))
def test_light_sum_identity_random_labelings(name, g):
    o = exact_triangles(g)
    tris = brute_triangles(g) if g.n <= 120 else o.triangles()
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(5):
        labels = random_labels(g.n, rng)
        assert weighted_light_sum(g, o, labels) == o.t - _all_heavy(tris, labels)


def test_light_sum_identity_adversarial_labelings():
    # every labeling of K5, and labelings that make exactly the triangle vertices heavy
    g = complete_graph(5)
    o = exact_triangles(g)
    tris = brute_triangles(g)
    for mask in range(32):
        labels = {v: Label.HEAVY if mask >> v & 1 else Label.LIGHT for v in range(5)}
        assert weighted_light_sum(g, o, labels) == o.t - _all_heavy(tris, labels)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 18), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_light_sum_identity_property(n, p, seed):
    g = erdos_renyi(n, p, seed)
    o = exact_triangles(g)
    tris = brute_triangles(g)
    labels = random_labels(n, random.Random(seed))
    assert weighted_light_sum(g, o, labels) == o.t - _all_heavy(tris, labels)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.floats(0.0, 1.0), st.integers(0, 10**6))
def test_oracles_agree_property(n, p, seed):
    g = erdos_renyi(n, p, seed)
    assert exact_triangles(g).t == brute_force_triangles(g) == len(brute_triangles(g))


def test_min_endpoint_sum_and_avg_degree():
    assert min_endpoint_sum(paw()) == 7
    assert exact_avg_degree(paw()) == 2
    assert min_endpoint_sum(complete_graph(4)) == 18
    assert exact_avg_degree(complete_graph(4)) == 3


def test_er_fixture_values_by_direct_summation():
    g = load("er_100_p10_seed42.txt")
    deg = {}
    for u, v in g.edges():
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    assert min_endpoint_sum(g) == sum(min(deg[u], deg[v]) for u, v in g.edges()) == 4382
    assert exact_avg_degree(g) == Fraction(2 * 488, 100)


def test_avg_degree_of_empty_vertex_set():
    with pytest.raises(ValueError):
        exact_avg_degree(QueryGraph(0, []))


@pytest.mark.parametrize("name, g", list(corpus().items()))
def test_min_endpoint_sum_bound(name, g):
    assert min_endpoint_sum(g) <= 3 * g.m**1.5


@pytest.mark.parametrize("name, g", list(corpus().items()))
def test_forward_degrees_sum_to_m(name, g):
    assert sum(forward_degrees(g)) == g.m


def test_oracles_charge_nothing():
    g = load("er_40_p20_seed3.txt")
    exact_triangles(g)
    brute_force_triangles(g)
    min_endpoint_sum(g)
    assert g.ledger.total() == 0
