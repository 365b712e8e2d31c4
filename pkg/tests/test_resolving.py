import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kresolve.resolving import (
    brute_force_k_metric_dimension,
    forced_vertices,
    greedy_k_resolving,
    is_k_resolving,
    k_metric_dimension_exact,
    max_k,
    table_for,
)
from oracles import (
    all_k_resolving_sets,
    complete,
    cycle,
    min_k_resolving_size,
    path,
    random_connected,
    resolver_sets,
    star,
)

# exhaustive-subset minima per k, computed with tests/oracles.py
C6_DIMENSIONS = {1: 2, 2: 3, 3: 5, 4: 6}


def test_path_endpoints_only():
    t = table_for(path(3))
    assert t.resolvers_of(0, 2) == {0, 2}


def test_complete_graph_pairs():
    t = table_for(complete(3))
    for u, v in [(0, 1), (0, 2), (1, 2)]:
        assert t.resolvers_of(u, v) == {u, v}


def test_k3_instance_a_pairs_not_resolved_by_legs_or_roots(k3_instance, k3_table):
    g = k3_instance.graph
    blocked = set(g.ids(k3_instance.leg_set)) | set(g.ids(k3_instance.roots))
    res = k3_table.resolvers_of(g.vid("a:0"), g.vid("a:1"))
    assert not res & blocked


def test_pair_index_matches_enumeration():
    t = table_for(random_connected(7, 3))
    for p, (u, v) in enumerate(t.pairs):
        assert t.pair_index(u, v) == t.pair_index(v, u) == p


def test_full_set_is_kappa_resolving():
    t = table_for(cycle(6))
    kappa = max_k(t)
    assert is_k_resolving(t, range(6), kappa).valid
    cert = is_k_resolving(t, range(6), kappa + 1)
    assert not cert.valid
    assert cert.failing_count == kappa


def test_empty_set_invalid():
    t = table_for(path(2))
    cert = is_k_resolving(t, [], 1)
    assert not cert.valid
    assert cert.failing_pair == (0, 1)
    assert cert.failing_count == 0


def test_k_must_be_positive():
    t = table_for(path(2))
    with pytest.raises(ValueError):
        is_k_resolving(t, [0], 0)
    with pytest.raises(ValueError):
        k_metric_dimension_exact(t, 0)


def test_k3_instance_witness_is_3_resolving(k3_instance, k3_table):
    g = k3_instance.graph
    R = set(k3_instance.leg_set) | {"a:0", "b:0", "c:0"} | {
        f"s:{j}" for j in (1, 2, 6, 7, 8, 9, 11, 12)
    }
    assert len(R) == 35
    assert is_k_resolving(k3_table, g.ids(R), 3).valid


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_max_k_complete(n):
    assert max_k(table_for(complete(n))) == 2


def test_max_k_two_vertex_path():
    assert max_k(table_for(path(2))) == 2


def test_max_k_c6():
    res = resolver_sets(cycle(6))
    assert max_k(table_for(cycle(6))) == min(len(s) for s in res.values()) == 4


def test_forced_k3_instance_contains_legs(k3_instance, k3_table):
    forced = forced_vertices(k3_table, 3)
    assert set(k3_instance.graph.names(forced)) >= k3_instance.leg_set


def test_forced_k3_complete():
    assert forced_vertices(table_for(complete(3)), 2) == {0, 1, 2}


def test_forced_p3_none():
    assert forced_vertices(table_for(path(3)), 1) == frozenset()


def test_forced_infeasible():
    assert forced_vertices(table_for(complete(3)), 3) is None


@pytest.mark.parametrize("n", range(2, 9))
def test_exact_path_dimension_one(n):
    r = k_metric_dimension_exact(table_for(path(n)), 1)
    assert r.status == "optimal"
    assert r.size == 1


def test_exact_c4():
    assert k_metric_dimension_exact(table_for(cycle(4)), 1).size == 2


def test_exact_k4_all_forced():
    t = table_for(complete(4))
    assert forced_vertices(t, 2) == {0, 1, 2, 3}
    assert is_k_resolving(t, range(4), 2).valid
    assert k_metric_dimension_exact(t, 2).vertices == (0, 1, 2, 3)


@pytest.mark.parametrize("k, size", sorted(C6_DIMENSIONS.items()))
def test_exact_c6(k, size):
    assert min_k_resolving_size(cycle(6), k) == size
    r = k_metric_dimension_exact(table_for(cycle(6)), k)
    assert r.size == size


def test_exact_infeasible():
    r = k_metric_dimension_exact(table_for(cycle(6)), 5)
    assert r.status == "infeasible"
    assert r.vertices is None


def test_exact_budget_returns_incumbent(k3_table):
    r = k_metric_dimension_exact(k3_table, 3, node_budget=1)
    assert r.status == "incumbent"
    assert is_k_resolving(k3_table, r.vertices, 3).valid


def test_exact_k3_instance_optimum(k3_table):
    r = k_metric_dimension_exact(k3_table, 3)
    assert r.status == "optimal"
    assert r.size == 35
    assert is_k_resolving(k3_table, r.vertices, 3).valid


def test_greedy_small_cases():
    assert len(greedy_k_resolving(table_for(path(2)), 1)) == 1
    assert greedy_k_resolving(table_for(complete(3)), 2) == [0, 1, 2]
    assert greedy_k_resolving(table_for(complete(3)), 3) is None


def test_greedy_k3_instance_valid(k3_table):
    R = greedy_k_resolving(k3_table, 3)
    assert is_k_resolving(k3_table, R, 3).valid
    assert len(R) >= 35


def test_exact_deterministic():
    t = table_for(random_connected(8, 11))
    assert k_metric_dimension_exact(t, 1) == k_metric_dimension_exact(t, 1)


FAMILIES = (
    [path(n) for n in range(2, 8)]
    + [cycle(n) for n in range(3, 8)]
    + [star(n) for n in range(1, 6)]
    + [complete(n) for n in range(2, 6)]
)


@pytest.mark.parametrize("g", FAMILIES, ids=lambda g: f"{g.labels[0]}-{g.vertex_count}")
def test_exact_matches_enumeration_on_families(g):
    t = table_for(g)
    for k in range(1, max_k(t) + 1):
        r = k_metric_dimension_exact(t, k)
        assert r.size == min_k_resolving_size(g, k)
        assert is_k_resolving(t, r.vertices, k).valid


graphs = st.builds(random_connected, st.integers(2, 9), st.integers(0, 2**32 - 1), st.floats(0, 1))


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_exact_vs_brute_force_up_to_nine(g):
    t = table_for(g)
    for k in range(1, max_k(t) + 1):
        r = k_metric_dimension_exact(t, k)
        assert r.status == "optimal"
        assert r.size == len(brute_force_k_metric_dimension(t, k))
        assert r.size <= len(greedy_k_resolving(t, k))


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_resolver_table_invariants(g):
    t = table_for(g)
    ref = resolver_sets(g)
    for u, v in t.pairs:
        res = t.resolvers_of(u, v)
        assert {u, v} <= res
        assert res == t.resolvers_of(v, u) == ref[(u, v)]


@settings(max_examples=30, deadline=None)
@given(graphs, st.data())
def test_monotonicity(g, data):
    t = table_for(g)
    kappa = max_k(t)
    k = data.draw(st.integers(1, kappa))
    R = set(k_metric_dimension_exact(t, k).vertices)
    for k2 in range(1, k + 1):
        assert is_k_resolving(t, R, k2).valid
    extra = data.draw(st.sets(st.integers(0, g.vertex_count - 1)))
    assert is_k_resolving(t, R | extra, k).valid


@settings(max_examples=25, deadline=None)
@given(st.builds(random_connected, st.integers(2, 7), st.integers(0, 2**32 - 1), st.floats(0, 1)))
def test_forced_subset_of_every_solution(g):
    t = table_for(g)
    for k in range(1, max_k(t) + 1):
        forced = forced_vertices(t, k)
        for R in all_k_resolving_sets(g, k):
            assert forced <= R
