import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import EXAMPLE_A_EDGES, patterns
from netident.graph import NetworkPattern, PatternError, classify, in_neighbors, out_neighbors, random_pattern, reverse
from oracles import brute_classify


def summary(cl):
    return {"sources": set(cl.sources), "sinks": set(cl.sinks), "dources": dict(cl.dources), "dinks": dict(cl.dinks)}


def test_example_a_classes(example_a):
    cl = classify(example_a)
    assert cl.sources == {3, 4}
    assert cl.sinks == {2, 5}
    assert cl.internal == {1}
    assert cl.dources == {1: 2}
    assert cl.dinks == {}


def test_example_b_classes(example_b):
    cl = classify(example_b)
    assert cl.sources == {4}
    assert cl.sinks == {5}
    assert cl.dources == {1: 2}
    assert cl.dinks == {}


def test_chain_with_shortcut_is_dource_and_dink():
    cl = classify(NetworkPattern(3, [(1, 2), (2, 3), (1, 3)]))
    assert cl.dources == {2: 3}
    assert cl.dinks == {2: 1}


def test_single_edge():
    cl = classify(NetworkPattern(2, [(1, 2)]))
    assert (cl.sources, cl.sinks, cl.internal) == ({1}, {2}, frozenset())
    assert not cl.dources and not cl.dinks


def test_all_witnesses_listed_lowest_reported():
    # in-neighbors 1 and 2 of node 3 both feed 4 and 5
    p = NetworkPattern(5, [(1, 3), (2, 3), (3, 4), (3, 5), (1, 4), (2, 4), (1, 5), (2, 5)])
    cl = classify(p)
    assert cl.dource_witnesses[3] == (4, 5)
    assert cl.dources[3] == 4
    assert cl.dink_witnesses[3] == (1, 2)
    assert cl.dinks[3] == 1


def test_neighbors(example_a, example_b):
    assert in_neighbors(example_a, 1) == {3, 4}
    assert out_neighbors(example_a, 1) == {2, 5}
    assert in_neighbors(example_b, 3) == {2}
    assert out_neighbors(example_b, 3) == {1, 2}
    for s in classify(example_a).sources:
        assert in_neighbors(example_a, s) == frozenset()
    with pytest.raises(IndexError):
        in_neighbors(example_a, 6)
    with pytest.raises(IndexError):
        out_neighbors(example_a, 0)


def test_reverse_example_a(example_a):
    r = reverse(example_a)
    assert r.edges == {(1, 3), (1, 4), (2, 1), (2, 3), (2, 4), (5, 1)}
    cl = classify(r)
    assert cl.dinks == {1: 2}
    assert cl.dources == {}
    assert cl.sources == {2, 5}
    assert cl.sinks == {3, 4}


@pytest.mark.parametrize(
    "n, edges, msg",
    [
        (2, [(1, 1), (1, 2)], "self-loop"),
        (2, [(1, 2), (1, 2)], "duplicate"),
        (3, [(1, 2)], "isolated"),
        (2, [(1, 3)], "outside"),
        (0, [], "positive"),
    ],
)
def test_invalid_patterns(n, edges, msg):
    with pytest.raises(PatternError, match=msg):
        NetworkPattern(n, edges)


def test_pattern_equality_ignores_edge_order():
    assert NetworkPattern(5, EXAMPLE_A_EDGES) == NetworkPattern(5, reversed(EXAMPLE_A_EDGES))


def test_matches_brute_force_on_all_three_node_patterns():
    pairs = [(j, i) for j in range(1, 4) for i in range(1, 4) if i != j]
    checked = 0
    for mask in itertools.product((0, 1), repeat=len(pairs)):
        edges = [p for p, m in zip(pairs, mask) if m]
        try:
            p = NetworkPattern(3, edges)
        except PatternError:
            continue
        assert summary(classify(p)) == brute_classify(3, edges)
        checked += 1
    assert checked > 40


@given(patterns(max_n=12))
@settings(max_examples=200, deadline=None)
def test_matches_brute_force(p):
    assert summary(classify(p)) == brute_classify(p.n, p.edges)


@given(patterns(max_n=12))
@settings(max_examples=200, deadline=None)
def test_duality(p):
    cl, rc = classify(p), classify(reverse(p))
    assert rc.sources == cl.sinks and rc.sinks == cl.sources
    assert set(rc.dources) == set(cl.dinks) and set(rc.dinks) == set(cl.dources)
    assert rc.dource_witnesses == cl.dink_witnesses
    assert reverse(reverse(p)) == p


@given(patterns(max_n=12))
@settings(max_examples=200, deadline=None)
def test_partition_and_witnesses(p):
    cl = classify(p)
    assert len(cl.sources) + len(cl.sinks) + len(cl.internal) == p.n
    assert not cl.sources & cl.sinks
    assert set(cl.dources) <= cl.internal and set(cl.dinks) <= cl.internal
    for d, ws in cl.dource_witnesses.items():
        for o in ws:
            assert o in out_neighbors(p, d)
            assert all((i, o) in p.edges for i in in_neighbors(p, d))
    for d, ws in cl.dink_witnesses.items():
        for w in ws:
            assert w in in_neighbors(p, d)
            assert all((w, o) in p.edges for o in out_neighbors(p, d))
    assert classify(NetworkPattern(p.n, sorted(p.edges))) == cl


def test_random_pattern_has_no_isolated_nodes(rng):
    for _ in range(50):
        p = random_pattern(int(rng.integers(2, 11)), 0.2, rng)
        adj = p.adjacency()
        assert np.all(adj.any(axis=0) | adj.any(axis=1))
        assert not np.any(np.diag(adj))
