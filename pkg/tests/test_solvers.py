"""Polynomial deciders: same-internal transforms, two-internal, cograph."""

import random

import pytest

from treeflip import gen, oracle
from treeflip.graph import (
    Graph,
    GraphError,
    NotACographError,
    apply_flips,
    at_least,
    at_most,
)
from treeflip.solvers import (
    decide_cograph,
    decide_two_internal,
    pivot_vertices,
    transform_same_internal,
)
from util import label_components


def test_pivot_vertices():
    k4 = Graph.from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    assert pivot_vertices(k4) == [0, 1, 2, 3]
    p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert pivot_vertices(p4) == [1, 2]
    c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert pivot_vertices(c5) == []


def test_transform_same_internal_bounds_internal_sets():
    for seed in range(25):
        rng = random.Random(seed)
        g = gen.random_connected_graph(rng.randint(4, 8), seed, extra_edge_prob=0.5)
        t1 = gen.random_spanning_tree(g, seed * 2 + 10)
        t2 = gen.random_spanning_tree(g, seed * 3 + 11)
        allowed = t1.internal_nodes | t2.internal_nodes
        flips = transform_same_internal(g, t1, t2)
        cur = t1
        from treeflip.graph import apply_flip

        for f in flips:
            cur = apply_flip(g, cur, f)
            assert cur.internal_nodes <= allowed
        assert cur.edges == t2.edges


def sample_pairs(pool, rng, count=5):
    return [(rng.choice(pool), rng.choice(pool)) for _ in range(count)]


def test_two_internal_matches_oracle_small_sweep():
    cases = 0
    for seed in range(40):
        rng = random.Random(seed * 17 + 3)
        n = rng.randint(4, 7)
        g = gen.random_connected_graph(n, seed * 29 + 1, extra_edge_prob=0.6)
        pool = [
            t for t in oracle.enumerate_spanning_trees(g)
            if len(t.internal_nodes) <= 2
        ]
        if not pool:
            continue
        labels = label_components(pool)
        for t1, t2 in sample_pairs(pool, rng, 3):
            truth = labels[t1.key()] == labels[t2.key()]
            assert decide_two_internal(g, t1, t2).decision == truth
            cases += 1
    assert cases >= 60


def test_two_internal_witness_replays_under_bound():
    g = Graph.from_edges(5, [(0, i) for i in range(1, 5)] + [(1, 2), (3, 4)])
    pool = [
        t for t in oracle.enumerate_spanning_trees(g)
        if len(t.internal_nodes) <= 2
    ]
    cons = at_least(g.n - 2)
    for t1 in pool[:6]:
        for t2 in pool[-6:]:
            out = decide_two_internal(g, t1, t2)
            if out.decision and out.witness is not None:
                end = apply_flips(g, t1, out.witness, cons)
                assert end.edges == t2.edges


def test_cograph_matches_oracle_small_sweep():
    cases = 0
    for seed in range(30):
        rng = random.Random(seed * 41 + 7)
        n = rng.randint(4, 7)
        g, cotree = gen.random_connected_cograph(n, seed * 13 + 5)
        trees = oracle.enumerate_spanning_trees(g)
        for k_int in (1, 2, 3):
            cons = at_least(max(2, n - k_int))
            pool = [t for t in trees if cons.satisfied_by(t)]
            if not pool:
                continue
            labels = label_components(pool)
            for t1, t2 in sample_pairs(pool, rng, 2):
                truth = labels[t1.key()] == labels[t2.key()]
                out = decide_cograph(g, cotree, cons, t1, t2)
                assert out.decision == truth
                if out.decision and out.witness is not None:
                    end = apply_flips(g, t1, out.witness, cons)
                    assert end.edges == t2.edges
                cases += 1
    assert cases >= 100


def test_cograph_decider_input_errors():
    g, cotree = gen.random_connected_cograph(5, 2)
    t1 = gen.random_spanning_tree(g, 0)
    t2 = gen.random_spanning_tree(g, 1)
    with pytest.raises(GraphError):
        decide_cograph(g, cotree, at_most(3), t1, t2)
    p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    t = gen.random_spanning_tree(p4, 0)
    with pytest.raises(NotACographError):
        decide_cograph(p4, None, at_least(2), t, t)
    star_bound = at_least(g.n - 1)
    bad = next(
        (t for t in oracle.enumerate_spanning_trees(g) if t.leaf_count < g.n - 1),
        None,
    )
    if bad is not None:
        with pytest.raises(oracle.ConstraintViolatedByEndpoint):
            decide_cograph(g, cotree, star_bound, bad, bad)
