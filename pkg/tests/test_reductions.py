"""Hardness-reduction constructions and the cover-to-flip compiler."""

import time
from collections import deque

import pytest

from treeflip import gen, oracle, reductions
from treeflip.graph import (
    Graph,
    GraphError,
    InvalidEmbedding,
    apply_flips,
    at_most,
)
from treeflip.reductions import (
    ContractViolation,
    NotACover,
    NotMinimumCover,
    NotTJAdjacent,
    WrongCoverSize,
    build_ds_to_st_instance,
    build_vc_to_st_instance,
    build_vc_to_st_planar,
    certify_gadget,
    cover_seq_to_flip_seq,
    cover_to_ham_path,
    dominating_to_tree,
    extract_cover,
    outerplanar_obstruction,
    planar_cover_tree,
)

EDGE = Graph.from_edges(2, [(0, 1)])
P3 = Graph.from_edges(3, [(0, 1), (1, 2)])
TRIANGLE = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def test_certify_gadget_patterns():
    certify_gadget.cache_clear()
    started = time.monotonic()
    cert = certify_gadget()
    assert time.monotonic() - started < 1.0
    pattern_a = cert["pattern_a"]
    pattern_b = cert["pattern_b"]
    # delta 4: both side paths, no cross edges
    assert len(pattern_a) == 10
    # delta 2: covered side's traversal is a Hamiltonian path of the gadget
    # whose two degree-1 ends are the covered side's boundary vertices
    for side, ends in ((1, {0, 5}), (2, {6, 11})):
        edges = pattern_b[side]
        assert len(edges) == 11
        deg = [0] * 12
        for (u, v) in edges:
            deg[u] += 1
            deg[v] += 1
        assert all(deg[r] == 2 for r in (1, 2, 3, 4, 7, 8, 9, 10))
        assert {v for v in range(12) if deg[v] == 1} == ends


def test_instance_shapes():
    inst = build_vc_to_st_instance(EDGE, 1)
    assert inst.graph.n == 12 * 1 + 2 + 2
    inst = build_vc_to_st_instance(P3, 1)
    assert inst.graph.n == 12 * 2 + 2 + 2
    inst4 = build_vc_to_st_instance(EDGE, 1, target_leaves=4)
    assert inst4.graph.n == 12 * 1 + 2 + 4
    with pytest.raises(GraphError):
        build_vc_to_st_instance(Graph.from_edges(3, [(0, 1)]), 1)
    with pytest.raises(GraphError):
        build_vc_to_st_instance(EDGE, 0)
    with pytest.raises(GraphError):
        build_vc_to_st_instance(EDGE, 1, target_leaves=2)


def test_cover_to_ham_path_and_extract():
    inst = build_vc_to_st_instance(P3, 1)
    t = cover_to_ham_path(inst, [1])
    assert t.leaf_count == 2
    assert extract_cover(inst, t) == frozenset({1})
    inst = build_vc_to_st_instance(TRIANGLE, 2)
    for cover in ([0, 1], [1, 0], [2, 1]):
        t = cover_to_ham_path(inst, cover)
        assert t.leaf_count == 2
        assert extract_cover(inst, t) == frozenset(cover)


def test_cover_to_ham_path_higher_leaf_variant():
    inst = build_vc_to_st_instance(EDGE, 1, target_leaves=5)
    t = cover_to_ham_path(inst, [0])
    assert t.leaf_count == 4  # max(2, target_leaves - 1)


def test_cover_errors():
    inst = build_vc_to_st_instance(P3, 1)
    with pytest.raises(NotACover):
        cover_to_ham_path(inst, [0])
    with pytest.raises(WrongCoverSize):
        cover_to_ham_path(inst, [0, 1])
    inst = build_vc_to_st_instance(TRIANGLE, 2)
    with pytest.raises(WrongCoverSize):
        cover_to_ham_path(inst, [1, 1])


def test_extract_cover_rejects_leafy_trees():
    inst = build_vc_to_st_instance(P3, 1)
    bad = gen.random_spanning_tree(inst.graph, 0)
    assert bad.leaf_count > inst.target_leaves
    with pytest.raises(GraphError):
        extract_cover(inst, bad)


def replay(inst, start_cover, seq):
    flips = cover_seq_to_flip_seq(inst, seq)
    start = cover_to_ham_path(inst, seq[0])
    end = apply_flips(inst.graph, start, flips, at_most(inst.target_leaves))
    return start, end, flips


def test_compile_reordering_only():
    inst = build_vc_to_st_instance(TRIANGLE, 2)
    start, end, flips = replay(inst, (0, 1), [(0, 1), (1, 0)])
    assert end.edges == cover_to_ham_path(inst, [1, 0]).edges
    assert len(flips) >= 2


def test_compile_single_edge_swap():
    inst = build_vc_to_st_instance(EDGE, 1)
    start, end, flips = replay(inst, (0,), [(0,), (1,)])
    assert extract_cover(inst, start) == frozenset({0})
    assert end.edges == cover_to_ham_path(inst, [1]).edges


def test_compile_triangle_tj_walk():
    inst = build_vc_to_st_instance(TRIANGLE, 2)
    seq = [(0, 1), (1, 2), (2, 0)]
    start, end, flips = replay(inst, (0, 1), seq)
    assert extract_cover(inst, end) == frozenset({0, 2})


def test_compile_c4_witness_from_oracle():
    res = oracle.vc_tj_reachable(C4, frozenset({0, 1, 2}), frozenset({1, 2, 3}))
    assert res.is_yes
    inst = build_vc_to_st_instance(C4, 3)
    seq = [tuple(sorted(s)) for s in res.witness]
    start, end, flips = replay(inst, seq[0], seq)
    assert extract_cover(inst, start) == frozenset(seq[0])
    assert extract_cover(inst, end) == frozenset(seq[-1])


def test_compile_higher_leaf_variant():
    inst = build_vc_to_st_instance(EDGE, 1, target_leaves=4)
    start, end, flips = replay(inst, (0,), [(0,), (1,)])
    assert end.edges == cover_to_ham_path(inst, [1]).edges


def test_compile_rejects_non_tj_steps():
    # the two minimum covers of C4 differ by a double swap
    inst = build_vc_to_st_instance(C4, 2)
    with pytest.raises(NotTJAdjacent):
        cover_seq_to_flip_seq(inst, [(0, 2), (1, 3)])


def covers_tar_step_ok(g, k, c1, c2):
    """Step lemma: equal, one addition/removal, or an exchange whose
    union (size <= k+1) or intersection (a cover) is a valid midpoint."""
    if c1 == c2:
        return True
    if len(c1 ^ c2) == 1:
        return True
    if len(c1 - c2) == 1 and len(c2 - c1) == 1:
        if len(c1 | c2) <= k + 1:
            return True
        return oracle.is_vertex_cover(g, c1 & c2)
    return False


@pytest.mark.parametrize("source,k", [(EDGE, 1), (P3, 1), (TRIANGLE, 2)])
def test_backward_bfs_sample(source, k):
    inst = build_vc_to_st_instance(source, k)
    cons = at_most(inst.target_leaves)
    start = cover_to_ham_path(inst, sorted(next(iter(_min_covers(source, k)))))
    seen = {start.key(): extract_cover(inst, start)}
    queue = deque([start])
    cap = 1500
    while queue and len(seen) < cap:
        cur = queue.popleft()
        c_cur = seen[cur.key()]
        for _, nxt in oracle.tree_flip_neighbors(inst.graph, cur):
            if not cons.satisfied_by(nxt):
                continue
            c_nxt = seen.get(nxt.key())
            if c_nxt is None:
                c_nxt = extract_cover(inst, nxt)  # raises on contract violation
                assert len(c_nxt) <= k + 1
                seen[nxt.key()] = c_nxt
                queue.append(nxt)
            assert covers_tar_step_ok(source, k, c_cur, c_nxt)
    assert len(seen) > 10


def _min_covers(g, k):
    from itertools import combinations

    return [
        frozenset(c)
        for c in combinations(range(g.n), k)
        if oracle.is_vertex_cover(g, frozenset(c))
    ]


def test_ds_instance_shapes():
    for variant in ("bipartite", "split"):
        inst = build_ds_to_st_instance(P3, variant)
        assert inst.graph.n == 3 * 3 + 2
        assert inst.graph.degree(inst.y) == 1
        assert inst.graph.has_edge(inst.x, inst.y)
        for i in range(3):
            assert inst.graph.has_edge(inst.x, inst.a[i])
    bip = build_ds_to_st_instance(P3, "bipartite")
    spl = build_ds_to_st_instance(P3, "split")
    assert not bip.graph.has_edge(0, 2)
    assert spl.graph.has_edge(0, 2)
    with pytest.raises(GraphError):
        build_ds_to_st_instance(P3, "chordal")


def test_dominating_to_tree_leaf_counts():
    for variant in ("bipartite", "split"):
        inst = build_ds_to_st_instance(P3, variant)
        n = 3
        for dom in ([1], [0, 2], [0, 1], [0, 1, 2]):
            t = dominating_to_tree(inst, dom)
            assert t.leaf_count == 3 * n + 2 - (len(dom) + 1)
            assert t.internal_nodes & frozenset(inst.a) == frozenset(
                inst.a[i] for i in dom
            )
        with pytest.raises(oracle.NotADominatingSet):
            dominating_to_tree(inst, [0])


def test_ds_internal_sets_of_feasible_trees_dominate():
    # tiny source: every spanning tree of the host with enough leaves
    # projects to a dominating set on the A side
    inst = build_ds_to_st_instance(EDGE, "bipartite")
    n = 2
    bound = 3 * n + 2 - (1 + 2)  # dominating sets of size <= 2 allowed
    for t in oracle.enumerate_spanning_trees(inst.graph):
        if t.leaf_count < bound:
            continue
        dom = frozenset(i for i in range(n) if inst.a[i] in t.internal_nodes)
        assert oracle.is_dominating_set(inst.source, dom)
        assert len(dom) <= 2


def test_planar_instance_k3_k4():
    catalog = gen.planar_catalog()
    g3, emb3 = catalog["triangle"]
    inst = build_vc_to_st_planar(g3, emb3)
    assert inst.graph.n == 3 + 3 + 2 * 2
    t = planar_cover_tree(inst, _min_covers(g3, oracle.min_cover_size(g3))[0])
    assert t.leaf_count == 2 * (g3.m + 1) - oracle.min_cover_size(g3)
    g4, emb4 = catalog["k4"]
    inst = build_vc_to_st_planar(g4, emb4)
    assert inst.graph.n == 4 + 6 + 2 * 4
    t = planar_cover_tree(inst, _min_covers(g4, oracle.min_cover_size(g4))[0])
    assert t.leaf_count == 2 * (g4.m + 1) - oracle.min_cover_size(g4)


def test_planar_errors():
    catalog = gen.planar_catalog()
    g3, emb3 = catalog["triangle"]
    inst = build_vc_to_st_planar(g3, emb3)
    with pytest.raises(NotMinimumCover):
        planar_cover_tree(inst, [0, 1, 2])
    with pytest.raises(NotMinimumCover):
        planar_cover_tree(inst, [0])
    g4, emb4 = catalog["k4"]
    with pytest.raises(InvalidEmbedding):
        build_vc_to_st_planar(g3, emb4)


def test_obstruction_chorded_c4():
    g, t1, t2, cons = outerplanar_obstruction("chorded-c4", 4)
    assert cons.kind == "at_least" and cons.bound == 3
    assert cons.satisfied_by(t1) and cons.satisfied_by(t2)
    assert t1.edges != t2.edges
    res = oracle.st_reachable(g, t1, t2, cons)
    assert res.is_no
    with pytest.raises(GraphError):
        outerplanar_obstruction("chorded-c4", 5)


def test_obstruction_parallel_ladder():
    for m in (2, 3):
        g, t1, t2, cons = outerplanar_obstruction("parallel-ladder", m)
        assert cons.bound == m + 2
        assert cons.satisfied_by(t1) and cons.satisfied_by(t2)
        assert t1.edges != t2.edges
    with pytest.raises(GraphError):
        outerplanar_obstruction("parallel-ladder", 1)
    with pytest.raises(GraphError):
        outerplanar_obstruction("no-such-family", 2)
