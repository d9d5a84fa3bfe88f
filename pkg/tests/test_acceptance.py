"""Release gate: solver-vs-oracle sweeps at full scale, reduction and
obstruction certifications, and the structural invariants the library
promises.  Each sweep computes exhaustive ground truth independently of
the decider under test (union-find over tree deletion keys, exhaustive
BFS, or direct enumeration)."""

import random
import time
from collections import deque
from itertools import combinations

import pytest

from treeflip import gen, oracle, reductions
from treeflip.graph import Graph, apply_flips, at_least, at_most, leaf_count
from treeflip.interval import canonical_set, canonical_tree, decide_interval
from treeflip.solvers import decide_cograph, decide_two_internal
from util import connected_graphs_with_few_edges, label_components

TREE_CAP = 20000  # dense instances are redrawn, not truncated


def draw(make, rng, cap=TREE_CAP):
    """Seeded instance with a bounded spanning-tree count."""
    while True:
        out = make(rng.randrange(1 << 30))
        g = out[0] if isinstance(out, tuple) else out
        if oracle.count_spanning_trees_kirchhoff(g) <= cap:
            return out


def pool_and_labels(trees, cons):
    pool = [t for t in trees if cons.satisfied_by(t)]
    return pool, (label_components(pool) if pool else {})


# 1. cograph decider vs exhaustive ground truth -------------------------------


def test_cograph_decider_agrees_with_oracle_at_scale():
    started = time.monotonic()
    cases = 0
    for i in range(200):
        rng = random.Random(10_000 + i)
        n = rng.randint(4, 8)
        g, cotree = draw(lambda s: gen.random_connected_cograph(n, s), rng)
        trees = oracle.enumerate_spanning_trees(g)
        for k_int in (1, 2, 3, 4):
            cons = at_least(max(2, n - k_int))
            pool, labels = pool_and_labels(trees, cons)
            if not pool:
                continue
            for _ in range(5):
                t1, t2 = rng.choice(pool), rng.choice(pool)
                truth = labels[t1.key()] == labels[t2.key()]
                out = decide_cograph(g, cotree, cons, t1, t2)
                assert out.decision == truth, (i, n, k_int)
                cases += 1
    assert cases >= 3000
    assert time.monotonic() - started < 600


# 2. interval decider vs exhaustive ground truth ------------------------------


def test_interval_decider_agrees_with_oracle_at_scale():
    started = time.monotonic()
    cases = 0
    for i in range(200):
        rng = random.Random(20_000 + i)
        n = rng.randint(3, 9)
        g, rep = draw(lambda s: gen.random_interval_representation(n, s), rng)
        trees = oracle.enumerate_spanning_trees(g)
        for k_int in range(1, n):
            bound = max(2, n - k_int)
            pool, labels = pool_and_labels(trees, at_least(bound))
            if not pool:
                continue
            for _ in range(5):
                t1, t2 = rng.choice(pool), rng.choice(pool)
                truth = labels[t1.key()] == labels[t2.key()]
                out = decide_interval(g, rep, bound, t1, t2)
                assert out.decision == truth, (i, n, k_int)
                cases += 1
    assert cases >= 4000
    assert time.monotonic() - started < 1800


# 3. two-internal decider vs exhaustive ground truth --------------------------


def test_two_internal_decider_agrees_with_oracle_at_scale():
    started = time.monotonic()
    cases = 0
    for i in range(200):
        rng = random.Random(30_000 + i)
        n = rng.randint(4, 8)
        g = draw(
            lambda s: gen.random_connected_graph(n, s, extra_edge_prob=0.6), rng
        )
        pool = [
            t for t in oracle.enumerate_spanning_trees(g)
            if len(t.internal_nodes) <= 2
        ]
        if not pool:
            continue
        labels = label_components(pool)
        for _ in range(5):
            t1, t2 = rng.choice(pool), rng.choice(pool)
            truth = labels[t1.key()] == labels[t2.key()]
            assert decide_two_internal(g, t1, t2).decision == truth, (i, n)
            cases += 1
    assert cases >= 300
    assert time.monotonic() - started < 600


# 4. leaf-count formula -------------------------------------------------------


def test_leaf_formula_on_ten_thousand_trees():
    rng = random.Random(40_000)
    for i in range(500):
        g = gen.random_connected_graph(rng.randint(3, 12), rng.randrange(1 << 30))
        for j in range(20):
            t = gen.random_spanning_tree(g, rng.randrange(1 << 30))
            assert leaf_count(t) == t.n - len(t.internal_nodes)
            assert t.n - len(t.internal_nodes) == (
                sum(max(0, d - 2) for d in t.degrees) + 2
            )


# 5. gadget certification -----------------------------------------------------


def test_gadget_certification_is_exhaustive_and_fast():
    reductions.certify_gadget.cache_clear()
    started = time.monotonic()
    cert = reductions.certify_gadget()
    assert time.monotonic() - started < 1.0
    assert set(cert) == {"pattern_a", "pattern_b"}
    assert len(cert["pattern_b"]) == 2


# 6. few-leaves reduction, forward direction ----------------------------------


def min_covers(g, k):
    return [
        frozenset(c)
        for c in combinations(range(g.n), k)
        if oracle.is_vertex_cover(g, frozenset(c))
    ]


def test_few_leaves_forward_on_all_tiny_sources():
    compiled = 0
    for g in connected_graphs_with_few_edges(4):
        k = oracle.min_cover_size(g)
        covers = min_covers(g, k)
        inst = None
        for c1, c2 in combinations(covers, 2):
            res = oracle.vc_tj_reachable(g, c1, c2)
            if not res.is_yes:
                continue
            if inst is None:
                inst = reductions.build_vc_to_st_instance(g, k)
            seq = [tuple(sorted(s)) for s in res.witness]
            flips = reductions.cover_seq_to_flip_seq(inst, seq)
            start = reductions.cover_to_ham_path(inst, seq[0])
            # replay validates every intermediate against the leaf bound
            end = apply_flips(inst.graph, start, flips, at_most(3))
            assert reductions.extract_cover(inst, start) == c1
            assert reductions.extract_cover(inst, end) == c2
            compiled += 1
    assert compiled >= 100


# 7. few-leaves reduction, statistical backward check -------------------------


def tar_step_ok(g, k, c1, c2):
    """Equal, one addition/removal, or an exchange whose union fits the
    k+1 threshold or whose intersection is itself a cover."""
    if c1 == c2 or len(c1 ^ c2) == 1:
        return True
    if len(c1 - c2) == 1 and len(c2 - c1) == 1:
        return len(c1 | c2) <= k + 1 or oracle.is_vertex_cover(g, c1 & c2)
    return False


@pytest.mark.parametrize(
    "edges,k,cap",
    [
        ([(0, 1)], 1, 10**6),
        ([(0, 1), (1, 2)], 1, 4000),
        ([(0, 1), (1, 2), (0, 2)], 2, 2500),
    ],
)
def test_few_leaves_backward_bfs(edges, k, cap):
    g = Graph.from_edges(max(max(e) for e in edges) + 1, edges)
    inst = reductions.build_vc_to_st_instance(g, k)
    cons = at_most(inst.target_leaves)
    start = reductions.cover_to_ham_path(inst, sorted(min_covers(g, k)[0]))
    seen = {start.key(): reductions.extract_cover(inst, start)}
    queue = deque([start])
    while queue and len(seen) < cap:
        cur = queue.popleft()
        c_cur = seen[cur.key()]
        for _, nxt in oracle.tree_flip_neighbors(inst.graph, cur):
            if not cons.satisfied_by(nxt):
                continue
            c_nxt = seen.get(nxt.key())
            if c_nxt is None:
                # extract_cover raises ContractViolation on any bad tree
                c_nxt = reductions.extract_cover(inst, nxt)
                assert len(c_nxt) <= k + 1
                seen[nxt.key()] = c_nxt
                queue.append(nxt)
            assert tar_step_ok(g, k, c_cur, c_nxt)
    assert len(seen) > 50


# 8. planar reduction ---------------------------------------------------------

PLANAR_NAMES = [
    "triangle", "k4", "c4", "c5", "diamond", "house",
    "prism", "wheel5", "pentahouse", "wheel6",
]


def test_planar_reduction_leaf_counts_and_maximality():
    catalog = gen.planar_catalog()
    for name in PLANAR_NAMES:
        g, emb = catalog[name]
        tau = oracle.min_cover_size(g)
        inst = reductions.build_vc_to_st_planar(g, emb)
        t = reductions.planar_cover_tree(inst, min_covers(g, tau)[0])
        assert t.leaf_count == 2 * (g.m + 1) - tau, name
        if inst.graph.n <= 12:
            best = max(
                o.leaf_count for o in oracle.enumerate_spanning_trees(inst.graph)
            )
            assert best == 2 * (g.m + 1) - tau, name


# 9. dominating-set reduction on every 3-vertex source ------------------------


def all_three_vertex_graphs():
    out = []
    pairs = [(0, 1), (0, 2), (1, 2)]
    for mask in range(8):
        edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
        out.append(Graph.from_edges(3, edges))
    return out


def test_ds_reduction_matches_tree_reachability():
    budget = oracle.SearchBudget(max_states=120_000, max_millis=90_000)
    agreed = 0
    capped = 0
    for gi, g in enumerate(all_three_vertex_graphs()):
        gamma = oracle.min_domset_size(g)
        doms = [
            frozenset(c)
            for r in range(gamma, min(3, gamma + 1) + 1)
            for c in combinations(range(3), r)
            if oracle.is_dominating_set(g, frozenset(c))
        ]
        rng = random.Random(90_000 + gi)
        pairs = [(rng.choice(doms), rng.choice(doms)) for _ in range(3)]
        for variant in ("bipartite", "split"):
            inst = reductions.build_ds_to_st_instance(g, variant)
            for d1, d2 in pairs:
                thr = max(len(d1), len(d2)) + 1
                want = oracle.ds_tar_reachable(g, d1, d2, thr, budget)
                t1 = reductions.dominating_to_tree(inst, d1)
                t2 = reductions.dominating_to_tree(inst, d2)
                bound = 3 * g.n + 2 - (thr + 1)
                got = oracle.st_reachable(
                    inst.graph, t1, t2, at_least(bound), budget
                )
                if "budget_exceeded" in (want.status, got.status):
                    capped += 1
                    continue
                assert want.is_yes == got.is_yes, (gi, variant, sorted(d1), sorted(d2))
                agreed += 1
    assert agreed >= 48
    assert capped <= agreed  # the sweep must be mostly decided


# 10. obstruction families ----------------------------------------------------


def test_obstruction_families_are_frozen():
    g, t1, t2, cons = reductions.outerplanar_obstruction("chorded-c4", 4)
    entries = oracle.component_census(g, cons)
    by_key = {e.representative.key(): e for e in entries}
    assert t1.key() in by_key and t2.key() in by_key
    assert by_key[t1.key()].frozen and by_key[t2.key()].frozen
    assert by_key[t1.key()] is not by_key[t2.key()]

    g, t1, t2, cons = reductions.outerplanar_obstruction("parallel-ladder", 2)
    entries = oracle.component_census(g, cons)
    assert len(entries) == 2
    assert all(e.frozen and e.size == 1 for e in entries)
    assert {e.representative.key() for e in entries} == {t1.key(), t2.key()}


# 11. canonical-set minimality and the prefix property ------------------------


def test_canonical_tree_minimality_and_prefix_property():
    checked_trees = 0
    for n in range(3, 9):
        for seed in range(4):
            rng = random.Random(110_000 + 31 * n + seed)
            g, rep = draw(lambda s: gen.random_interval_representation(n, s), rng)
            tc = canonical_tree(g, rep)
            trees = oracle.enumerate_spanning_trees(g)
            assert len(tc.internal_nodes) == min(
                len(t.internal_nodes) for t in trees
            )
            cx = sorted(tc.internal_nodes, key=lambda v: rep.right(v))
            for t in trees:
                ins = sorted(t.internal_nodes, key=lambda v: rep.right(v))
                assert len(ins) >= len(cx)
                for i, v in enumerate(cx):
                    assert rep.right(ins[i]) <= rep.right(v), (n, seed, i)
                checked_trees += 1
    assert checked_trees >= 1000
