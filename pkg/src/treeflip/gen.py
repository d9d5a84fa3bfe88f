"""Seeded random instance generators.

Every generator is a pure function of its arguments plus a seed (or an
explicit random.Random), so equal seeds give byte-identical instances.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Union

from .graph import (
    CoTreeLeaf,
    CoTreeNode,
    Graph,
    GraphError,
    IntervalRepresentation,
    PlanarEmbedding,
    SpanningTree,
    norm_edge,
    validate_embedding,
)

Rng = Union[int, random.Random]


def _rng(seed: Rng) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_connected_graph(n: int, seed: Rng, extra_edge_prob: float = 0.3) -> Graph:
    """Random spanning tree plus independent extra edges."""
    rng = _rng(seed)
    if n <= 0:
        raise GraphError("n must be positive")
    edges: set = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add(norm_edge(order[i], order[j]))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra_edge_prob:
                edges.add((u, v))
    return Graph(n, frozenset(edges))


def random_spanning_tree(graph: Graph, seed: Rng) -> SpanningTree:
    """Uniform-ish random spanning tree via shuffled Kruskal."""
    rng = _rng(seed)
    edges = graph.sorted_edges()
    rng.shuffle(edges)
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for (u, v) in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append((u, v))
    if len(chosen) != graph.n - 1:
        raise GraphError("graph is not connected")
    return SpanningTree(graph.n, frozenset(chosen))


def random_interval_representation(
    n: int, seed: Rng, require_connected: bool = True
) -> tuple[Graph, IntervalRepresentation]:
    """Random interval graph from 2n distinct integer endpoints."""
    rng = _rng(seed)
    for _ in range(10_000):
        pts = list(range(2 * n))
        rng.shuffle(pts)
        ivs = []
        for v in range(n):
            a, b = pts[2 * v], pts[2 * v + 1]
            if a > b:
                a, b = b, a
            ivs.append((Fraction(a), Fraction(b)))
        rep = IntervalRepresentation(tuple(ivs))
        graph = rep.intersection_graph()
        if not require_connected or graph.is_connected():
            return graph, rep
    raise GraphError("failed to generate a connected interval graph")


def random_cotree(n: int, seed: Rng):
    """Random canonical cotree over 0..n-1 whose graph is connected."""
    rng = _rng(seed)

    def rec(vs: list[int], label: str):
        if len(vs) == 1:
            return CoTreeLeaf(vs[0])
        nparts = rng.randint(2, len(vs))
        pool = list(vs)
        rng.shuffle(pool)
        parts: list[list[int]] = [[] for _ in range(nparts)]
        for i, v in enumerate(pool):
            parts[i % nparts].append(v)
        other = "union" if label == "join" else "join"
        kids = tuple(rec(sorted(p), other) for p in parts if p)
        if len(kids) == 1:
            return kids[0]
        return CoTreeNode(label, kids)

    if n == 1:
        return CoTreeLeaf(0)
    # root is a join so the evaluated graph is connected
    return rec(list(range(n)), "join")


def random_connected_cograph(n: int, seed: Rng) -> tuple[Graph, object]:
    from .graph import evaluate_cotree

    tree = random_cotree(n, seed)
    return evaluate_cotree(tree, n), tree


# --- embedded planar catalog --------------------------------------------------


def _embedded(n, edges, faces, outer) -> tuple[Graph, PlanarEmbedding]:
    g = Graph.from_edges(n, edges)
    emb = PlanarEmbedding(tuple(tuple(f) for f in faces), outer)
    assert validate_embedding(g, emb), "catalog entry failed its own validation"
    return g, emb


def planar_catalog() -> dict[str, tuple[Graph, PlanarEmbedding]]:
    """Small embedded planar graphs with hand-checked face lists."""
    cat: dict[str, tuple[Graph, PlanarEmbedding]] = {}
    cat["triangle"] = _embedded(
        3, [(0, 1), (1, 2), (0, 2)], [(0, 1, 2), (0, 2, 1)], 1
    )
    cat["k4"] = _embedded(
        4,
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)],
        3,
    )
    cat["c4"] = _embedded(
        4, [(0, 1), (1, 2), (2, 3), (0, 3)], [(0, 1, 2, 3), (0, 3, 2, 1)], 1
    )
    cat["c5"] = _embedded(
        5,
        [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
        [(0, 1, 2, 3, 4), (0, 4, 3, 2, 1)],
        1,
    )
    cat["diamond"] = _embedded(
        4,
        [(0, 1), (1, 2), (0, 2), (2, 3), (0, 3)],
        [(0, 1, 2), (0, 2, 3), (0, 3, 2, 1)],
        2,
    )
    cat["house"] = _embedded(
        5,
        [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 4)],
        [(0, 1, 4), (1, 2, 3, 4), (0, 4, 3, 2, 1)],
        2,
    )
    cat["prism"] = _embedded(
        6,
        [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        [(0, 1, 4, 3), (1, 2, 5, 4), (0, 3, 5, 2), (0, 2, 1), (3, 4, 5)],
        3,
    )
    cat["wheel5"] = _embedded(
        5,
        [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)],
        [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4), (0, 3, 2, 1)],
        4,
    )
    cat["cube"] = _embedded(
        8,
        [
            (0, 1), (1, 2), (2, 3), (0, 3),
            (4, 5), (5, 6), (6, 7), (4, 7),
            (0, 4), (1, 5), (2, 6), (3, 7),
        ],
        [
            (0, 1, 2, 3),
            (0, 4, 5, 1),
            (1, 5, 6, 2),
            (2, 6, 7, 3),
            (3, 7, 4, 0),
            (4, 7, 6, 5),
        ],
        5,
    )
    cat["pentahouse"] = _embedded(
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 5)],
        [(0, 1, 5), (1, 2, 3, 4, 5), (0, 5, 4, 3, 2, 1)],
        2,
    )
    cat["wheel6"] = _embedded(
        6,
        [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
         (0, 5), (1, 5), (2, 5), (3, 5), (4, 5)],
        [(0, 1, 5), (1, 2, 5), (2, 3, 5), (3, 4, 5), (4, 0, 5), (0, 4, 3, 2, 1)],
        5,
    )
    cat["bipyramid"] = _embedded(
        5,
        [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4)],
        [(0, 1, 3), (1, 2, 3), (0, 2, 3), (0, 1, 4), (1, 2, 4), (0, 2, 4)],
        5,
    )
    return cat


def random_embedded_planar(seed: Rng) -> tuple[str, Graph, PlanarEmbedding]:
    """A seeded pick from the embedded catalog."""
    rng = _rng(seed)
    cat = planar_catalog()
    name = rng.choice(sorted(cat))
    g, emb = cat[name]
    return name, g, emb
