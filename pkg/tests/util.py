"""Shared helpers for the test suite."""

from itertools import combinations

from treeflip.graph import Graph, SpanningTree


def label_components(trees: list[SpanningTree]) -> dict:
    """Connected-component labels of the flip graph restricted to `trees`.

    Two spanning trees are flip neighbors iff they share n-2 edges, so
    union-find over the (n-2)-edge deletion keys labels components without
    ever materializing neighbor trees.
    """
    parent = list(range(len(trees)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    buckets: dict[frozenset, int] = {}
    for i, t in enumerate(trees):
        for e in t.edges:
            key = t.edges - {e}
            j = buckets.setdefault(key, i)
            if j != i:
                parent[find(i)] = find(j)
    return {t.key(): find(i) for i, t in enumerate(trees)}


def connected_graphs_with_few_edges(max_edges: int):
    """All labeled connected graphs (n >= 2) with at most max_edges edges."""
    out = []
    for n in range(2, max_edges + 2):
        all_edges = list(combinations(range(n), 2))
        for m in range(n - 1, max_edges + 1):
            for combo in combinations(all_edges, m):
                g = Graph.from_edges(n, combo)
                if g.is_connected():
                    out.append(g)
    return out
