"""Core graph, spanning-tree and flip primitives plus class certificates.

Vertices are dense integers 0..n-1.  Edges are normalized unordered pairs
(u, v) with u < v.  All types are immutable and hashable; every operation
is a pure function, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

Edge = tuple[int, int]


class GraphError(Exception):
    """Base class for all errors raised by this package."""


class EdgeNotInGraph(GraphError):
    pass


class RemovedNotInTree(GraphError):
    pass


class AddedAlreadyInTree(GraphError):
    pass


class ResultDisconnected(GraphError):
    pass


class NotASpanningTree(GraphError):
    pass


class InvalidInterval(GraphError):
    pass


class InvalidEmbedding(GraphError):
    pass


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[Edge]
    _adj: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False, hash=False, default=()
    )

    def __post_init__(self) -> None:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for (u, v) in self.edges:
            if not (0 <= u < v < self.n):
                raise GraphError(f"bad edge ({u}, {v}) for n={self.n}")
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(n, frozenset(norm_edge(u, v) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_component_of(self._adj, 0)) == self.n

    def complement(self) -> "Graph":
        comp = frozenset(
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in self.edges
        )
        return Graph(self.n, comp)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph on `vertices`, relabeled 0..k-1.

        Returns the subgraph and the map from new ids back to original ids.
        """
        vs = sorted(set(vertices))
        back = {i: v for i, v in enumerate(vs)}
        fwd = {v: i for i, v in enumerate(vs)}
        es = frozenset(
            (fwd[u], fwd[v]) for (u, v) in self.edges if u in fwd and v in fwd
        )
        return Graph(len(vs), es), back


def _component_of(adj, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def edges_connect(n: int, edges: Iterable[Edge]) -> bool:
    """True iff the edge set touches and connects all n vertices."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for (u, v) in edges:
        adj[u].append(v)
        adj[v].append(u)
    if n == 0:
        return True
    return len(_component_of(adj, 0)) == n


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree given as an edge set over vertices 0..n-1.

    Degree array and leaf count are computed once at construction.
    """

    n: int
    edges: frozenset[Edge]
    degrees: tuple[int, ...] = field(
        init=False, repr=False, compare=False, hash=False, default=()
    )

    def __post_init__(self) -> None:
        if len(self.edges) != self.n - 1:
            raise NotASpanningTree(
                f"{len(self.edges)} edges on {self.n} vertices"
            )
        deg = [0] * self.n
        for (u, v) in self.edges:
            if not (0 <= u < v < self.n):
                raise GraphError(f"bad edge ({u}, {v}) for n={self.n}")
            deg[u] += 1
            deg[v] += 1
        if not edges_connect(self.n, self.edges):
            raise NotASpanningTree("edge set does not connect all vertices")
        object.__setattr__(self, "degrees", tuple(deg))

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "SpanningTree":
        return SpanningTree(n, frozenset(norm_edge(u, v) for u, v in edges))

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @property
    def internal_nodes(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if self.degrees[v] >= 2)

    @property
    def leaves(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if self.degrees[v] == 1)

    @property
    def leaf_count(self) -> int:
        return self.n - len(self.internal_nodes)

    def key(self) -> tuple[Edge, ...]:
        """Canonical hashable state: the sorted edge tuple."""
        return tuple(sorted(self.edges))

    def neighbors_in_tree(self, v: int) -> list[int]:
        out = []
        for (a, b) in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def path_between(self, u: int, v: int) -> list[int]:
        """Vertex sequence of the unique tree path from u to v."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for (a, b) in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        prev: dict[int, int] = {u: u}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for y in adj[x]:
                if y not in prev:
                    prev[y] = x
                    stack.append(y)
        path = [v]
        while path[-1] != u:
            path.append(prev[path[-1]])
        path.reverse()
        return path


def leaf_count(tree: SpanningTree) -> int:
    """Number of leaves, computed as n minus the internal-node count.

    The degree identity sum(max(0, d-2)) + 2 is asserted to agree.
    """
    by_internal = tree.leaf_count
    if tree.n >= 2:
        by_degree = sum(max(0, d - 2) for d in tree.degrees) + 2
        assert by_degree == by_internal, (by_degree, by_internal)
    return by_internal


@dataclass(frozen=True)
class EdgeFlip:
    removed: Edge
    added: Edge

    def __post_init__(self) -> None:
        if self.removed == self.added:
            raise GraphError("flip must change an edge")

    def inverse(self) -> "EdgeFlip":
        return EdgeFlip(self.added, self.removed)


FlipSequence = tuple[EdgeFlip, ...]


@dataclass(frozen=True)
class LeafConstraint:
    """Leaf-count bound that every intermediate tree must satisfy."""

    kind: str  # "at_least" | "at_most"
    bound: int

    def __post_init__(self) -> None:
        if self.kind not in ("at_least", "at_most"):
            raise GraphError(f"unknown constraint kind {self.kind!r}")
        if self.bound < 2:
            raise GraphError("every tree on >= 2 vertices has >= 2 leaves")

    def satisfied_by(self, tree: SpanningTree) -> bool:
        if self.kind == "at_least":
            return tree.leaf_count >= self.bound
        return tree.leaf_count <= self.bound


def at_least(bound: int) -> LeafConstraint:
    return LeafConstraint("at_least", bound)


def at_most(bound: int) -> LeafConstraint:
    return LeafConstraint("at_most", bound)


def apply_flip(graph: Graph, tree: SpanningTree, flip: EdgeFlip) -> SpanningTree:
    """Replace one tree edge by a non-tree graph edge; returns a new tree."""
    if flip.removed not in tree.edges:
        raise RemovedNotInTree(str(flip.removed))
    if flip.added in tree.edges:
        raise AddedAlreadyInTree(str(flip.added))
    if flip.added not in graph.edges:
        raise EdgeNotInGraph(str(flip.added))
    new_edges = (tree.edges - {flip.removed}) | {flip.added}
    if not edges_connect(tree.n, new_edges):
        raise ResultDisconnected(f"remove {flip.removed}, add {flip.added}")
    return SpanningTree(tree.n, new_edges)


def apply_flips(
    graph: Graph,
    tree: SpanningTree,
    flips: Iterable[EdgeFlip],
    constraint: Optional[LeafConstraint] = None,
) -> SpanningTree:
    """Apply a flip sequence, optionally checking the constraint throughout."""
    cur = tree
    if constraint is not None and not constraint.satisfied_by(cur):
        raise GraphError("start tree violates the constraint")
    for f in flips:
        cur = apply_flip(graph, cur, f)
        if constraint is not None and not constraint.satisfied_by(cur):
            raise GraphError(f"intermediate tree violates the constraint at {f}")
    return cur


def is_spanning_tree(graph: Graph, edges: Iterable[tuple[int, int]]) -> bool:
    es = set()
    for (u, v) in edges:
        e = norm_edge(u, v)
        if e not in graph.edges:
            raise EdgeNotInGraph(str(e))
        es.add(e)
    if len(es) != graph.n - 1:
        return False
    return edges_connect(graph.n, es)


# --- interval certificates ---------------------------------------------------


@dataclass(frozen=True)
class IntervalRepresentation:
    """Per-vertex open intervals with exact rational endpoints.

    All 2n endpoints must be pairwise distinct; duplicate endpoints are
    rejected rather than perturbed.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        pts: list[Fraction] = []
        for (l, r) in self.intervals:
            if l >= r:
                raise InvalidInterval(f"degenerate interval [{l}, {r}]")
            pts.append(l)
            pts.append(r)
        if len(set(pts)) != len(pts):
            raise InvalidInterval("duplicate interval endpoints")

    @staticmethod
    def from_pairs(pairs: Iterable[tuple]) -> "IntervalRepresentation":
        return IntervalRepresentation(
            tuple((Fraction(l), Fraction(r)) for (l, r) in pairs)
        )

    @property
    def n(self) -> int:
        return len(self.intervals)

    def left(self, v: int) -> Fraction:
        return self.intervals[v][0]

    def right(self, v: int) -> Fraction:
        return self.intervals[v][1]

    def overlaps(self, u: int, v: int) -> bool:
        lu, ru = self.intervals[u]
        lv, rv = self.intervals[v]
        return lu < rv and lv < ru

    def intersection_graph(self) -> Graph:
        es = frozenset(
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if self.overlaps(u, v)
        )
        return Graph(self.n, es)


def validate_interval(graph: Graph, rep: IntervalRepresentation) -> bool:
    if rep.n != graph.n:
        return False
    return rep.intersection_graph().edges == graph.edges


# --- cotree certificates -----------------------------------------------------


@dataclass(frozen=True)
class CoTreeLeaf:
    vertex: int


@dataclass(frozen=True)
class CoTreeNode:
    label: str  # "union" | "join"
    children: tuple["CoTree", ...]

    def __post_init__(self) -> None:
        if self.label not in ("union", "join"):
            raise GraphError(f"bad cotree label {self.label!r}")
        if len(self.children) < 2:
            raise GraphError("cotree internal node needs >= 2 children")
        for c in self.children:
            if isinstance(c, CoTreeNode) and c.label == self.label:
                raise GraphError("cotree not canonical: nested same label")


CoTree = Union[CoTreeLeaf, CoTreeNode]


@dataclass(frozen=True)
class NotACograph:
    """Returned by build_cotree when the graph has no cotree."""

    reason: str = "graph is not a cograph"


class NotACographError(GraphError):
    pass


class DisconnectedGraph(GraphError):
    pass


def cotree_vertices(t: CoTree) -> frozenset[int]:
    if isinstance(t, CoTreeLeaf):
        return frozenset([t.vertex])
    out: set[int] = set()
    for c in t.children:
        out |= cotree_vertices(c)
    return frozenset(out)


def evaluate_cotree(t: CoTree, n: int) -> Graph:
    """Rebuild the graph a cotree denotes (leaves must be 0..n-1)."""

    def rec(node: CoTree) -> tuple[frozenset[int], set[Edge]]:
        if isinstance(node, CoTreeLeaf):
            return frozenset([node.vertex]), set()
        parts = [rec(c) for c in node.children]
        verts: set[int] = set()
        edges: set[Edge] = set()
        for vs, es in parts:
            verts |= vs
            edges |= es
        if node.label == "join":
            for i in range(len(parts)):
                for j in range(i + 1, len(parts)):
                    for u in parts[i][0]:
                        for v in parts[j][0]:
                            edges.add(norm_edge(u, v))
        return frozenset(verts), edges

    verts, edges = rec(t)
    if verts != frozenset(range(n)):
        raise GraphError("cotree leaves do not cover 0..n-1")
    return Graph(n, frozenset(edges))


def build_cotree(graph: Graph) -> Union[CoTree, NotACograph]:
    """Canonical cotree via the complement-connectivity recursion."""

    def components(vs: list[int], adj: dict[int, set[int]]) -> list[list[int]]:
        left = set(vs)
        comps = []
        while left:
            start = min(left)
            seen = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y in left and y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(seen))
            left -= seen
        return comps

    adj = {v: set(graph.neighbors(v)) for v in range(graph.n)}

    def rec(vs: list[int]) -> Union[CoTree, NotACograph]:
        if len(vs) == 1:
            return CoTreeLeaf(vs[0])
        comps = components(vs, adj)
        if len(comps) > 1:
            kids = []
            for c in comps:
                k = rec(c)
                if isinstance(k, NotACograph):
                    return k
                kids.append(k)
            return CoTreeNode("union", tuple(kids))
        vset = set(vs)
        co_adj = {v: (vset - adj[v]) - {v} for v in vs}
        co_comps = components(vs, co_adj)
        if len(co_comps) > 1:
            kids = []
            for c in co_comps:
                k = rec(c)
                if isinstance(k, NotACograph):
                    return k
                kids.append(k)
            return CoTreeNode("join", tuple(kids))
        return NotACograph(f"connected with connected complement on {vs}")

    if graph.n == 0:
        raise GraphError("empty graph")
    return rec(list(range(graph.n)))


# --- planar embeddings -------------------------------------------------------


@dataclass(frozen=True)
class PlanarEmbedding:
    """A plane embedding given by its face cycles and the outer-face index."""

    faces: tuple[tuple[int, ...], ...]
    outer: int

    def __post_init__(self) -> None:
        if not (0 <= self.outer < len(self.faces)):
            raise InvalidEmbedding("outer-face index out of range")
        for f in self.faces:
            if len(f) < 3:
                raise InvalidEmbedding("face cycle shorter than 3")

    def face_edges(self, i: int) -> list[Edge]:
        f = self.faces[i]
        return [norm_edge(f[j], f[(j + 1) % len(f)]) for j in range(len(f))]


def validate_embedding(graph: Graph, emb: PlanarEmbedding) -> bool:
    count: dict[Edge, int] = {e: 0 for e in graph.edges}
    for i in range(len(emb.faces)):
        for e in emb.face_edges(i):
            if e not in count:
                return False
            count[e] += 1
    if any(c != 2 for c in count.values()):
        return False
    return len(emb.faces) == 2 - graph.n + graph.m
