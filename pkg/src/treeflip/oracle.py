"""Exhaustive ground-truth engines.

Spanning-tree enumeration by contraction/deletion, constrained flip BFS
between spanning trees, token addition/removal and token jumping searches
over vertex covers and dominating sets, and a component census of the
constrained flip graph.

All searches are deterministic for a fixed input: states are canonical
sorted tuples and frontiers expand in sorted order, so witnesses are
reproducible shortest paths.
"""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .graph import (
    Edge,
    EdgeFlip,
    FlipSequence,
    Graph,
    GraphError,
    LeafConstraint,
    SpanningTree,
    edges_connect,
)


class GraphTooLarge(GraphError):
    pass


class ConstraintViolatedByEndpoint(GraphError):
    pass


class NotAVertexCover(GraphError):
    pass


class NotADominatingSet(GraphError):
    pass


class SizeMismatch(GraphError):
    pass


DEFAULT_MAX_N = 16


def max_oracle_n() -> int:
    """Vertex cap for exhaustive enumeration (env TREEFLIP_MAX_N overrides)."""
    raw = os.environ.get("TREEFLIP_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    return int(raw)


@dataclass(frozen=True)
class SearchBudget:
    max_states: int = 10**6
    max_millis: int = 600_000

    def __post_init__(self) -> None:
        if self.max_states <= 0 or self.max_millis <= 0:
            raise GraphError("budget fields must be positive")


YES = "yes"
NO = "no"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class ReachabilityResult:
    status: str  # yes | no | budget_exceeded
    witness: Optional[tuple]  # FlipSequence or token-move list
    states_explored: int

    @property
    def is_yes(self) -> bool:
        return self.status == YES

    @property
    def is_no(self) -> bool:
        return self.status == NO


# --- spanning tree enumeration -----------------------------------------------


def enumerate_spanning_trees(graph: Graph, cap: Optional[int] = None) -> list[SpanningTree]:
    """All spanning trees, each once, in deterministic order.

    Contraction/deletion recursion over the sorted edge list: each original
    edge is either forced into the tree (contract, via union-find) or
    discarded (allowed only while the remaining edges still connect).
    """
    limit = cap if cap is not None else max_oracle_n()
    if graph.n > limit:
        raise GraphTooLarge(f"n={graph.n} exceeds cap {limit}")
    if graph.n == 0:
        return []
    if not graph.is_connected():
        return []
    edges = graph.sorted_edges()
    n = graph.n
    out: list[SpanningTree] = []

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(idx: int, chosen: list[Edge], ncomp: int, remaining: list[Edge]) -> None:
        if ncomp == 1:
            out.append(SpanningTree(n, frozenset(chosen)))
            return
        if idx == len(edges):
            return
        e = edges[idx]
        u, v = e
        ru, rv = find(u), find(v)
        rest = [f for f in remaining if f != e]
        if ru == rv:
            # edge inside a contracted component: can never be chosen
            rec(idx + 1, chosen, ncomp, rest)
            return
        # branch 1: include e (contract)
        parent[ru] = rv
        chosen.append(e)
        rec(idx + 1, chosen, ncomp - 1, rest)
        chosen.pop()
        parent[ru] = ru
        # branch 2: exclude e, only if the rest still connects everything
        quotient_ok = _still_connectable(n, rest, find)
        if quotient_ok:
            rec(idx + 1, chosen, ncomp, rest)

    def _still_connectable(n: int, rest: list[Edge], find_fn) -> bool:
        # connectivity of the contracted graph using remaining edges
        adj: dict[int, set[int]] = {}
        roots = set(find_fn(x) for x in range(n))
        for r in roots:
            adj[r] = set()
        for (a, b) in rest:
            ra, rb = find_fn(a), find_fn(b)
            if ra != rb:
                adj[ra].add(rb)
                adj[rb].add(ra)
        start = next(iter(roots))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(roots)

    rec(0, [], n, edges)
    return out


def count_spanning_trees_kirchhoff(graph: Graph) -> int:
    """Independent spanning-tree count via the matrix-tree determinant."""
    n = graph.n
    if n <= 1:
        return 1 if n == 1 else 0
    # integer-exact Bareiss elimination on the reduced Laplacian
    lap = [[0] * n for _ in range(n)]
    for (u, v) in graph.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    mat = [row[1:] for row in lap[1:]]
    size = n - 1
    prev = 1
    sign = 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            for swap in range(k + 1, size):
                if mat[swap][k] != 0:
                    mat[k], mat[swap] = mat[swap], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = mat[k][k]
    return sign * mat[size - 1][size - 1]


# --- constrained flip BFS ----------------------------------------------------


def tree_flip_neighbors(
    graph: Graph, tree: SpanningTree
) -> list[tuple[EdgeFlip, SpanningTree]]:
    """All trees one valid flip away, in deterministic (sorted) order."""
    out: list[tuple[EdgeFlip, SpanningTree]] = []
    non_tree = sorted(graph.edges - tree.edges)
    adj: list[list[int]] = [[] for _ in range(tree.n)]
    for (a, b) in tree.edges:
        adj[a].append(b)
        adj[b].append(a)
    for e in sorted(tree.edges):
        side = _cut_side(adj, e)
        for f in non_tree:
            if (f[0] in side) != (f[1] in side):
                new_edges = (tree.edges - {e}) | {f}
                out.append((EdgeFlip(e, f), SpanningTree(tree.n, new_edges)))
    return out


def _cut_side(adj: list[list[int]], e: Edge) -> set[int]:
    """Vertices on e[0]'s side after deleting tree edge e."""
    a, b = e
    side = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if x == a and y == b:
                continue
            if y not in side:
                side.add(y)
                stack.append(y)
    return side


def st_reachable(
    graph: Graph,
    source: SpanningTree,
    target: SpanningTree,
    constraint: LeafConstraint,
    budget: SearchBudget = SearchBudget(),
) -> ReachabilityResult:
    """BFS over constraint-satisfying spanning trees under single flips.

    Yes results carry a shortest flip witness.
    """
    if not constraint.satisfied_by(source) or not constraint.satisfied_by(target):
        raise ConstraintViolatedByEndpoint(
            f"{source.leaf_count}/{target.leaf_count} leaves vs {constraint}"
        )
    start = source.key()
    goal = target.key()
    if start == goal:
        return ReachabilityResult(YES, (), 0)
    t0 = time.monotonic()
    parent: dict[tuple, tuple] = {start: None}  # state -> (prev state, flip)
    queue: deque[tuple[tuple, SpanningTree]] = deque([(start, source)])
    explored = 0
    while queue:
        state, tree = queue.popleft()
        explored += 1
        if explored > budget.max_states or (
            explored % 256 == 0
            and (time.monotonic() - t0) * 1000 > budget.max_millis
        ):
            return ReachabilityResult(BUDGET_EXCEEDED, None, explored)
        for flip, nxt in tree_flip_neighbors(graph, tree):
            if not constraint.satisfied_by(nxt):
                continue
            key = nxt.key()
            if key in parent:
                continue
            parent[key] = (state, flip)
            if key == goal:
                flips: list[EdgeFlip] = []
                cur = key
                while parent[cur] is not None:
                    prev, f = parent[cur]
                    flips.append(f)
                    cur = prev
                flips.reverse()
                return ReachabilityResult(YES, tuple(flips), explored)
            queue.append((key, nxt))
    return ReachabilityResult(NO, None, explored)


# --- token reconfiguration oracles -------------------------------------------


def is_vertex_cover(graph: Graph, s: frozenset[int]) -> bool:
    return all(u in s or v in s for (u, v) in graph.edges)


def is_dominating_set(graph: Graph, s: frozenset[int]) -> bool:
    if not s and graph.n > 0:
        return False
    for v in range(graph.n):
        if v not in s and not any(w in s for w in graph.neighbors(v)):
            return False
    return True


def _token_bfs(
    start: frozenset[int],
    goal: frozenset[int],
    moves,
    budget: SearchBudget,
) -> ReachabilityResult:
    """Generic BFS over vertex sets; `moves(s)` yields successor sets."""
    skey = tuple(sorted(start))
    gkey = tuple(sorted(goal))
    if skey == gkey:
        return ReachabilityResult(YES, (), 0)
    t0 = time.monotonic()
    parent: dict[tuple, Optional[tuple]] = {skey: None}
    queue = deque([skey])
    explored = 0
    while queue:
        state = queue.popleft()
        explored += 1
        if explored > budget.max_states or (
            explored % 1024 == 0
            and (time.monotonic() - t0) * 1000 > budget.max_millis
        ):
            return ReachabilityResult(BUDGET_EXCEEDED, None, explored)
        for nxt in moves(frozenset(state)):
            key = tuple(sorted(nxt))
            if key in parent:
                continue
            parent[key] = state
            if key == gkey:
                seq = [key]
                cur = key
                while parent[cur] is not None:
                    cur = parent[cur]
                    seq.append(cur)
                seq.reverse()
                return ReachabilityResult(YES, tuple(seq), explored)
            queue.append(key)
    return ReachabilityResult(NO, None, explored)


def vc_tar_reachable(
    graph: Graph,
    source: frozenset[int],
    target: frozenset[int],
    threshold: int,
    budget: SearchBudget = SearchBudget(),
) -> ReachabilityResult:
    """Single vertex addition/removal between covers of size <= threshold."""
    for s in (source, target):
        if not is_vertex_cover(graph, s):
            raise NotAVertexCover(str(sorted(s)))
        if len(s) > threshold:
            raise NotAVertexCover(f"size {len(s)} exceeds threshold {threshold}")

    def moves(s: frozenset[int]):
        out = []
        for v in sorted(s):
            t = s - {v}
            if is_vertex_cover(graph, t):
                out.append(t)
        if len(s) < threshold:
            for v in range(graph.n):
                if v not in s:
                    out.append(s | {v})
        return out

    return _token_bfs(source, target, moves, budget)


def vc_tj_reachable(
    graph: Graph,
    source: frozenset[int],
    target: frozenset[int],
    budget: SearchBudget = SearchBudget(),
) -> ReachabilityResult:
    """Single-vertex exchange between equal-size vertex covers."""
    if len(source) != len(target):
        raise SizeMismatch(f"{len(source)} vs {len(target)}")
    for s in (source, target):
        if not is_vertex_cover(graph, s):
            raise NotAVertexCover(str(sorted(s)))

    def moves(s: frozenset[int]):
        out = []
        for v in sorted(s):
            base = s - {v}
            for w in range(graph.n):
                if w not in s:
                    t = base | {w}
                    if is_vertex_cover(graph, t):
                        out.append(t)
        return out

    return _token_bfs(source, target, moves, budget)


def ds_tar_reachable(
    graph: Graph,
    source: frozenset[int],
    target: frozenset[int],
    threshold: int,
    budget: SearchBudget = SearchBudget(),
) -> ReachabilityResult:
    """Single addition/removal between dominating sets of size <= threshold."""
    for s in (source, target):
        if not is_dominating_set(graph, s):
            raise NotADominatingSet(str(sorted(s)))
        if len(s) > threshold:
            raise NotADominatingSet(f"size {len(s)} exceeds threshold {threshold}")

    def moves(s: frozenset[int]):
        out = []
        for v in sorted(s):
            t = s - {v}
            if is_dominating_set(graph, t):
                out.append(t)
        if len(s) < threshold:
            for v in range(graph.n):
                if v not in s:
                    out.append(s | {v})
        return out

    return _token_bfs(source, target, moves, budget)


# --- minimum cover / dominating set ------------------------------------------


def min_cover_size(graph: Graph, cap: Optional[int] = None) -> int:
    limit = cap if cap is not None else max_oracle_n()
    if graph.n > limit:
        raise GraphTooLarge(f"n={graph.n} exceeds cap {limit}")
    for r in range(graph.n + 1):
        for combo in combinations(range(graph.n), r):
            if is_vertex_cover(graph, frozenset(combo)):
                return r
    raise AssertionError("V itself always covers")


def min_domset_size(graph: Graph, cap: Optional[int] = None) -> int:
    limit = cap if cap is not None else max_oracle_n()
    if graph.n > limit:
        raise GraphTooLarge(f"n={graph.n} exceeds cap {limit}")
    for r in range(graph.n + 1):
        for combo in combinations(range(graph.n), r):
            if is_dominating_set(graph, frozenset(combo)):
                return r
    raise AssertionError("V itself always dominates")


def min_internal_nodes(graph: Graph, cap: Optional[int] = None) -> int:
    """Minimum internal-node count over all spanning trees (exhaustive)."""
    return min(len(t.internal_nodes) for t in enumerate_spanning_trees(graph, cap))


# --- component census ---------------------------------------------------------


@dataclass(frozen=True)
class CensusEntry:
    size: int
    representative: SpanningTree
    frozen: bool  # singleton flip component


def component_census(
    graph: Graph,
    constraint: LeafConstraint,
    budget: SearchBudget = SearchBudget(),
    cap: Optional[int] = None,
) -> list[CensusEntry]:
    """Partition all constraint-feasible spanning trees into flip components."""
    trees = [
        t for t in enumerate_spanning_trees(graph, cap) if constraint.satisfied_by(t)
    ]
    index = {t.key(): i for i, t in enumerate(trees)}
    if len(trees) > budget.max_states:
        raise GraphError("census exceeds state budget")
    seen = [False] * len(trees)
    entries: list[CensusEntry] = []
    for i, t in enumerate(trees):
        if seen[i]:
            continue
        comp = [i]
        seen[i] = True
        queue = deque([i])
        while queue:
            j = queue.popleft()
            for _, nxt in tree_flip_neighbors(graph, trees[j]):
                k = index.get(nxt.key())
                if k is not None and not seen[k]:
                    seen[k] = True
                    comp.append(k)
                    queue.append(k)
        rep = trees[min(comp)]
        entries.append(CensusEntry(len(comp), rep, len(comp) == 1))
    return entries
