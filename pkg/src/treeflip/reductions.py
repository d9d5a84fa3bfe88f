"""Reduction constructors between cover problems and spanning-tree flips.

Three families: vertex cover -> few-leaf spanning trees (edge gadgets plus
a hub independent set), dominating set -> many-leaf spanning trees on
bipartite or split graphs, and planar vertex cover -> many-leaf spanning
trees on embedded planar graphs.  Plus two outerplanar obstruction
families.  All constructors are pure and every emitted tree is validated.

The 12-vertex edge gadget is certified at build time: an exhaustive search
confirms that no Hamiltonian path of the gadget crosses between its two
endpoint sides, and a full enumeration of degree-regular configurations
rederives the only three viable traversal patterns (one with four boundary
edges, two mirror patterns with two).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .graph import (
    Edge,
    EdgeFlip,
    FlipSequence,
    Graph,
    GraphError,
    InvalidEmbedding,
    LeafConstraint,
    PlanarEmbedding,
    SpanningTree,
    apply_flip,
    apply_flips,
    at_least,
    at_most,
    is_spanning_tree,
    norm_edge,
    validate_embedding,
)
from .oracle import (
    NotADominatingSet,
    is_dominating_set,
    is_vertex_cover,
    min_cover_size,
)


class NotACover(GraphError):
    pass


class WrongCoverSize(GraphError):
    pass


class NotTJAdjacent(GraphError):
    pass


class ContractViolation(GraphError):
    """An emitted object falsifies a structural guarantee of the reduction."""


class NotMinimumCover(GraphError):
    pass


# --- the 12-vertex edge gadget -----------------------------------------------

# Role indices.  Side 1 serves the smaller source endpoint, side 2 the
# larger: (x, r, r, r, r, y) per side, with four cross edges.
_X1, _Y1, _X2, _Y2 = 0, 5, 6, 11
_SIDE1 = (0, 1, 2, 3, 4, 5)
_SIDE2 = (6, 7, 8, 9, 10, 11)
_SIDE1_PATH = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5))
_SIDE2_PATH = ((6, 7), (7, 8), (8, 9), (9, 10), (10, 11))
_CROSS = ((0, 8), (2, 6), (5, 9), (3, 11))
_GADGET_EDGES = _SIDE1_PATH + _SIDE2_PATH + _CROSS
_SPECIALS = (_X1, _Y1, _X2, _Y2)


@lru_cache(maxsize=1)
def certify_gadget() -> dict:
    """Exhaustively certify the gadget and derive its traversal patterns.

    Returns {"pattern_a": edges, "pattern_b": {covered_side: edges}} in
    role-index space.  Any failed assertion is a hard build error.
    """
    adj: dict[int, set[int]] = {v: set() for v in range(12)}
    for (a, b) in _GADGET_EDGES:
        adj[a].add(b)
        adj[b].add(a)
    for r in (1, 4, 7, 10):
        assert len(adj[r]) == 2, "inner endpoints must have gadget degree 2"
    for s in _SPECIALS:
        assert len(adj[s]) == 2, "special vertices must have gadget degree 2"

    # no Hamiltonian path may join one side's specials to the other's
    end_pairs: set[tuple[int, int]] = set()
    for s in _SPECIALS:
        stack: list[tuple[int, frozenset[int]]] = [(s, frozenset([s]))]
        while stack:
            v, seen = stack.pop()
            if len(seen) == 12:
                end_pairs.add((s, v))
                continue
            for w in adj[v]:
                if w not in seen:
                    stack.append((w, seen | {w}))
    side1 = {_X1, _Y1}
    for (a, b) in end_pairs:
        if b not in _SPECIALS:
            continue
        assert (a in side1) == (
            b in side1
        ), "crossing Hamiltonian path would break the reduction"

    # enumerate degree-regular configurations: inner vertices of degree 2,
    # specials of degree 1 or 2, acyclic, every component touching a
    # degree-1 special (its boundary edge into the rest of the host graph)
    def forest_components(es):
        parent = list(range(12))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (a, b) in es:
            ra, rb = find(a), find(b)
            if ra == rb:
                return None
            parent[ra] = rb
        comps: dict[int, set[int]] = {}
        for v in range(12):
            comps.setdefault(find(v), set()).add(v)
        return list(comps.values())

    by_boundary: dict[frozenset[int], list[frozenset[Edge]]] = {}
    inner = [v for v in range(12) if v not in _SPECIALS]
    for bits in range(1 << len(_GADGET_EDGES)):
        es = [_GADGET_EDGES[i] for i in range(len(_GADGET_EDGES)) if bits >> i & 1]
        deg = [0] * 12
        for (a, b) in es:
            deg[a] += 1
            deg[b] += 1
        if any(deg[v] != 2 for v in inner):
            continue
        if any(deg[s] not in (1, 2) for s in _SPECIALS):
            continue
        comps = forest_components(es)
        if comps is None:
            continue
        boundary = frozenset(s for s in _SPECIALS if deg[s] == 1)
        if any(not (c & boundary) for c in comps):
            continue
        by_boundary.setdefault(boundary, []).append(frozenset(es))

    expect_a = frozenset(_SIDE1_PATH) | frozenset(_SIDE2_PATH)
    assert by_boundary.get(frozenset(_SPECIALS)) == [expect_a]
    b1 = by_boundary.get(frozenset({_X1, _Y1}))
    b2 = by_boundary.get(frozenset({_X2, _Y2}))
    assert b1 is not None and len(b1) == 1
    assert b2 is not None and len(b2) == 1
    assert len(by_boundary) == 3, "no other regular traversal exists"
    return {"pattern_a": expect_a, "pattern_b": {1: b1[0], 2: b2[0]}}


@dataclass(frozen=True)
class EdgeGadget:
    """One source edge blown up into 12 vertices and 14 internal edges."""

    u: int  # smaller source endpoint, mapped to side 1
    v: int  # larger source endpoint, mapped to side 2
    base: int  # first of 12 consecutive global vertex ids

    def __post_init__(self) -> None:
        if not self.u < self.v:
            raise GraphError("gadget endpoints must be ordered")
        certify_gadget()

    def vertex(self, role: int) -> int:
        return self.base + role

    @property
    def vertices(self) -> range:
        return range(self.base, self.base + 12)

    def _side(self, endpoint: int) -> int:
        if endpoint == self.u:
            return 1
        if endpoint == self.v:
            return 2
        raise GraphError(f"{endpoint} is not an endpoint of this gadget")

    def x(self, endpoint: int) -> int:
        return self.vertex(_X1 if self._side(endpoint) == 1 else _X2)

    def y(self, endpoint: int) -> int:
        return self.vertex(_Y1 if self._side(endpoint) == 1 else _Y2)

    def _lift(self, role_edges: Iterable[tuple[int, int]]) -> frozenset[Edge]:
        return frozenset(
            norm_edge(self.vertex(a), self.vertex(b)) for (a, b) in role_edges
        )

    def local_edges(self) -> frozenset[Edge]:
        return self._lift(_GADGET_EDGES)

    def side_path_edges(self, endpoint: int) -> frozenset[Edge]:
        path = _SIDE1_PATH if self._side(endpoint) == 1 else _SIDE2_PATH
        return self._lift(path)

    def pattern_a_edges(self) -> frozenset[Edge]:
        return self._lift(certify_gadget()["pattern_a"])

    def pattern_b_edges(self, covered: int) -> frozenset[Edge]:
        return self._lift(certify_gadget()["pattern_b"][self._side(covered)])


# --- few-leaves instance (vertex cover source) -------------------------------


@dataclass(frozen=True, eq=False)
class FewLeavesInstance:
    """Host graph for the cover -> few-leaf-tree reduction."""

    graph: Graph
    source: Graph
    k: int
    target_leaves: int
    gadgets: dict[Edge, EdgeGadget]
    z: tuple[int, ...]
    pendants: tuple[int, ...]
    edge_order: dict[int, tuple[Edge, ...]]

    @property
    def s1(self) -> int:
        return self.pendants[0]

    @property
    def s2(self) -> int:
        return self.pendants[1]

    def first_entering(self, v: int) -> int:
        return self.gadgets[self.edge_order[v][0]].x(v)

    def last_exit(self, v: int) -> int:
        return self.gadgets[self.edge_order[v][-1]].y(v)

    def special_edges(self, v: int) -> list[Edge]:
        order = self.edge_order[v]
        out = []
        for e, nxt in zip(order, order[1:]):
            out.append(norm_edge(self.gadgets[e].y(v), self.gadgets[nxt].x(v)))
        return out

    def roles(self) -> dict:
        return {
            "gadgets": {
                f"{u}-{v}": list(g.vertices) for (u, v), g in self.gadgets.items()
            },
            "Z": list(self.z),
            "pendants": list(self.pendants),
        }


def build_vc_to_st_instance(
    source: Graph, k: int, target_leaves: int = 3
) -> FewLeavesInstance:
    if not source.is_connected() or source.n == 0:
        raise GraphError("source graph must be connected")
    if k < 1:
        raise GraphError("cover size must be at least 1")
    if target_leaves < 3:
        raise GraphError("target leaf bound must be at least 3")
    certify_gadget()
    src_edges = source.sorted_edges()
    gadgets: dict[Edge, EdgeGadget] = {}
    nxt = 0
    for (u, v) in src_edges:
        gadgets[(u, v)] = EdgeGadget(u, v, nxt)
        nxt += 12
    z = tuple(range(nxt, nxt + k + 1))
    nxt += k + 1
    npend = 2 if target_leaves == 3 else target_leaves
    pendants = tuple(range(nxt, nxt + npend))
    nxt += npend
    edge_order = {
        v: tuple(e for e in src_edges if v in e) for v in range(source.n)
    }

    edges: set[Edge] = set()
    for g in gadgets.values():
        edges |= g.local_edges()
    for v in range(source.n):
        order = edge_order[v]
        for e, e2 in zip(order, order[1:]):
            edges.add(norm_edge(gadgets[e].y(v), gadgets[e2].x(v)))
        for zz in z:
            edges.add(norm_edge(zz, gadgets[order[0]].x(v)))
            edges.add(norm_edge(zz, gadgets[order[-1]].y(v)))
    edges.add(norm_edge(pendants[0], z[0]))
    edges.add(norm_edge(pendants[1], z[-1]))
    for extra in pendants[2:]:
        edges.add(norm_edge(extra, pendants[0]))
    graph = Graph(nxt, frozenset(edges))
    assert graph.n == 12 * source.m + (k + 1) + npend
    return FewLeavesInstance(
        graph, source, k, target_leaves, gadgets, z, pendants, edge_order
    )


def _check_cover(inst: FewLeavesInstance, cover: Sequence[int]) -> tuple[int, ...]:
    xs = tuple(cover)
    if len(set(xs)) != len(xs) or len(xs) != inst.k:
        raise WrongCoverSize(f"expected an ordered cover of size {inst.k}")
    if not is_vertex_cover(inst.source, frozenset(xs)):
        raise NotACover(str(list(xs)))
    return xs


def cover_to_ham_path(inst: FewLeavesInstance, cover: Sequence[int]) -> SpanningTree:
    """The Hamiltonian-path-like spanning tree associated with an ordered cover."""
    xs = _check_cover(inst, cover)
    xset = frozenset(xs)
    edges: set[Edge] = set()
    edges.add(norm_edge(inst.s1, inst.z[0]))
    edges.add(norm_edge(inst.s2, inst.z[-1]))
    for extra in inst.pendants[2:]:
        edges.add(norm_edge(extra, inst.s1))
    for i, v in enumerate(xs):
        edges.add(norm_edge(inst.z[i], inst.first_entering(v)))
        edges.add(norm_edge(inst.z[i + 1], inst.last_exit(v)))
        edges.update(inst.special_edges(v))
    for (p, q), gad in inst.gadgets.items():
        if p in xset and q in xset:
            edges |= gad.pattern_a_edges()
        elif p in xset:
            edges |= gad.pattern_b_edges(p)
        elif q in xset:
            edges |= gad.pattern_b_edges(q)
        else:
            raise NotACover(f"edge ({p}, {q}) uncovered")
    tree = SpanningTree(inst.graph.n, frozenset(edges))
    assert is_spanning_tree(inst.graph, tree.edges)
    assert tree.leaf_count == max(2, inst.target_leaves - 1)
    return tree


def extract_cover(inst: FewLeavesInstance, tree: SpanningTree) -> frozenset[int]:
    """Good vertices of a few-leaf tree: a cover of size at most k+1."""
    if tree.leaf_count > inst.target_leaves:
        raise GraphError("tree has too many leaves for this instance")
    good: set[int] = set()
    for gad in inst.gadgets.values():
        ids = set(gad.vertices)
        for endpoint in (gad.u, gad.v):
            for sp in (gad.x(endpoint), gad.y(endpoint)):
                inside = sum(
                    1 for w in tree.neighbors_in_tree(sp) if w in ids
                )
                if inside == 1:
                    good.add(endpoint)
    if not is_vertex_cover(inst.source, frozenset(good)):
        raise ContractViolation(f"good vertices {sorted(good)} do not cover")
    if len(good) > inst.k + 1:
        raise ContractViolation(f"{len(good)} good vertices, cap {inst.k + 1}")
    return frozenset(good)


# --- associated-path surgery -------------------------------------------------


def _spine(inst: FewLeavesInstance, tree: SpanningTree) -> list[int]:
    """Vertex sequence of the s1..s2 spine of an associated path."""
    skip = set(inst.pendants[2:])
    path = [inst.s1]
    prev: Optional[int] = None
    cur = inst.s1
    while cur != inst.s2:
        nbs = [w for w in tree.neighbors_in_tree(cur) if w != prev and w not in skip]
        if len(nbs) != 1:
            raise GraphError("tree is not an associated path")
        prev, cur = cur, nbs[0]
        path.append(cur)
    if len(path) + len(skip) != inst.graph.n:
        raise GraphError("tree is not an associated path")
    return path


def _tokens(
    inst: FewLeavesInstance, path: list[int]
) -> list[tuple[tuple, int, int]]:
    """Split a spine into (descriptor, start, end) tokens.

    Descriptors: ("s", id) for the pendant ends, ("z", id) for hub
    vertices, ("blk", source vertex, forward?) for traversed blocks.
    """
    zset = set(inst.z)
    first = {inst.first_entering(v): v for v in range(inst.source.n)}
    last = {inst.last_exit(v): v for v in range(inst.source.n)}
    toks: list[tuple[tuple, int, int]] = []
    i = 0
    while i < len(path):
        v = path[i]
        if v in (inst.s1, inst.s2):
            toks.append((("s", v), i, i))
            i += 1
        elif v in zset:
            toks.append((("z", v), i, i))
            i += 1
        else:
            if v in first:
                owner, fwd = first[v], True
                stop = inst.last_exit(owner)
            elif v in last:
                owner, fwd = last[v], False
                stop = inst.first_entering(owner)
            else:
                raise GraphError("block does not start at an entry vertex")
            j = i
            while path[j] != stop:
                j += 1
            toks.append((("blk", owner, fwd), i, j))
            i = j + 1
    return toks


def _reverse_segment(
    inst: FewLeavesInstance, tree: SpanningTree, path: list[int], a: int, b: int
) -> tuple[list[EdgeFlip], SpanningTree]:
    """Reverse spine positions a..b with two flips (hub edges exist by wiring)."""
    f1 = EdgeFlip(norm_edge(path[a - 1], path[a]), norm_edge(path[a - 1], path[b]))
    f2 = EdgeFlip(norm_edge(path[b], path[b + 1]), norm_edge(path[a], path[b + 1]))
    tree = apply_flip(inst.graph, tree, f1)
    tree = apply_flip(inst.graph, tree, f2)
    return [f1, f2], tree


def _reorder_to(
    inst: FewLeavesInstance, tree: SpanningTree, order: Sequence[int]
) -> tuple[list[EdgeFlip], SpanningTree]:
    """Permute hub/block tokens until the tree equals the associated path."""
    target = cover_to_ham_path(inst, order)
    want = _tokens(inst, _spine(inst, target))
    flips: list[EdgeFlip] = []
    for _ in range(4 * len(want) + 4):
        if tree.edges == target.edges:
            return flips, tree
        path = _spine(inst, tree)
        have = _tokens(inst, path)
        assert len(have) == len(want)
        i = next(t for t in range(len(want)) if have[t][0] != want[t][0])
        wd = want[i][0]
        j = None
        for t in range(i, len(have)):
            hd = have[t][0]
            if hd[:2] == wd[:2] and (
                wd[0] != "blk" or t == i or hd[2] != wd[2]
            ):
                j = t
                break
        if j is None:
            j = next(t for t in range(i, len(have)) if have[t][0][:2] == wd[:2])
        fs, tree = _reverse_segment(inst, tree, path, have[i][1], have[j][2])
        flips.extend(fs)
    raise AssertionError("reordering did not converge")


def _two_flips(
    inst: FewLeavesInstance,
    tree: SpanningTree,
    removals: frozenset[Edge],
    adds: frozenset[Edge],
) -> tuple[list[EdgeFlip], SpanningTree]:
    """Realize a two-edge exchange in some valid, leaf-bounded order."""
    cons = at_most(inst.target_leaves)
    r1, r2 = sorted(removals)
    a1, a2 = sorted(adds)
    for seq in (
        (EdgeFlip(r1, a1), EdgeFlip(r2, a2)),
        (EdgeFlip(r1, a2), EdgeFlip(r2, a1)),
        (EdgeFlip(r2, a1), EdgeFlip(r1, a2)),
        (EdgeFlip(r2, a2), EdgeFlip(r1, a1)),
    ):
        try:
            out = apply_flips(inst.graph, tree, seq, cons)
        except GraphError:
            continue
        return list(seq), out
    raise AssertionError("no valid order for the local gadget exchange")


def _route_to_half(
    inst: FewLeavesInstance, tree: SpanningTree, a: int, b: int
) -> tuple[list[EdgeFlip], SpanningTree]:
    """From the canonical path of [a]+rest, grow b's chain into a half path.

    The hub z1 is rewired from a's entry to b's entry, then each gadget on
    b is locally exchanged so that b's side path joins the growing chain,
    whose tail finally lands on z2.  Each local exchange swaps exactly two
    edges; the order is found by trying both and keeping the leaf bound.
    """
    flips: list[EdgeFlip] = []
    z1, z2 = inst.z[0], inst.z[1]
    f0 = EdgeFlip(
        norm_edge(z1, inst.first_entering(a)), norm_edge(z1, inst.first_entering(b))
    )
    tree = apply_flip(inst.graph, tree, f0)
    flips.append(f0)
    order = inst.edge_order[b]
    for j, e in enumerate(order):
        gad = inst.gadgets[e]
        other = gad.u if gad.v == b else gad.v
        attach = (
            inst.gadgets[order[j + 1]].x(b) if j + 1 < len(order) else z2
        )
        ids = set(gad.vertices)
        cur = frozenset(
            ed for ed in tree.edges if ed[0] in ids and ed[1] in ids
        )
        target = gad.side_path_edges(b) | gad.side_path_edges(other)
        removals = cur - target
        adds = (target - cur) | {norm_edge(gad.y(b), attach)}
        assert len(removals) == 2 and len(adds) == 2
        fs, tree = _two_flips(inst, tree, removals, adds)
        flips.extend(fs)
    return flips, tree


def _tj_step(
    inst: FewLeavesInstance, tree: SpanningTree, rest: Sequence[int], u: int, v: int
) -> tuple[list[EdgeFlip], SpanningTree]:
    """Canonical path of [u]+rest -> canonical path of [v]+rest."""
    flips, tree = _route_to_half(inst, tree, u, v)
    mid = EdgeFlip(
        norm_edge(inst.z[0], inst.first_entering(v)),
        norm_edge(inst.z[0], inst.first_entering(u)),
    )
    tree = apply_flip(inst.graph, tree, mid)
    flips.append(mid)
    scratch = cover_to_ham_path(inst, (v, *rest))
    back, half2 = _route_to_half(inst, scratch, v, u)
    assert half2.edges == tree.edges, "half paths must meet after the hub flip"
    inv = [f.inverse() for f in reversed(back)]
    tree = apply_flips(inst.graph, tree, inv)
    assert tree.edges == scratch.edges
    flips.extend(inv)
    return flips, tree


def cover_seq_to_flip_seq(
    inst: FewLeavesInstance, covers: Sequence[Sequence[int]]
) -> FlipSequence:
    """Compile a token-jump cover sequence into a validated flip sequence.

    Transforms the associated path of the first ordered cover into the
    associated path of the last one; every intermediate tree keeps at most
    target_leaves leaves.
    """
    if not covers:
        raise GraphError("need at least one cover")
    orders = [_check_cover(inst, c) for c in covers]
    start = cover_to_ham_path(inst, orders[0])
    tree = start
    flips: list[EdgeFlip] = []
    cur = orders[0]
    for nxt in orders[1:]:
        cs, ns = frozenset(cur), frozenset(nxt)
        if cs == ns:
            continue
        out, inn = cs - ns, ns - cs
        if len(out) != 1 or len(inn) != 1:
            raise NotTJAdjacent(f"{sorted(cs)} -> {sorted(ns)}")
        (u,), (v,) = out, inn
        rest = tuple(sorted(cs & ns))
        fs, tree = _reorder_to(inst, tree, (u, *rest))
        flips.extend(fs)
        fs, tree = _tj_step(inst, tree, rest, u, v)
        flips.extend(fs)
        cur = (v, *rest)
    fs, tree = _reorder_to(inst, tree, orders[-1])
    flips.extend(fs)
    final = apply_flips(inst.graph, start, flips, at_most(inst.target_leaves))
    assert final.edges == cover_to_ham_path(inst, orders[-1]).edges
    return tuple(flips)


# --- dominating set -> many-leaf trees ---------------------------------------


@dataclass(frozen=True, eq=False)
class ManyLeavesBipartiteInstance:
    graph: Graph
    source: Graph
    a: tuple[int, ...]
    b: tuple[tuple[int, int], ...]
    x: int
    y: int

    def roles(self) -> dict:
        return {
            "A": list(self.a),
            "B": [list(p) for p in self.b],
            "x": self.x,
            "y": self.y,
        }


@dataclass(frozen=True, eq=False)
class ManyLeavesSplitInstance(ManyLeavesBipartiteInstance):
    pass


def build_ds_to_st_instance(source: Graph, variant: str = "bipartite"):
    """Doubled closed-neighborhood incidence graph plus a pinned hub."""
    if variant not in ("bipartite", "split"):
        raise GraphError(f"unknown variant {variant!r}")
    n = source.n
    a = tuple(range(n))
    b = tuple((n + 2 * i, n + 2 * i + 1) for i in range(n))
    x, y = 3 * n, 3 * n + 1
    edges: set[Edge] = set()
    for i in range(n):
        closed = set(source.neighbors(i)) | {i}
        for j in closed:
            edges.add(norm_edge(a[i], b[j][0]))
            edges.add(norm_edge(a[i], b[j][1]))
        edges.add(norm_edge(x, a[i]))
    edges.add(norm_edge(x, y))
    if variant == "split":
        for i in range(n):
            for j in range(i + 1, n):
                edges.add(norm_edge(a[i], a[j]))
    graph = Graph(3 * n + 2, frozenset(edges))
    cls = ManyLeavesSplitInstance if variant == "split" else ManyLeavesBipartiteInstance
    return cls(graph, source, a, b, x, y)


def dominating_to_tree(
    inst: ManyLeavesBipartiteInstance, dom: Iterable[int]
) -> SpanningTree:
    """Spanning tree with internal nodes {x} plus the A-copies of dom."""
    d = sorted(set(dom))
    if not is_dominating_set(inst.source, frozenset(d)):
        raise NotADominatingSet(str(d))
    n = inst.source.n
    edges: set[Edge] = set()
    edges.add(norm_edge(inst.x, inst.y))
    for i in range(n):
        edges.add(norm_edge(inst.x, inst.a[i]))
    host = {}
    for j in range(n):
        closed = set(inst.source.neighbors(j)) | {j}
        host[j] = min(i for i in d if i in closed)
    for j in range(n):
        edges.add(norm_edge(inst.a[host[j]], inst.b[j][0]))
        edges.add(norm_edge(inst.a[host[j]], inst.b[j][1]))
    # a redundant member of dom may host nothing under the smallest-index
    # rule; park its own twin there so in(T) cap A is exactly dom
    for i in d:
        if i not in host.values():
            edges.discard(norm_edge(inst.a[host[i]], inst.b[i][1]))
            edges.add(norm_edge(inst.a[i], inst.b[i][1]))
    tree = SpanningTree(inst.graph.n, frozenset(edges))
    assert is_spanning_tree(inst.graph, tree.edges)
    assert tree.leaf_count == 3 * n + 2 - (len(d) + 1)
    assert tree.internal_nodes & frozenset(inst.a) == frozenset(inst.a[i] for i in d)
    return tree


# --- planar vertex cover -> many-leaf trees ----------------------------------


@dataclass(frozen=True, eq=False)
class ManyLeavesPlanarInstance:
    graph: Graph
    source: Graph
    embedding: PlanarEmbedding
    faces: tuple[tuple[int, ...], ...]  # reordered, outer face first
    edge_vertex: dict[Edge, int]
    face_vertex: tuple[int, ...]
    leaf_vertex: tuple[int, ...]

    def roles(self) -> dict:
        return {
            "edge_vertices": {f"{u}-{v}": w for (u, v), w in self.edge_vertex.items()},
            "face_vertices": list(self.face_vertex),
            "leaf_vertices": list(self.leaf_vertex),
        }


def build_vc_to_st_planar(
    source: Graph, emb: PlanarEmbedding
) -> ManyLeavesPlanarInstance:
    """Subdivide edges, add one pendant-carrying vertex per face."""
    if not validate_embedding(source, emb):
        raise InvalidEmbedding("face list does not embed the graph")
    n, m = source.n, source.m
    faces = (emb.faces[emb.outer],) + tuple(
        f for i, f in enumerate(emb.faces) if i != emb.outer
    )
    nf = len(faces)
    edge_vertex = {e: n + i for i, e in enumerate(source.sorted_edges())}
    face_vertex = tuple(n + m + i for i in range(nf))
    leaf_vertex = tuple(n + m + nf + i for i in range(nf))
    edges: set[Edge] = set()
    for (u, v), w in edge_vertex.items():
        edges.add(norm_edge(u, w))
        edges.add(norm_edge(v, w))
    for i, f in enumerate(faces):
        for u in set(f):
            edges.add(norm_edge(u, face_vertex[i]))
        edges.add(norm_edge(face_vertex[i], leaf_vertex[i]))
    graph = Graph(n + m + 2 * nf, frozenset(edges))
    return ManyLeavesPlanarInstance(
        graph, source, emb, faces, edge_vertex, face_vertex, leaf_vertex
    )


def planar_cover_tree(
    inst: ManyLeavesPlanarInstance, cover: Iterable[int]
) -> SpanningTree:
    """Canonical tree of a minimum cover: exactly 2(|E|+1) - |C| leaves."""
    c = frozenset(cover)
    if not is_vertex_cover(inst.source, c) or len(c) != min_cover_size(inst.source):
        raise NotMinimumCover(str(sorted(c)))
    edges: set[Edge] = set()
    for (u, v), w in inst.edge_vertex.items():
        edges.add(norm_edge(min(p for p in (u, v) if p in c), w))
    for i in range(len(inst.faces)):
        edges.add(norm_edge(inst.face_vertex[i], inst.leaf_vertex[i]))
    face_edges = [
        frozenset(
            norm_edge(f[j], f[(j + 1) % len(f)]) for j in range(len(f))
        )
        for f in inst.faces
    ]
    assigned: set[int] = set()
    for u in set(inst.faces[0]):
        edges.add(norm_edge(u, inst.face_vertex[0]))
        assigned.add(u)
    seen = {0}
    queue = [0]
    while queue:
        p = queue.pop(0)
        for i in range(len(inst.faces)):
            if i in seen or not (face_edges[i] & face_edges[p]):
                continue
            seen.add(i)
            queue.append(i)
            anchor = min(
                min(q for q in e if q in c) for e in face_edges[i] & face_edges[p]
            )
            for u in set(inst.faces[i]) - assigned:
                edges.add(norm_edge(u, inst.face_vertex[i]))
                assigned.add(u)
            edges.add(norm_edge(anchor, inst.face_vertex[i]))
    tree = SpanningTree(inst.graph.n, frozenset(edges))
    assert is_spanning_tree(inst.graph, tree.edges)
    assert tree.leaf_count == 2 * (inst.source.m + 1) - len(c)
    return tree


# --- outerplanar obstruction families ----------------------------------------


def outerplanar_obstruction(
    family: str, size: int
) -> tuple[Graph, SpanningTree, SpanningTree, LeafConstraint]:
    """Frozen maximum-leaf instances on outerplanar graphs.

    chorded-c4: a 4-cycle 0-1-2-3 with chord 0-2; the two opposite stars.
    parallel-ladder: two a..b paths through p- and q-vertices with all
    interior rungs p_i q_i; the two one-sided spine trees.
    """
    name = family.replace("-", "").replace("_", "").lower()
    if name == "chordedc4":
        if size != 4:
            raise GraphError("chorded C4 has exactly 4 vertices")
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
        t1 = SpanningTree.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        t2 = SpanningTree.from_edges(4, [(2, 1), (2, 0), (2, 3)])
        return g, t1, t2, at_least(3)
    if name == "parallelladder":
        m = size
        if m < 2:
            raise GraphError("ladder needs at least 2 rungs")
        a, b = 0, 1
        p = [2 + i for i in range(m)]
        q = [2 + m + i for i in range(m)]
        es = [(a, p[0]), (a, q[0]), (p[-1], b), (q[-1], b)]
        es += list(zip(p, p[1:])) + list(zip(q, q[1:]))
        es += list(zip(p, q))
        g = Graph.from_edges(2 * m + 2, es)
        spine1 = [(a, p[0]), (p[-1], b)] + list(zip(p, p[1:])) + list(zip(p, q))
        spine2 = [(a, q[0]), (q[-1], b)] + list(zip(q, q[1:])) + list(zip(p, q))
        t1 = SpanningTree.from_edges(g.n, spine1)
        t2 = SpanningTree.from_edges(g.n, spine2)
        assert t1.leaf_count == t2.leaf_count == m + 2
        return g, t1, t2, at_least(m + 2)
    raise GraphError(f"unknown obstruction family {family!r}")
