"""Command-line front end.

Subcommands: solve (polynomial deciders), oracle (exhaustive reachability
or component census), reduce (hardness-reduction instance generation),
crosscheck (solver-vs-oracle sweeps with a per-case CSV), gen (seeded
random instances).

Exit codes: 0 yes/success, 1 no/disagreement, 2 error or unsupported
class, 3 search budget exceeded.

Artifacts written to --output are pure functions of the inputs and seed,
so equal seeds give byte-identical files; console reports additionally
carry wall-clock timing.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from itertools import combinations
from typing import Optional

from . import gen, oracle, reductions
from .graph import (
    Graph,
    GraphError,
    LeafConstraint,
    SpanningTree,
    at_least,
    at_most,
    build_cotree,
    leaf_count,
    NotACograph,
    validate_interval,
)
from .jsonio import (
    Instance,
    MalformedInstance,
    dump_instance,
    flips_to_dict,
    instance_to_dict,
    load_instance,
)
from .solvers import (
    SolveOutcome,
    decide_cograph,
    decide_interval,
    decide_two_internal,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2
EXIT_BUDGET = 3


class UnsupportedClass(GraphError):
    pass


def _report(args, payload: dict, started: float) -> None:
    doc = {
        "command": "treeflip " + " ".join(sys.argv[1:]),
        "elapsed_ms": int((time.monotonic() - started) * 1000),
    }
    doc.update(payload)
    if getattr(args, "format", "json") == "text":
        for key in sorted(doc):
            print(f"{key}: {doc[key]}")
    else:
        print(json.dumps(doc, sort_keys=True, default=str))


def _budget(args) -> oracle.SearchBudget:
    return oracle.SearchBudget(
        max_states=args.budget_states, max_millis=args.budget_ms
    )


# --- solve --------------------------------------------------------------------


def _pick_class(inst: Instance, requested: str) -> str:
    graph = inst.graph
    if requested != "auto":
        return requested
    if inst.interval is not None and validate_interval(graph, inst.interval):
        return "interval"
    if not isinstance(build_cotree(graph), NotACograph):
        return "cograph"
    cons = inst.constraint
    if (
        cons is not None
        and cons.kind == "at_least"
        and graph.n - cons.bound <= 2
        and inst.source_tree is not None
        and inst.target_tree is not None
        and len(inst.source_tree.internal_nodes) <= 2
        and len(inst.target_tree.internal_nodes) <= 2
    ):
        return "two-internal"
    raise UnsupportedClass(
        "no polynomial solver applies; use the oracle subcommand"
    )


def cmd_solve(args) -> int:
    started = time.monotonic()
    try:
        inst = load_instance(args.input)
        if (
            inst.source_tree is None
            or inst.target_tree is None
            or inst.constraint is None
        ):
            raise MalformedInstance("solve needs source_tree, target_tree, constraint")
        cons = inst.constraint
        if cons.kind != "at_least":
            raise UnsupportedClass(
                "at_most bounds on general graphs are oracle territory"
            )
        cls = _pick_class(inst, args.cls)
        t1, t2 = inst.source_tree, inst.target_tree
        if cls == "interval":
            if inst.interval is None:
                raise UnsupportedClass("interval solver needs an interval certificate")
            out = decide_interval(inst.graph, inst.interval, cons.bound, t1, t2)
        elif cls == "cograph":
            out = decide_cograph(inst.graph, None, cons, t1, t2)
        elif cls == "two-internal":
            if inst.graph.n - cons.bound != 2:
                raise UnsupportedClass(
                    "two-internal solver needs the bound n-2"
                )
            out = decide_two_internal(inst.graph, t1, t2)
        else:
            raise UnsupportedClass(cls)
    except (GraphError, OSError) as exc:
        _report(args, {"error": f"{type(exc).__name__}: {exc}"}, started)
        return EXIT_ERROR
    payload: dict = {
        "class": cls,
        "decision": "yes" if out.decision else "no",
        "reason": out.reason,
    }
    if args.witness and out.witness is not None:
        payload["witness"] = flips_to_dict(out.witness)
    _report(args, payload, started)
    return EXIT_YES if out.decision else EXIT_NO


# --- oracle -------------------------------------------------------------------


def cmd_oracle(args) -> int:
    started = time.monotonic()
    try:
        inst = load_instance(args.input)
        if inst.constraint is None:
            raise MalformedInstance("oracle needs a constraint")
        if args.census:
            entries = oracle.component_census(
                inst.graph, inst.constraint, _budget(args)
            )
            payload = {
                "census": [
                    {
                        "size": e.size,
                        "frozen": e.frozen,
                        "representative": sorted(e.representative.edges),
                    }
                    for e in entries
                ]
            }
            _report(args, payload, started)
            return EXIT_YES
        if inst.source_tree is None or inst.target_tree is None:
            raise MalformedInstance("oracle reachability needs both trees")
        res = oracle.st_reachable(
            inst.graph,
            inst.source_tree,
            inst.target_tree,
            inst.constraint,
            _budget(args),
        )
    except (GraphError, OSError) as exc:
        _report(args, {"error": f"{type(exc).__name__}: {exc}"}, started)
        return EXIT_ERROR
    payload = {"status": res.status, "states_explored": res.states_explored}
    if args.witness and res.witness is not None:
        payload["witness"] = flips_to_dict(res.witness)
    _report(args, payload, started)
    if res.status == oracle.YES:
        return EXIT_YES
    if res.status == oracle.NO:
        return EXIT_NO
    return EXIT_BUDGET


# --- reduce -------------------------------------------------------------------


def _min_sets(graph: Graph, check) -> list[frozenset[int]]:
    for r in range(graph.n + 1):
        found = [
            frozenset(c) for c in combinations(range(graph.n), r) if check(frozenset(c))
        ]
        if found:
            return found
    raise AssertionError("V itself always qualifies")


def cmd_reduce(args) -> int:
    started = time.monotonic()
    try:
        src = load_instance(args.input)
        g = src.graph
        roles: dict
        if args.kind == "vc2st":
            k = args.k if args.k is not None else oracle.min_cover_size(g)
            covers = [
                frozenset(c)
                for c in combinations(range(g.n), k)
                if oracle.is_vertex_cover(g, frozenset(c))
            ]
            if not covers:
                raise GraphError(f"no vertex cover of size {k}")
            inst = reductions.build_vc_to_st_instance(g, k, args.target_leaves)
            t1 = reductions.cover_to_ham_path(inst, sorted(covers[0]))
            t2 = reductions.cover_to_ham_path(inst, sorted(covers[-1]))
            out = Instance(
                inst.graph,
                source_tree=t1,
                target_tree=t2,
                constraint=at_most(inst.target_leaves),
                roles=inst.roles(),
            )
        elif args.kind in ("ds2st-bip", "ds2st-split"):
            variant = "bipartite" if args.kind == "ds2st-bip" else "split"
            inst = reductions.build_ds_to_st_instance(g, variant)
            doms = _min_sets(g, lambda s: oracle.is_dominating_set(g, s))
            t1 = reductions.dominating_to_tree(inst, doms[0])
            t2 = reductions.dominating_to_tree(inst, doms[-1])
            bound = 3 * g.n + 2 - (len(doms[0]) + 2)
            out = Instance(
                inst.graph,
                source_tree=t1,
                target_tree=t2,
                constraint=at_least(max(2, bound)),
                roles=inst.roles(),
            )
        elif args.kind == "vc2st-planar":
            if src.embedding is None:
                raise MalformedInstance("vc2st-planar needs a faces object")
            inst = reductions.build_vc_to_st_planar(g, src.embedding)
            covers = _min_sets(g, lambda s: oracle.is_vertex_cover(g, s))
            t1 = reductions.planar_cover_tree(inst, covers[0])
            t2 = reductions.planar_cover_tree(inst, covers[-1])
            out = Instance(
                inst.graph,
                source_tree=t1,
                target_tree=t2,
                constraint=at_least(t1.leaf_count),
                roles=inst.roles(),
            )
        else:
            raise GraphError(f"unknown reduction kind {args.kind!r}")
        if args.output:
            dump_instance(out, args.output)
            payload = {"kind": args.kind, "artifact": args.output, "n": out.graph.n}
        else:
            payload = {"kind": args.kind, "instance": instance_to_dict(out)}
    except (GraphError, OSError) as exc:
        _report(args, {"error": f"{type(exc).__name__}: {exc}"}, started)
        return EXIT_ERROR
    _report(args, payload, started)
    return EXIT_YES


# --- crosscheck ---------------------------------------------------------------


def _case_trees(graph: Graph, rng: random.Random) -> tuple[SpanningTree, SpanningTree]:
    return (
        gen.random_spanning_tree(graph, rng.randrange(1 << 30)),
        gen.random_spanning_tree(graph, rng.randrange(1 << 30)),
    )


def _crosscheck_cograph(seed: int, count: int, budget) -> list[dict]:
    rows = []
    for i in range(count):
        rng = random.Random(seed * 100003 + i)
        n = rng.randint(4, 8)
        graph, _ = gen.random_connected_cograph(n, rng.randrange(1 << 30))
        k_int = rng.randint(1, 4)
        bound = max(2, n - k_int)
        t1, t2 = _case_trees(graph, rng)
        cons = at_least(bound)
        if not (cons.satisfied_by(t1) and cons.satisfied_by(t2)):
            rows.append(
                {"case": i, "suite": "cograph", "n": n, "detail": f"K={k_int}",
                 "expected": "skip", "got": "skip", "agree": 1}
            )
            continue
        got = decide_cograph(graph, None, cons, t1, t2).decision
        want = oracle.st_reachable(graph, t1, t2, cons, budget).is_yes
        rows.append(
            {"case": i, "suite": "cograph", "n": n, "detail": f"K={k_int}",
             "expected": int(want), "got": int(got), "agree": int(want == got)}
        )
    return rows


def _crosscheck_interval(seed: int, count: int, budget) -> list[dict]:
    rows = []
    for i in range(count):
        rng = random.Random(seed * 100019 + i)
        n = rng.randint(3, 8)
        graph, rep = gen.random_interval_representation(n, rng.randrange(1 << 30))
        k_int = rng.randint(1, n - 1)
        bound = max(2, n - k_int)
        t1, t2 = _case_trees(graph, rng)
        cons = at_least(bound)
        if not (cons.satisfied_by(t1) and cons.satisfied_by(t2)):
            rows.append(
                {"case": i, "suite": "interval", "n": n, "detail": f"K={k_int}",
                 "expected": "skip", "got": "skip", "agree": 1}
            )
            continue
        got = decide_interval(graph, rep, bound, t1, t2).decision
        want = oracle.st_reachable(graph, t1, t2, cons, budget).is_yes
        rows.append(
            {"case": i, "suite": "interval", "n": n, "detail": f"K={k_int}",
             "expected": int(want), "got": int(got), "agree": int(want == got)}
        )
    return rows


def _crosscheck_two_internal(seed: int, count: int, budget) -> list[dict]:
    rows = []
    for i in range(count):
        rng = random.Random(seed * 100043 + i)
        n = rng.randint(3, 8)
        graph = gen.random_connected_graph(n, rng.randrange(1 << 30))
        pool = [
            t
            for t in oracle.enumerate_spanning_trees(graph)
            if len(t.internal_nodes) <= 2
        ]
        if len(pool) < 2:
            rows.append(
                {"case": i, "suite": "two-internal", "n": n, "detail": "no pool",
                 "expected": "skip", "got": "skip", "agree": 1}
            )
            continue
        t1, t2 = rng.choice(pool), rng.choice(pool)
        got = decide_two_internal(graph, t1, t2).decision
        want = oracle.st_reachable(
            graph, t1, t2, at_least(max(2, n - 2)), budget
        ).is_yes
        rows.append(
            {"case": i, "suite": "two-internal", "n": n, "detail": "",
             "expected": int(want), "got": int(got), "agree": int(want == got)}
        )
    return rows


def _crosscheck_reductions(seed: int, count: int, budget) -> list[dict]:
    sources = [
        Graph.from_edges(2, [(0, 1)]),
        Graph.from_edges(3, [(0, 1), (1, 2)]),
        Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]),
        Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
        Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)]),
    ]
    rows = []
    for i in range(count):
        rng = random.Random(seed * 100057 + i)
        g = rng.choice(sources)
        k = oracle.min_cover_size(g) + rng.randint(0, 1)
        if k > g.n:
            k = g.n
        covers = [
            frozenset(c)
            for c in combinations(range(g.n), k)
            if oracle.is_vertex_cover(g, frozenset(c))
        ]
        c1, c2 = rng.choice(covers), rng.choice(covers)
        try:
            res = oracle.vc_tj_reachable(g, c1, c2, budget)
            ok = True
            if res.is_yes:
                inst = reductions.build_vc_to_st_instance(g, k, 3)
                seq = [tuple(sorted(s)) for s in res.witness] or [tuple(sorted(c1))]
                flips = reductions.cover_seq_to_flip_seq(inst, seq)
                start = reductions.cover_to_ham_path(inst, seq[0])
                from .graph import apply_flips

                end = apply_flips(inst.graph, start, flips, at_most(3))
                ok = (
                    reductions.extract_cover(inst, start) == frozenset(seq[0])
                    and reductions.extract_cover(inst, end) == frozenset(seq[-1])
                )
        except GraphError:
            ok = False
        rows.append(
            {"case": i, "suite": "reductions", "n": g.n,
             "detail": f"k={k}", "expected": 1, "got": int(ok), "agree": int(ok)}
        )
    return rows


_SUITES = {
    "cograph": _crosscheck_cograph,
    "interval": _crosscheck_interval,
    "two-internal": _crosscheck_two_internal,
    "reductions": _crosscheck_reductions,
}


def cmd_crosscheck(args) -> int:
    started = time.monotonic()
    names = sorted(_SUITES) if args.suite == "all" else [args.suite]
    budget = _budget(args)
    rows: list[dict] = []
    for name in names:
        rows.extend(_SUITES[name](args.seed, args.count, budget))
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf, fieldnames=["case", "suite", "n", "detail", "expected", "got", "agree"]
    )
    writer.writeheader()
    for row in sorted(rows, key=lambda r: (r["suite"], r["case"])):
        writer.writerow(row)
    out_path = args.output or "crosscheck.csv"
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())
    disagreements = sum(1 for r in rows if not r["agree"])
    payload = {
        "suites": names,
        "cases": len(rows),
        "disagreements": disagreements,
        "csv": out_path,
        "seed": args.seed,
    }
    if len(rows) == 0:
        payload["warning"] = "0 cases: vacuous pass"
    _report(args, payload, started)
    return EXIT_YES if disagreements == 0 else EXIT_NO


# --- gen ----------------------------------------------------------------------


def cmd_gen(args) -> int:
    started = time.monotonic()
    try:
        n, seed = args.n, args.seed
        if n < 1 or n > oracle.max_oracle_n():
            raise GraphError(f"n must be in 1..{oracle.max_oracle_n()}")
        interval = None
        embedding = None
        if args.kind == "interval":
            graph, interval = gen.random_interval_representation(n, seed)
            assert validate_interval(graph, interval)
        elif args.kind == "cograph":
            graph, _ = gen.random_connected_cograph(n, seed)
            assert not isinstance(build_cotree(graph), NotACograph)
        elif args.kind == "planar-embedded":
            _, graph, embedding = gen.random_embedded_planar(seed)
        elif args.kind == "connected":
            graph = gen.random_connected_graph(n, seed)
        else:
            raise GraphError(f"unknown generator kind {args.kind!r}")
        source = target = None
        constraint = None
        if graph.n >= 2 and graph.is_connected():
            source = gen.random_spanning_tree(graph, seed * 2 + 1)
            target = gen.random_spanning_tree(graph, seed * 2 + 2)
            constraint = at_least(
                max(2, min(leaf_count(source), leaf_count(target)))
            )
        out = Instance(
            graph,
            interval=interval,
            embedding=embedding,
            source_tree=source,
            target_tree=target,
            constraint=constraint,
        )
        if args.output:
            dump_instance(out, args.output)
            payload = {"kind": args.kind, "artifact": args.output, "n": graph.n}
        else:
            payload = {"kind": args.kind, "instance": instance_to_dict(out)}
    except (GraphError, OSError) as exc:
        _report(args, {"error": f"{type(exc).__name__}: {exc}"}, started)
        return EXIT_ERROR
    _report(args, payload, started)
    return EXIT_YES


# --- parser -------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-states", type=int, default=10**6)
    p.add_argument("--budget-ms", type=int, default=600_000)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--witness", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="treeflip",
        description="spanning-tree edge-flip reconfiguration toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run a polynomial decider")
    p.add_argument("--input", required=True)
    p.add_argument(
        "--class",
        dest="cls",
        choices=["auto", "cograph", "interval", "two-internal"],
        default="auto",
    )
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exhaustive reachability / census")
    p.add_argument("--input", required=True)
    p.add_argument("--census", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", help="emit a hardness-reduction instance")
    p.add_argument(
        "kind", choices=["vc2st", "ds2st-bip", "ds2st-split", "vc2st-planar"]
    )
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--target-leaves", type=int, default=3)
    _add_common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("crosscheck", help="solver-vs-oracle sweeps")
    p.add_argument(
        "--suite",
        choices=["cograph", "interval", "two-internal", "reductions", "all"],
        default="all",
    )
    p.add_argument("--count", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("gen", help="seeded random instance")
    p.add_argument(
        "kind", choices=["interval", "cograph", "planar-embedded", "connected"]
    )
    p.add_argument("--n", type=int, default=6)
    _add_common(p)
    p.set_defaults(func=cmd_gen)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
