"""UTF-8 JSON instance schema.

Instance documents:
  { "n": int, "edges": [[u,v],...],
    "interval": [[l_num,l_den,r_num,r_den],...]?,
    "faces": {"outer": int, "cycles": [[...],...]}?,
    "source_tree": [[u,v],...]?, "target_tree": [[u,v],...]?,
    "constraint": {"kind":"at_least"|"at_most", "leaves": int}? }

Witnesses: {"flips": [{"remove":[u,v],"add":[u,v]},...]}.
Solver output: {"decision":"yes"|"no","witness":[...]?,"diagnostics":{...}}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import (
    EdgeFlip,
    FlipSequence,
    Graph,
    GraphError,
    IntervalRepresentation,
    LeafConstraint,
    PlanarEmbedding,
    SpanningTree,
)


class MalformedInstance(GraphError):
    pass


@dataclass(frozen=True)
class Instance:
    graph: Graph
    interval: Optional[IntervalRepresentation] = None
    embedding: Optional[PlanarEmbedding] = None
    source_tree: Optional[SpanningTree] = None
    target_tree: Optional[SpanningTree] = None
    constraint: Optional[LeafConstraint] = None
    roles: Optional[dict] = None


def instance_to_dict(inst: Instance) -> dict:
    doc: dict = {
        "n": inst.graph.n,
        "edges": [[u, v] for (u, v) in inst.graph.sorted_edges()],
    }
    if inst.interval is not None:
        doc["interval"] = [
            [l.numerator, l.denominator, r.numerator, r.denominator]
            for (l, r) in inst.interval.intervals
        ]
    if inst.embedding is not None:
        doc["faces"] = {
            "outer": inst.embedding.outer,
            "cycles": [list(f) for f in inst.embedding.faces],
        }
    if inst.source_tree is not None:
        doc["source_tree"] = [[u, v] for (u, v) in sorted(inst.source_tree.edges)]
    if inst.target_tree is not None:
        doc["target_tree"] = [[u, v] for (u, v) in sorted(inst.target_tree.edges)]
    if inst.constraint is not None:
        doc["constraint"] = {
            "kind": inst.constraint.kind,
            "leaves": inst.constraint.bound,
        }
    if inst.roles is not None:
        doc["roles"] = inst.roles
    return doc


def instance_from_dict(doc: dict) -> Instance:
    try:
        n = int(doc["n"])
        graph = Graph.from_edges(n, [tuple(e) for e in doc["edges"]])
        interval = None
        if "interval" in doc and doc["interval"] is not None:
            interval = IntervalRepresentation(
                tuple(
                    (Fraction(ln, ld), Fraction(rn, rd))
                    for (ln, ld, rn, rd) in doc["interval"]
                )
            )
        embedding = None
        if "faces" in doc and doc["faces"] is not None:
            embedding = PlanarEmbedding(
                tuple(tuple(c) for c in doc["faces"]["cycles"]),
                int(doc["faces"]["outer"]),
            )
        source = None
        if "source_tree" in doc and doc["source_tree"] is not None:
            source = SpanningTree.from_edges(n, [tuple(e) for e in doc["source_tree"]])
        target = None
        if "target_tree" in doc and doc["target_tree"] is not None:
            target = SpanningTree.from_edges(n, [tuple(e) for e in doc["target_tree"]])
        constraint = None
        if "constraint" in doc and doc["constraint"] is not None:
            constraint = LeafConstraint(
                doc["constraint"]["kind"], int(doc["constraint"]["leaves"])
            )
        roles = doc.get("roles")
    except GraphError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInstance(str(exc)) from exc
    return Instance(graph, interval, embedding, source, target, constraint, roles)


def dump_instance(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(inst), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInstance(str(exc)) from exc
    if not isinstance(doc, dict):
        raise MalformedInstance("top-level JSON value must be an object")
    return instance_from_dict(doc)


def flips_to_dict(flips: FlipSequence) -> dict:
    return {
        "flips": [
            {"remove": list(f.removed), "add": list(f.added)} for f in flips
        ]
    }


def flips_from_dict(doc: dict) -> FlipSequence:
    try:
        return tuple(
            EdgeFlip(tuple(step["remove"]), tuple(step["add"]))
            for step in doc["flips"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInstance(str(exc)) from exc
