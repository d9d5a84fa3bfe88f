"""JSON instance round trips."""

import pytest

from treeflip import gen
from treeflip.graph import at_least
from treeflip.jsonio import (
    Instance,
    MalformedInstance,
    dump_instance,
    flips_from_dict,
    flips_to_dict,
    instance_from_dict,
    instance_to_dict,
    load_instance,
)


def test_instance_roundtrip(tmp_path):
    g, rep = gen.random_interval_representation(6, 5)
    t1 = gen.random_spanning_tree(g, 1)
    t2 = gen.random_spanning_tree(g, 2)
    inst = Instance(
        g,
        interval=rep,
        source_tree=t1,
        target_tree=t2,
        constraint=at_least(2),
        roles={"note": "roundtrip"},
    )
    path = str(tmp_path / "inst.json")
    dump_instance(inst, path)
    back = load_instance(path)
    assert back.graph.edges == g.edges
    assert back.source_tree.edges == t1.edges
    assert back.target_tree.edges == t2.edges
    assert back.constraint == inst.constraint
    assert back.interval.intersection_graph().edges == g.edges
    assert back.roles == {"note": "roundtrip"}


def test_embedding_roundtrip():
    name, g, emb = gen.random_embedded_planar(3)
    doc = instance_to_dict(Instance(g, embedding=emb))
    back = instance_from_dict(doc)
    assert back.embedding.faces == emb.faces
    assert back.embedding.outer == emb.outer


def test_flips_roundtrip():
    g = gen.random_connected_graph(6, 7, extra_edge_prob=0.6)
    t1 = gen.random_spanning_tree(g, 1)
    t2 = gen.random_spanning_tree(g, 2)
    from treeflip.solvers import transform_same_internal

    flips = transform_same_internal(g, t1, t2)
    assert flips_from_dict(flips_to_dict(flips)) == flips


def test_malformed_documents_rejected():
    with pytest.raises(MalformedInstance):
        instance_from_dict({"graph": {"n": 3}})
    with pytest.raises(MalformedInstance):
        instance_from_dict({})
