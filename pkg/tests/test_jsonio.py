"""Round-trips through every JSON schema, and the DOT exports."""

import json

from latcat import jsonio
from latcat.amalgam import permutation_lattice_action
from latcat.cstar import Subalg, build_Cinj, hom_set
from latcat.invsemi import build_T
from latcat.partitions import Partition, PointMap, build_partition_lattice
from latcat.posets import boolean_poset, chain


def test_poset_roundtrip_emits_closure():
    p = build_partition_lattice(3).base
    doc = jsonio.poset_to_json(p)
    # reflexive pairs are materialized
    assert [0, 0] in doc["leq"]
    again = jsonio.poset_from_json(doc)
    assert again == p
    # parse -> emit -> parse is the identity
    assert jsonio.poset_to_json(again) == doc


def test_lattice_from_json():
    doc = jsonio.poset_to_json(boolean_poset(2))
    lattice = jsonio.lattice_from_json(doc)
    assert lattice.n == 4


def test_partition_and_pointmap_roundtrip():
    p = Partition(4, ((1, 3), (2,)))
    assert jsonio.partition_from_json(jsonio.partition_to_json(p)) == p
    pm = PointMap(3, (2, 2, 1))
    assert jsonio.pointmap_from_json(jsonio.pointmap_to_json(pm)) == pm


def test_category_roundtrip():
    cat = build_Cinj(2, unital_objects=True)
    doc = jsonio.category_to_json(cat)
    again = jsonio.category_from_json(doc)
    assert again.objects == cat.objects
    assert len(again.morphisms) == len(cat.morphisms)
    assert jsonio.category_to_json(again) == doc


def test_action_roundtrip():
    act = permutation_lattice_action(2)
    doc = jsonio.action_to_json(act)
    again = jsonio.action_from_json(doc)
    assert again.table == act.table
    assert again.monoid.mul == act.monoid.mul
    assert jsonio.action_to_json(again) == doc


def test_subalg_and_hom_roundtrip():
    c = Subalg(2, Partition(2, ((1, 2),)))
    d = Subalg(2, Partition(2, ((1,), (2,))))
    assert jsonio.subalg_from_json(jsonio.subalg_to_json(c)) == c
    for h in hom_set(c, d):
        assert jsonio.cstarhom_from_json(jsonio.cstarhom_to_json(h)) == h


def test_invsemigroup_roundtrip():
    t = build_T(2)
    doc = jsonio.invsemigroup_to_json(t)
    again = jsonio.invsemigroup_from_json(doc)
    assert again.mul == t.mul and again.star == t.star and again.zero == t.zero
    assert jsonio.invsemigroup_to_json(again) == doc


def test_json_documents_are_serializable():
    doc = jsonio.poset_to_json(chain(3))
    assert json.loads(jsonio.dumps(doc)) == doc


def test_dot_exports():
    p = build_partition_lattice(3)
    dot = jsonio.poset_to_dot(p.base, "P3")
    assert dot.startswith('digraph "P3"')
    assert dot.count("->") == len(p.base.covers())
    cat_dot = jsonio.category_to_dot(build_Cinj(2))
    assert "digraph" in cat_dot
