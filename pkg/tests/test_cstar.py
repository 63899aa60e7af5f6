"""The diagonal-subalgebra model: homs, categories, comparison, ideals."""

import itertools

import pytest

from latcat.cstar import (
    Subalg,
    all_matrix_homs,
    build_Cinj,
    build_Csub,
    bundle_projections,
    comparison_report,
    compose_homs,
    direct_image,
    enumerate_subalgebras,
    hom_set,
    ideal_condition_morphisms,
    inclusion_hom,
    is_left_cancellative,
    weak_terminal_report,
)
from latcat.errors import CapExceeded, ZeroImage
from latcat.partitions import Partition, build_partition_lattice
from latcat.posets import are_isomorphic


def subalg(n, *blocks):
    return Subalg(n, Partition(n, tuple(tuple(b) for b in blocks)))


def test_enumeration_counts():
    assert len(enumerate_subalgebras(1)) == 1
    assert len(enumerate_subalgebras(2)) == 2
    assert len(enumerate_subalgebras(2, unital_objects=False)) == 4
    assert len(enumerate_subalgebras(3, unital_objects=False)) == 14
    with pytest.raises(CapExceeded):
        enumerate_subalgebras(5)


def test_hom_set_counts_two_points():
    t = subalg(2, (1, 2))
    d = subalg(2, (1,), (2,))
    assert len(hom_set(t, t)) == 1
    assert len(hom_set(t, d)) == 3
    assert len(hom_set(t, d, unit_preserving_only=True)) == 1
    assert len(hom_set(d, t)) == 0


def test_hom_set_equals_matrix_oracle():
    for n in (1, 2, 3):
        objs = enumerate_subalgebras(n, unital_objects=False)
        for src in objs:
            for tgt in objs:
                assert {h.matrix() for h in hom_set(src, tgt)} == set(
                    all_matrix_homs(src, tgt)
                )


def test_hom_composition_is_associative():
    objs = enumerate_subalgebras(2, unital_objects=False)
    homs = [
        h for src in objs for tgt in objs for h in hom_set(src, tgt)
    ]
    for f in homs:
        for g in homs:
            if g.source != f.target:
                continue
            for h in homs:
                if h.source != g.target:
                    continue
                assert compose_homs(h, compose_homs(g, f)) == compose_homs(
                    compose_homs(h, g), f
                )


def test_build_Csub_shapes():
    general = build_Csub(2, unital_objects=False)
    assert general.n == 4
    minimal = {general.labels[i] for i in general.minimal_elements()}
    assert minimal == {"1", "2", "12"}
    assert general.maximal_elements() == [general.index_of("1|2")]
    # constants sit inside the diagonal at every n
    for n in (2, 3):
        poset = build_Csub(n, unital_objects=True)
        t = poset.index_of(Partition.one_block(n).label())
        d = poset.index_of(Partition.discrete(n).label())
        assert poset.leq(t, d)


def test_build_Csub_dual_is_partition_lattice():
    for n in (2, 3, 4):
        poset = build_Csub(n, unital_objects=True)
        assert are_isomorphic(poset.dual(), build_partition_lattice(n).base) is not None


def test_build_Cinj_counts():
    cat = build_Cinj(2, unital_objects=True)
    assert len(cat.objects) == 2 and len(cat.morphisms) == 6
    t = cat.objects.index("12")
    d = cat.objects.index("1|2")
    assert [len(cat.hom(t, t)), len(cat.hom(t, d))] == [1, 3]
    assert [len(cat.hom(d, t)), len(cat.hom(d, d))] == [0, 2]
    assert len(build_Cinj(1).objects) == 1 and len(build_Cinj(1).morphisms) == 1
    general = build_Cinj(2, unital_objects=False)
    c1 = general.objects.index("1")
    c2 = general.objects.index("2")
    assert len(general.hom(c1, c2)) == 1


def test_left_cancellativity():
    for n in (2, 3):
        assert is_left_cancellative(build_Cinj(n, unital_objects=False))


def test_comparison_report_n2():
    rep = comparison_report(2)
    assert rep.functorial and rep.object_bijective
    assert not rep.properties.faithful
    assert (rep.end_top_source, rep.end_top_target) == (2, 1)
    assert not rep.properties.full
    assert (rep.hom_t_d_target, rep.hom_t_d_induced) == (3, 1)
    assert rep.properties.essentially_surjective


def test_comparison_report_n1_and_n3():
    rep1 = comparison_report(1)
    assert rep1.functorial and rep1.properties.is_equivalence
    rep3 = comparison_report(3)
    assert rep3.functorial and rep3.object_bijective
    assert rep3.properties.essentially_surjective


def test_weak_terminal_unital_three_points():
    cat = build_Cinj(3, unital_objects=True)
    rep = weak_terminal_report(cat)
    assert [cat.objects[d] for d in rep.objects] == ["1|2|3"]
    assert rep.all_equivalences_ok


def test_weak_terminal_general_two_points():
    cat = build_Cinj(2, unital_objects=False)
    rep = weak_terminal_report(cat)
    assert [cat.objects[d] for d in rep.objects] == ["1|2"]


def test_weak_terminal_absent():
    from latcat.categories import validate_category

    discrete = validate_category(
        ["x", "y"], [("ix", 0, 0), ("iy", 1, 1)], [0, 1], {(0, 0): 0, (1, 1): 1}
    )
    assert weak_terminal_report(discrete).objects == []


def test_direct_image():
    c1 = subalg(2, (1,))
    img = direct_image({1: 1, 2: 1, 3: 2}, 3, c1)
    assert img == subalg(3, (1, 2))
    assert direct_image({1: 1, 2: 2}, 2, c1) == c1
    with pytest.raises(ZeroImage):
        direct_image({1: 2, 2: 2, 3: 2}, 3, c1)


def test_direct_image_monotone():
    objs = enumerate_subalgebras(2, unital_objects=False)
    maps = []
    for total in itertools.product([None, 1, 2], repeat=3):
        phi = {a + 1: v for a, v in enumerate(total) if v is not None}
        if phi:
            maps.append(phi)
    for phi in maps:
        for c in objs:
            for d in objs:
                if not d.contains_subalg(c):
                    continue
                try:
                    img_c = direct_image(phi, 3, c)
                    img_d = direct_image(phi, 3, d)
                except ZeroImage:
                    continue
                assert img_d.contains_subalg(img_c)


def test_ideal_condition_subcategory():
    sub, kept = ideal_condition_morphisms(2)
    full = build_Cinj(2, unital_objects=False)
    objs = full.subalgebras
    assert len(kept) == 7  # four identities and three proper inclusions
    kept_set = set(kept)
    # all inclusions present
    for i, c in enumerate(objs):
        for j, d in enumerate(objs):
            if d.contains_subalg(c):
                incl = inclusion_hom(c, d)
                k = next(
                    k for k, (a, b, h) in enumerate(full.morphism_tags)
                    if a == i and b == j and h.block_map == incl.block_map
                )
                assert k in kept_set
    # the coordinate embedding t -> d is excluded
    t = next(i for i, c in enumerate(objs) if c.unital and c.dimension == 1)
    d = next(i for i, c in enumerate(objs) if c.unital and c.dimension == 2)
    for k, (a, b, h) in enumerate(full.morphism_tags):
        if a == t and b == d and not h.unit_preserving:
            assert k not in kept_set


def test_bundle_projections():
    for n in (1, 2, 3):
        lattice = bundle_projections(n)
        assert lattice.n == 2 ** n
        assert len(lattice.atoms()) == n
