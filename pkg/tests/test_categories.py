"""Finite categories: laws, predicates, searches, presheaves."""

import pytest

from latcat.categories import (
    FinMonoid,
    Functor,
    Presheaf,
    category_of_elements,
    compose_functors,
    empty_presheaf,
    endo_monoid,
    find_isomorphism,
    functor_properties,
    hom_preorder,
    identity_functor,
    monoid_isomorphism,
    one_object_category,
    poset_as_category,
    terminal_presheaf,
    validate_category,
    weak_initial_objects,
)
from latcat.errors import (
    AssociativityViolation,
    DanglingComposite,
    IdentityViolation,
    NotFunctorial,
)
from latcat.partitions import build_partition_lattice, symmetric_monoid
from latcat.posets import FinPoset, are_isomorphic, chain


def terminal_category():
    return validate_category(["*"], [("id", 0, 0)], [0], {(0, 0): 0})


def discrete_category(k):
    return validate_category(
        [f"x{i}" for i in range(k)],
        [(f"id{i}", i, i) for i in range(k)],
        list(range(k)),
        {(i, i): i for i in range(k)},
    )


def test_validate_category_terminal():
    cat = terminal_category()
    assert len(cat.objects) == 1 and len(cat.morphisms) == 1


def test_monoid_as_category():
    m = FinMonoid(["1", "a"], 0, [[0, 1], [1, 0]])
    cat = one_object_category(m)
    assert len(cat.morphisms) == 2
    with pytest.raises(ValueError):
        FinMonoid(["1", "a"], 0, [[0, 1], [0, 0]])  # unit law broken


def test_validate_category_rejects_bad_tables():
    with pytest.raises(DanglingComposite):
        validate_category(
            ["x", "y"],
            [("idx", 0, 0), ("idy", 1, 1), ("f", 0, 1)],
            [0, 1],
            {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (2, 1): 2},  # (2,1) not composable
        )
    with pytest.raises(IdentityViolation):
        validate_category(
            ["x"],
            [("idx", 0, 0), ("e", 0, 0)],
            [0],
            {(0, 0): 0, (0, 1): 0, (1, 0): 1, (1, 1): 1},  # e o idx must be e
        )
    with pytest.raises(AssociativityViolation):
        validate_category(
            ["x"],
            [("1", 0, 0), ("a", 0, 0), ("b", 0, 0)],
            [0],
            {
                (0, 0): 0, (0, 1): 1, (0, 2): 2,
                (1, 0): 1, (2, 0): 2,
                (1, 1): 2, (1, 2): 0, (2, 1): 1, (2, 2): 1,  # not associative
            },
        )


def test_weak_initial_objects():
    cat3 = poset_as_category(build_partition_lattice(3).base)
    rep = weak_initial_objects(cat3)
    assert rep.objects == [build_partition_lattice(3).bottom]
    assert rep.unique_up_to_iso
    assert weak_initial_objects(discrete_category(2)).objects == []
    assert weak_initial_objects(terminal_category()).objects == [0]


def test_endo_monoid_in_poset_category():
    cat = poset_as_category(chain(3))
    for x in range(3):
        assert endo_monoid(cat, x).monoid.size == 1


def test_hom_preorder_poset_category():
    p = build_partition_lattice(3).base
    cat = poset_as_category(p)
    retraction = tuple(cat.identities[0] for _ in cat.morphisms)
    pre = hom_preorder(cat, retraction, 0)
    assert are_isomorphic(pre.quotient, p) is not None


def test_hom_preorder_rejects_nonfunctorial():
    m = FinMonoid(["1", "s"], 0, [[0, 1], [1, 0]])
    two = one_object_category(m)
    # a retraction must fix Hom(zero, zero) pointwise
    with pytest.raises(NotFunctorial):
        hom_preorder(two, (1, 1), 0)


def test_functor_properties_identity():
    cat = poset_as_category(build_partition_lattice(3).base)
    props = functor_properties(identity_functor(cat))
    assert props.faithful and props.full and props.essentially_surjective


def test_functor_properties_collapse():
    # both objects of a discrete pair land on the terminal object: faithful
    # and essentially surjective, but not full (the cross hom has no preimage)
    src = discrete_category(2)
    tgt = terminal_category()
    F = Functor(src, tgt, [0, 0], [0, 0])
    props = functor_properties(F)
    assert props.faithful and props.essentially_surjective
    assert not props.full and props.full_witness is not None


def test_find_isomorphism_self_and_sizes():
    cat = poset_as_category(build_partition_lattice(3).base)
    pair = find_isomorphism(cat, cat)
    assert pair is not None
    fwd, bwd = pair
    comp = compose_functors(bwd, fwd)
    assert list(comp.object_map) == list(range(len(cat.objects)))
    assert functor_properties(comp).is_equivalence
    assert functor_properties(fwd).is_equivalence
    assert find_isomorphism(cat, terminal_category()) is None


def test_find_isomorphism_relabelled_poset():
    p = build_partition_lattice(3).base
    cat = poset_as_category(p)
    q = FinPoset([f"r{i}" for i in range(p.n)], p.pairs())
    cat2 = poset_as_category(q)
    assert find_isomorphism(cat, cat2) is not None


def test_monoid_isomorphism():
    s3, _ = symmetric_monoid(3)
    assert monoid_isomorphism(s3, s3.opposite()) is not None  # groups self-dualize
    c6 = FinMonoid(
        [str(i) for i in range(6)], 0,
        [[(i + j) % 6 for j in range(6)] for i in range(6)],
    )
    assert monoid_isomorphism(s3, c6) is None  # nonabelian vs cyclic


def test_category_of_elements_terminal_presheaf():
    base = poset_as_category(build_partition_lattice(3).base)
    cat, proj = category_of_elements(terminal_presheaf(base))
    assert find_isomorphism(cat, base) is not None
    assert functor_properties(proj).is_equivalence


def test_category_of_elements_empty_presheaf():
    base = poset_as_category(chain(2))
    cat, _ = category_of_elements(empty_presheaf(base))
    assert len(cat.objects) == 0 and len(cat.morphisms) == 0


def test_presheaf_validation():
    base = poset_as_category(chain(2))
    up = base.morphisms.index(("le[0->1]", 0, 1))
    with pytest.raises(ValueError):
        Presheaf(
            base,
            [("a", "b"), ("c",)],
            {base.identities[0]: (0, 1), base.identities[1]: (0,), up: (2,)},
        )
