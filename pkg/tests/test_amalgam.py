"""Grothendieck categories of actions, axiom checkers, recovery, certificates."""

import pytest

from latcat.amalgam import (
    MonoidAction,
    canonical_witness,
    check_action,
    check_cstar_characterization,
    check_group_amalgamation,
    check_monoid_amalgamation,
    build_equivalence,
    enumerate_group_actions,
    grothendieck,
    permutation_lattice_action,
    pullback_lattice_action,
    random_monotone_action,
    recover_action,
    standard_corpus,
    AmalgamWitness,
)
from latcat.categories import FinCategory, FinMonoid, endo_monoid, monoid_isomorphism
from latcat.partitions import build_partition_lattice, symmetric_monoid
from latcat.posets import are_isomorphic, FinPoset


def trivial_monoid():
    return FinMonoid(["1"], 0, [[0]])


def test_grothendieck_trivial_monoid_is_the_poset():
    p = build_partition_lattice(2).base
    act = MonoidAction(trivial_monoid(), p, (tuple(range(p.n)),))
    cat = grothendieck(act)
    assert len(cat.objects) == 2 and len(cat.morphisms) == 3


def test_grothendieck_two_points():
    act = permutation_lattice_action(2)
    cat = grothendieck(act)
    d = cat.objects.index("1|2")
    t = cat.objects.index("12")
    assert len(cat.hom(d, d)) == 2
    assert len(cat.hom(d, t)) == 2
    assert len(cat.hom(t, t)) == 2
    assert len(cat.hom(t, d)) == 0


def test_grothendieck_unit_morphisms_follow_the_order():
    act = permutation_lattice_action(3)
    cat = grothendieck(act)
    p = act.poset
    for x in range(p.n):
        for y in range(p.n):
            if p.leq(x, y):
                assert cat.hom(x, y)


def test_check_action():
    assert check_action(permutation_lattice_action(3))
    assert check_action(pullback_lattice_action(3))
    act = permutation_lattice_action(2)
    broken = MonoidAction(act.monoid, act.poset, ((1, 0), (0, 1)))  # unit not identity
    verdict = check_action(broken)
    assert not verdict and verdict.failure == "unit law"


def test_group_amalgamation_canonical():
    for n in (2, 3):
        act = permutation_lattice_action(n)
        cat = grothendieck(act)
        report = check_group_amalgamation(cat, canonical_witness(act, cat))
        assert report.passed


def test_group_amalgamation_demanded_monoid_fails_on_poset():
    from latcat.categories import poset_as_category

    cat = poset_as_category(build_partition_lattice(3).base)
    s3, _ = symmetric_monoid(3)
    report = check_group_amalgamation(cat, expected_monoid=s3)
    assert not report.passed
    assert report.first_failure() == "A3"


def test_monoid_amalgamation_pullback_and_groups():
    actT = pullback_lattice_action(3)
    catT = grothendieck(actT)
    report = check_monoid_amalgamation(catT, canonical_witness(actT, catT))
    assert report.passed
    assert report.weak_initial_unique is False  # reported, not enforced
    act3 = permutation_lattice_action(3)
    cat3 = grothendieck(act3)
    assert check_monoid_amalgamation(cat3, canonical_witness(act3, cat3)).passed


def a7_violation_fixture():
    """Three objects over a three-chain with labels {1, m, w}, m*m = w,
    where the w-labelled morphism out of the middle object cannot be split."""
    # monoid: commutative, m*m = w, w absorbing
    M = FinMonoid(["1", "m", "w"], 0, [[0, 1, 2], [1, 2, 2], [2, 2, 2]])
    objects = ["z", "x", "y"]
    # keep every label out of the bottom object, only the unit elsewhere,
    # plus the unsplittable w from x to y
    keep = {
        (k, 0, q) for k in range(3) for q in range(3)
    } | {(0, 1, 1), (0, 2, 2), (0, 1, 2), (2, 1, 2)}
    keep = sorted(keep)
    index = {tag: i for i, tag in enumerate(keep)}
    morphisms = [(f"[{M.names[k]}]{objects[p]}->{objects[q]}", p, q) for (k, p, q) in keep]
    identities = [index[(0, p, p)] for p in range(3)]
    comp = {}
    for gi, (kg, qg, rg) in enumerate(keep):
        for fi, (kf, pf, qf) in enumerate(keep):
            if qf == qg:
                comp[(gi, fi)] = index[(M.mul[kf][kg], pf, rg)]
    cat = FinCategory(objects, morphisms, identities, comp, keep)
    endo_index = {k: index[(k, 0, 0)] for k in range(3)}
    witness = AmalgamWitness(
        zero=0,
        retraction=tuple(endo_index[k] for (k, _, _) in keep),
        monoid=M,
        alpha={endo_index[k]: k for k in range(3)},
        poset=FinPoset(objects, [(0, 1), (1, 2)]),
        beta=(0, 1, 2),
        beta_prime=(0, 1, 2),
    )
    return cat, witness


def test_monoid_amalgamation_factorization_violation():
    cat, witness = a7_violation_fixture()
    report = check_monoid_amalgamation(cat, witness)
    assert not report.passed
    assert report.first_failure() == "A7'"
    for tag in ("A1'", "A2'", "A3'", "A4'", "A5'", "A6'"):
        assert report.result(tag).ok


def test_recover_action_roundtrips():
    for n in (2, 3):
        act = permutation_lattice_action(n)
        cat = grothendieck(act)
        w = canonical_witness(act, cat)
        assert recover_action(cat, w, "group").table == act.table
        assert recover_action(cat, w, "monoid").table == act.table
    actT = pullback_lattice_action(3)
    catT = grothendieck(actT)
    wT = canonical_witness(actT, catT)
    assert recover_action(catT, wT, "monoid").table == actT.table


def test_unit_recovers_identity():
    act = permutation_lattice_action(3)
    cat = grothendieck(act)
    w = canonical_witness(act, cat)
    rec = recover_action(cat, w, "group")
    unit_row = rec.table[act.monoid.unit]
    assert unit_row == tuple(range(act.poset.n))


def test_build_equivalence_flags():
    for n in (2, 3):
        act = permutation_lattice_action(n)
        cat = grothendieck(act)
        w = canonical_witness(act, cat)
        _, props = build_equivalence(cat, w, "group")
        assert props.is_equivalence
    actT = pullback_lattice_action(3)
    catT = grothendieck(actT)
    _, propsT = build_equivalence(catT, canonical_witness(actT, catT), "monoid")
    assert propsT.is_equivalence


def test_searched_witness():
    act = permutation_lattice_action(2)
    cat = grothendieck(act)
    report = check_group_amalgamation(cat)  # no witness supplied
    assert report.passed


def test_hom_preorder_quotient_matches_input_poset():
    for name, act in standard_corpus()[:10]:
        cat = grothendieck(act)
        w = canonical_witness(act, cat)
        from latcat.categories import hom_preorder

        pre = hom_preorder(cat, w.retraction, w.zero)
        assert are_isomorphic(pre.quotient, act.poset) is not None, name


def test_group_axioms_imply_monoid_axioms_on_corpus():
    for name, act in standard_corpus():
        if not act.monoid.is_group():
            continue
        cat = grothendieck(act)
        w = canonical_witness(act, cat)
        if check_group_amalgamation(cat, w).passed:
            assert check_monoid_amalgamation(cat, w).passed, name


def test_monoid_recovery_agrees_with_group_recovery():
    for n in (2, 3):
        act = permutation_lattice_action(n)
        cat = grothendieck(act)
        w = canonical_witness(act, cat)
        assert (
            recover_action(cat, w, "group").table
            == recover_action(cat, w, "monoid").table
        )


def test_enumerate_group_actions_counts():
    s2, _ = symmetric_monoid(2)
    s3, _ = symmetric_monoid(3)
    p2 = build_partition_lattice(2).base
    p3 = build_partition_lattice(3).base
    assert len(enumerate_group_actions(s2, p2)) == 1
    assert len(enumerate_group_actions(s3, p2)) == 1
    assert len(enumerate_group_actions(s2, p3)) == 4
    assert len(enumerate_group_actions(s3, p3)) == 10
    # the canonical permutation action is among the enumerated ones
    canonical = permutation_lattice_action(3)
    tables = {a.table for a in enumerate_group_actions(s3, p3)}
    assert canonical.table in tables


def test_random_actions_are_valid_and_deterministic():
    for seed in range(20):
        a = random_monotone_action(seed)
        b = random_monotone_action(seed)
        assert a.table == b.table and a.monoid.names == b.monoid.names
        assert check_action(a)
        assert a.monoid.size <= 6 and a.poset.n <= 5


def test_characterization_certificates():
    act2 = permutation_lattice_action(2)
    cat2 = grothendieck(act2)
    w2 = canonical_witness(act2, cat2)
    assert check_cstar_characterization(cat2, (2,), 4, witness=w2).passed
    act3 = permutation_lattice_action(3)
    cat3 = grothendieck(act3)
    w3 = canonical_witness(act3, cat3)
    assert check_cstar_characterization(cat3, (1, 2), 5, witness=w3).passed
    cert = check_cstar_characterization(cat3, (3,), 8, witness=w3)
    assert not cert.passed
    assert not cert.clause("dimension").ok
    assert all(c.ok for c in cert.clauses if c.tag != "dimension")
    with pytest.raises(ValueError):
        check_cstar_characterization(cat3, (), 5, witness=w3)


def test_endo_monoid_of_p3_grothendieck():
    act = permutation_lattice_action(3)
    cat = grothendieck(act)
    w = canonical_witness(act, cat)
    em = endo_monoid(cat, w.zero)
    s3, _ = symmetric_monoid(3)
    assert em.monoid.size == 6
    assert monoid_isomorphism(em.opposite, s3) is not None


def test_endo_monoid_at_top_of_p2():
    act = permutation_lattice_action(2)
    cat = grothendieck(act)
    top = cat.objects.index("12")
    assert endo_monoid(cat, top).monoid.size == 2


def test_grothendieck_hom_sets_match_double_loop():
    """Hom(p, q) carries exactly the labels m with p <= m.q."""
    for name, act in standard_corpus()[:8] + [("T(3)", pullback_lattice_action(3))]:
        cat = grothendieck(act)
        for p in range(act.poset.n):
            for q in range(act.poset.n):
                expected = {
                    m for m in range(act.monoid.size)
                    if act.poset.leq(p, act.act(m, q))
                }
                got = {cat.morphism_tags[f][0] for f in cat.hom(p, q)}
                assert got == expected, name


def test_weak_initial_of_grothendieck_is_the_bottom():
    from latcat.categories import weak_initial_objects

    act = permutation_lattice_action(3)
    cat = grothendieck(act)
    rep = weak_initial_objects(cat)
    bottom = next(
        p for p in range(act.poset.n)
        if all(act.poset.leq(p, q) for q in range(act.poset.n))
    )
    assert rep.objects == [bottom] and rep.unique_up_to_iso


def test_terminal_category_with_searched_witness():
    from latcat.categories import validate_category

    cat = validate_category(["*"], [("id", 0, 0)], [0], {(0, 0): 0})
    report = check_monoid_amalgamation(cat)  # witness found by search
    assert report.passed
    _, props = build_equivalence(cat, report.witness, "monoid")
    assert props.is_equivalence
