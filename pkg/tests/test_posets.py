"""Order-theoretic core: lattices, predicates, Moebius, isomorphism."""

import random

import pytest

from latcat.errors import EmptyPoset, NotALattice, NotGraded
from latcat.partitions import build_partition_lattice
from latcat.posets import (
    FinPoset,
    IntPolynomial,
    are_isomorphic,
    as_lattice,
    boolean_lattice,
    boolean_poset,
    chain,
    characteristic_polynomial,
    diamond,
    is_atomic,
    is_atomistic,
    is_geometric,
    is_semimodular,
    mobius,
    modular_elements,
    pentagon,
    random_poset,
    structure_report,
    upset,
)


def test_poset_construction_validates():
    with pytest.raises(ValueError):
        FinPoset(["a", "a"], [])
    with pytest.raises(ValueError):
        FinPoset(["a", "b"], [(0, 1), (1, 0)])  # antisymmetry
    p = FinPoset(["a", "b", "c"], [(0, 1), (1, 2)])
    assert p.leq(0, 2)  # transitive closure computed


def test_as_lattice_one_element():
    l = as_lattice(FinPoset(["x"], []))
    assert l.bottom == l.top == 0


def test_as_lattice_empty_poset():
    with pytest.raises(EmptyPoset):
        as_lattice(FinPoset([], []))


def test_as_lattice_rejects_two_chains():
    # two incomparable chains share no bounds
    p = FinPoset(["a", "b", "c", "d"], [(0, 1), (2, 3)])
    with pytest.raises(NotALattice):
        as_lattice(p)


def test_refinement_order_on_three_points_is_a_lattice():
    l = build_partition_lattice(3)
    assert len(l.atoms()) == 3
    # meet and join agree with the exhaustive scan by construction; spot check
    a, b = l.atoms()[0], l.atoms()[1]
    assert l.meet[a][b] == l.bottom
    assert l.join[a][b] == l.top


def test_structure_report_partition_lattices():
    for n, atoms in [(2, 1), (3, 3), (4, 6), (5, 10)]:
        rep = structure_report(build_partition_lattice(n))
        assert len(rep.atoms) == atoms == n * (n - 1) // 2
        assert rep.graded
        assert rep.ranks[build_partition_lattice(n).top] == n - 1
    rep3 = structure_report(build_partition_lattice(3))
    assert sorted(rep3.atoms) == sorted(rep3.coatoms)


def test_structure_report_boolean_and_pentagon():
    rep = structure_report(boolean_lattice(3))
    assert len(rep.atoms) == 3 and rep.ranks[boolean_lattice(3).top] == 3
    n5 = structure_report(pentagon())
    assert not n5.graded
    with pytest.raises(NotGraded):
        n5.rank_of_top(pentagon())


def test_semimodularity():
    assert is_semimodular(build_partition_lattice(4))
    verdict = is_semimodular(pentagon())
    assert not verdict and verdict.witness is not None
    assert is_semimodular(as_lattice(chain(4)))


def test_geometric():
    for n in (3, 4, 5):
        assert is_geometric(build_partition_lattice(n))
    assert is_geometric(pentagon()).failed_conjunct() == "semimodular"
    three_chain = is_geometric(as_lattice(chain(3)))
    assert not three_chain and three_chain.failed_conjunct() == "atomistic"
    # the weaker predicate still holds on chains
    assert is_atomic(as_lattice(chain(3)))
    assert not is_atomistic(as_lattice(chain(3)))


def test_modular_elements():
    cube = boolean_lattice(3)
    assert modular_elements(cube) == list(range(cube.n))
    n5 = pentagon()
    mods = modular_elements(n5)
    assert n5.bottom in mods and n5.top in mods
    p4 = build_partition_lattice(4)
    assert set(modular_elements(p4)) & set(p4.coatoms())


def test_mobius_values():
    one = as_lattice(FinPoset(["x"], []))
    assert mobius(one).values == (1,)
    l3 = build_partition_lattice(3)
    mu = mobius(l3)
    assert mu[l3.bottom] == 1 and mu[l3.top] == 2
    assert sorted(mu.values) == [-1, -1, -1, 1, 2]
    l4 = build_partition_lattice(4)
    assert mobius(l4)[l4.top] == -6


def test_mobius_defining_identity_everywhere():
    for l in (build_partition_lattice(4), boolean_lattice(3), pentagon()):
        mu = mobius(l)
        for x in range(l.n):
            total = sum(mu[y] for y in range(l.n) if l.leq(y, x))
            assert total == (1 if x == l.bottom else 0)


def test_characteristic_polynomials():
    assert characteristic_polynomial(build_partition_lattice(3)) == IntPolynomial((2, -3, 1))
    assert characteristic_polynomial(boolean_lattice(2)) == IntPolynomial((1, -2, 1))
    one = as_lattice(FinPoset(["x"], []))
    assert characteristic_polynomial(one) == IntPolynomial((1,))
    with pytest.raises(NotGraded):
        characteristic_polynomial(pentagon())


def test_characteristic_polynomial_at_one_is_mobius_sum():
    for n in (2, 3, 4, 5):
        l = build_partition_lattice(n)
        poly = characteristic_polynomial(l)
        assert poly(1) == sum(mobius(l).values)
        assert poly(1) == 0


def test_polynomial_pretty():
    assert IntPolynomial((2, -3, 1)).pretty() == "λ² - 3λ + 2"
    assert IntPolynomial.from_roots([1, 2]) == IntPolynomial((2, -3, 1))
    assert IntPolynomial(()).pretty() == "0"


def test_upset():
    l4 = build_partition_lattice(4)
    assert upset(l4, l4.bottom).n == l4.n
    assert upset(l4, l4.top).n == 1
    l3 = build_partition_lattice(3)
    for a in l4.atoms():
        assert are_isomorphic(upset(l4, a).base, l3.base) is not None


def test_isomorphism_basics():
    l3 = build_partition_lattice(3)
    assert are_isomorphic(l3.base, l3.base) is not None
    assert are_isomorphic(l3.base, boolean_poset(2)) is None  # 5 vs 4 elements
    assert are_isomorphic(l3.base, diamond(3).base) is not None
    assert are_isomorphic(boolean_poset(2), chain(4)) is None  # same size, not iso


def test_isomorphism_random_corpus():
    rng = random.Random(42)
    for _ in range(25):
        p = random_poset(rng, rng.randint(2, 6))
        # reflexive
        assert are_isomorphic(p, p) is not None
        # symmetric under relabeling
        perm = list(range(p.n))
        rng.shuffle(perm)
        q = FinPoset(
            [f"q{i}" for i in range(p.n)],
            [(perm[i], perm[j]) for i, j in p.pairs()],
        )
        fwd = are_isomorphic(p, q)
        bwd = are_isomorphic(q, p)
        assert fwd is not None and bwd is not None
        # independent edge verification of the returned witness
        for i in range(p.n):
            for j in range(p.n):
                assert p.leq(i, j) == q.leq(fwd[i], fwd[j])
