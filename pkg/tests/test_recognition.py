"""Recognition procedures: the four-axiom route and the 1-point route."""

import pytest

from latcat.errors import TooSmall
from latcat.partitions import build_partition_lattice
from latcat.posets import as_lattice, boolean_lattice, chain, pentagon
from latcat.recognition import (
    bounding_elements,
    check_firby,
    check_yoon,
    one_points,
    single_collections,
)


def test_yoon_passes_partition_lattices():
    for n in (3, 4, 5):
        verdict = check_yoon(build_partition_lattice(n))
        assert verdict.passed and verdict.inferred_n == n - 1
        assert verdict.oracle_isomorphism is not None


def test_yoon_failures_name_the_axiom():
    cube = check_yoon(boolean_lattice(3))
    assert not cube.passed and cube.first_failure[0] == "P4"
    assert "λ" in cube.first_failure[1]
    n5 = check_yoon(pentagon())
    assert not n5.passed and n5.first_failure[0] == "P1"
    four_chain = check_yoon(as_lattice(chain(4)))
    assert not four_chain.passed and four_chain.first_failure[0] == "P1"
    assert "atomistic" in four_chain.first_failure[1]


def test_yoon_never_passes_non_bell_sizes():
    # the diamond M_4 is geometric with a modular coatom but has 6 elements
    from latcat.posets import diamond

    verdict = check_yoon(diamond(4))
    assert not verdict.passed


def test_bounding_elements_partition_lattice():
    l4 = build_partition_lattice(4)
    bounding = set(bounding_elements(l4))
    assert l4.bottom in bounding
    assert set(l4.atoms()) <= bounding
    # rank-2 elements with a 3-element block are bounding, double pairs are not
    triple = l4.base.index_of("123|4")
    double = l4.base.index_of("12|34")
    assert triple in bounding and double not in bounding
    assert l4.top in bounding
    assert len(bounding) == 1 + 6 + 4 + 1


def test_bounding_elements_chain():
    l = as_lattice(chain(4))
    bounding = bounding_elements(l)
    assert l.top not in bounding
    assert bounding == [0, 1]  # bottom and the unique atom


def test_single_collections_strong_vs_weak():
    l4 = build_partition_lattice(4)
    strong = single_collections(l4)
    weak = single_collections(l4, strong=False)
    assert len(strong) == 4
    assert len(weak) == 8  # the four stars plus the four triangles
    assert set(strong) <= set(weak)


def test_one_points_counts_and_membership():
    for n in (4, 5):
        l = build_partition_lattice(n)
        points = one_points(l)
        assert len(points) == n
        for a in l.atoms():
            assert sum(1 for op in points if a in op.members) == 2
    with pytest.raises(TooSmall):
        one_points(build_partition_lattice(2))


def test_one_point_intersections():
    l4 = build_partition_lattice(4)
    points = one_points(l4)
    atoms = set(l4.atoms())
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            common = set(points[i].members) & set(points[j].members) & atoms
            assert len(common) == 1


def test_firby_partition_lattices():
    for n in (4, 5):
        report = check_firby(build_partition_lattice(n))
        assert report.passed
        assert len(report.one_points) == n
        assert report.space.points == n and report.space.discrete
        assert report.reconstruction_iso_ok


def test_firby_small_space():
    # the five-element lattice is the partition lattice of a 3-point space
    report = check_firby(build_partition_lattice(3))
    assert report.passed and len(report.one_points) == 3


def test_firby_failures():
    cube = check_firby(boolean_lattice(3))
    assert not cube.passed and cube.first_failure() == "P2'"
    four_chain = check_firby(as_lattice(chain(4)))
    assert not four_chain.passed
    with pytest.raises(TooSmall):
        check_firby(as_lattice(chain(3)))


def test_yoon_and_firby_agree_on_graded_lattices():
    from latcat.posets import structure_report

    corpus = [
        build_partition_lattice(3),
        build_partition_lattice(4),
        build_partition_lattice(5),
        boolean_lattice(3),
        as_lattice(chain(4)),
    ]
    for lattice in corpus:
        if not structure_report(lattice).graded:
            continue
        assert check_yoon(lattice).passed == check_firby(lattice).passed
