"""Decision procedures for recognizing partition lattices.

Two checkers: the four-axiom route (geometric, rank-homogeneous upsets,
modular coatom, falling-factorial characteristic polynomial) with an
explicit-isomorphism confirmation oracle, and the bounding-element /
1-point route for finite lattices, which also reconstructs the
underlying finite space.

Quantifier conventions pinned here (the source prose is ambiguous; the
partition-lattice examples adjudicate):

* bounding clause (iii) quantifies over distinct atom pairs BELOW the
  candidate element and requires at least two such atoms; the global
  reading would reject every large one-block element, the vacuous
  reading would accept chain tops.
* a single collection additionally requires that the three atoms under
  the join of any two members do not all lie in the collection; without
  this, "triangle" collections inflate the 1-point count of partition
  lattices (weak-reading collections are still exposed for comparison).
* the collection B of (P6') is the set of maximal nonzero bounding
  elements below a; the literal cover reading fails to join back to a.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import CapExceeded, NotGraded, SearchCapExceeded, TooSmall
from .partitions import bell_number, build_partition_lattice
from .posets import (
    FinLattice,
    IntPolynomial,
    are_isomorphic,
    characteristic_polynomial,
    is_geometric,
    modular_elements,
    structure_report,
    upset,
    _bits,
)


# -- Yoon route ----------------------------------------------------------------


@dataclass
class YoonVerdict:
    passed: bool
    inferred_n: Optional[int] = None
    first_failure: Optional[tuple] = None  # (axiom tag, description)
    characteristic: Optional[IntPolynomial] = None
    oracle_isomorphism: Optional[tuple] = None

    def __bool__(self):
        return self.passed


def check_yoon(l: FinLattice, oracle_cap: int = 8) -> YoonVerdict:
    """Axioms (geometric; equal rank gives isomorphic upsets; modular
    coatom; characteristic polynomial (x-1)...(x-n)), then an explicit
    isomorphism onto the partition lattice as an independent confirmation."""
    geo = is_geometric(l)
    if not geo:
        witness = geo.semimodular.witness if not geo.semimodular else geo.atomistic.witness
        return YoonVerdict(False, None, ("P1", f"not {geo.failed_conjunct()}: witness {witness}"))
    report = structure_report(l)
    if not report.graded:
        raise NotGraded("geometric lattice failed to grade; inconsistent input")
    by_rank = {}
    for x in range(l.n):
        by_rank.setdefault(report.ranks[x], []).append(x)
    for rank, xs in sorted(by_rank.items()):
        base = upset(l, xs[0])
        for x in xs[1:]:
            if are_isomorphic(base.base, upset(l, x).base) is None:
                return YoonVerdict(
                    False, None,
                    ("P2", f"upsets of {l.labels[xs[0]]} and {l.labels[x]} at rank {rank} differ"),
                )
    coatoms = set(l.coatoms())
    if not coatoms & set(modular_elements(l)):
        return YoonVerdict(False, None, ("P3", "no modular coatom"))
    n = report.ranks[l.top]
    poly = characteristic_polynomial(l)
    target = IntPolynomial.from_roots(range(1, n + 1))
    if poly != target:
        return YoonVerdict(
            False, None,
            ("P4", f"characteristic polynomial is {poly.pretty()}, not {target.pretty()}"),
            characteristic=poly,
        )
    # independent confirmation: explicit isomorphism onto the partition lattice
    if bell_number(n + 1) != l.n:
        return YoonVerdict(
            False, None,
            ("oracle", f"size {l.n} is not the partition-lattice size {bell_number(n + 1)}"),
            characteristic=poly,
        )
    if n + 1 > oracle_cap:
        raise CapExceeded(f"oracle lattice P({n + 1}) above cap {oracle_cap}")
    witness = are_isomorphic(l.base, build_partition_lattice(n + 1).base)
    if witness is None:
        return YoonVerdict(
            False, None,
            ("oracle", "axioms passed but no explicit isomorphism found"),
            characteristic=poly,
        )
    return YoonVerdict(True, n, None, poly, witness)


# -- bounding elements, single collections, 1-points ----------------------------


def _atoms_below(l: FinLattice):
    atom_mask = 0
    for a in l.atoms():
        atom_mask |= 1 << a
    return [l.base.down[x] & atom_mask for x in range(l.n)]


def bounding_elements(l: FinLattice) -> list:
    """Elements that are zero, atoms, small covers, or pairwise mediated
    by three-atom joins (see module docstring for the clause (iii) reading)."""
    atoms = l.atoms()
    below = _atoms_below(l)
    count = [bin(m).count("1") for m in below]
    out = []
    for b in range(l.n):
        if b == l.bottom or b in atoms:
            out.append(b)
            continue
        covers_atom = any(_covers(l, a, b) for a in atoms)
        if covers_atom and count[b] == 3:
            out.append(b)
            continue
        mine = [a for a in atoms if l.leq(a, b)]
        if len(mine) >= 2:
            ok = True
            for p, q in itertools.combinations(mine, 2):
                if not any(
                    count[l.join[r][p]] == 3 and count[l.join[r][q]] == 3
                    for r in mine
                ):
                    ok = False
                    break
            if ok:
                out.append(b)
    return out


def _covers(l: FinLattice, i: int, j: int) -> bool:
    if not l.base.lt(i, j):
        return False
    return l.base.up[i] & l.base.down[j] & ~(1 << i) & ~(1 << j) == 0


def single_collections(l: FinLattice, strong: bool = True) -> list:
    """Maximal collections of atoms whose pairwise joins dominate exactly
    three atoms; the strong form also forbids all three dominated atoms
    from lying in the collection."""
    atoms = l.atoms()
    below = _atoms_below(l)
    count = [bin(m).count("1") for m in below]

    def pair_ok(collection: set, extra: int) -> bool:
        for s in collection:
            j = l.join[s][extra]
            if count[j] != 3:
                return False
            if strong:
                three = set(_bits(below[j]))
                if three <= collection | {extra}:
                    return False
        if strong:
            # an added atom must not complete an existing pair's triple
            for s, t in itertools.combinations(collection, 2):
                if extra in set(_bits(below[l.join[s][t]])):
                    return False
        return True

    admissible = [frozenset()]
    for a in atoms:
        admissible += [
            s | {a} for s in admissible if pair_ok(set(s), a)
        ]
        admissible = [frozenset(s) for s in admissible]
    maximal = []
    for s in admissible:
        if not s:
            continue
        if any(a not in s and pair_ok(set(s), a) for a in atoms):
            continue
        maximal.append(tuple(sorted(s)))
    return sorted(set(maximal))


@dataclass(frozen=True)
class OnePoint:
    members: tuple  # sorted element indices
    atoms: tuple    # sorted atom indices (the single collection)

    def __contains__(self, x):
        return x in self.members


def one_points(l: FinLattice) -> list:
    """Upward closures (within nonzero bounding elements) of single
    collections, kept when they satisfy the three 1-point clauses."""
    if l.n < 4:
        raise TooSmall("1-points need a lattice with at least four elements")
    bounding = bounding_elements(l)
    nonzero_bounding = [b for b in bounding if b != l.bottom]
    atoms = set(l.atoms())
    out = []
    for S in single_collections(l):
        members = sorted(
            b for b in nonzero_bounding if any(l.leq(s, b) for s in S)
        )
        member_atoms = tuple(sorted(set(members) & atoms))
        if member_atoms != S:
            continue  # clause (i)
        if any(
            a not in members
            for a in nonzero_bounding
            if any(l.leq(b, a) for b in members)
        ):
            continue  # clause (ii)
        if any(not any(l.leq(s, b) for s in S) for b in members):
            continue  # clause (iii)
        out.append(OnePoint(tuple(members), S))
    return sorted(set(out), key=lambda op: op.members)


# -- Firby route -----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSpace:
    points: int
    closed: tuple  # tuple of sorted point-index tuples

    @property
    def discrete(self) -> bool:
        return len(self.closed) == 2 ** self.points


@dataclass
class AxiomStatus:
    tag: str
    status: str  # "pass" | "fail" | "trivial"
    detail: str = ""

    @property
    def ok(self):
        return self.status in ("pass", "trivial")


@dataclass
class FirbyReport:
    passed: bool
    axioms: list
    one_points: list
    space: Optional[FiniteSpace] = None
    reconstruction_iso_ok: Optional[bool] = None
    weak_single_count: Optional[int] = None
    notes: tuple = ()

    def __bool__(self):
        return self.passed

    def first_failure(self) -> Optional[str]:
        for ax in self.axioms:
            if not ax.ok:
                return ax.tag
        return None


def check_firby(l: FinLattice, search_cap: int = 200_000, oracle_cap: int = 8) -> FirbyReport:
    """Evaluate the seven finite-lattice axioms and, on a pass, rebuild the
    finite space of 1-points and confirm the lattice against the partition
    lattice of that space."""
    if l.n < 4:
        raise TooSmall("need at least four elements")
    bounding = bounding_elements(l)
    bounding_set = set(bounding)
    points = one_points(l)
    atoms = l.atoms()
    below = _atoms_below(l)
    # point_mask[b]: bitmask over 1-point indices whose collection contains b
    point_mask = [0] * l.n
    for i, x in enumerate(points):
        for b in x.members:
            point_mask[b] |= 1 << i
    axioms = []

    # (P1') complete and atomic: finite lattices are complete; atomicity
    # (every nonzero element dominates an atom) is still evaluated verbatim.
    atomic_fail = [
        x for x in range(l.n) if x != l.bottom and below[x] == 0
    ]
    axioms.append(
        AxiomStatus("P1'", "fail" if atomic_fail else "pass",
                    "completeness is automatic for finite lattices; "
                    + (f"element {l.labels[atomic_fail[0]]} dominates no atom" if atomic_fail
                       else "atomicity verified"))
    )

    # (P2') pairwise intersections carry one atom; atoms lie in two 1-points.
    p2_ok, p2_detail = True, "verified"
    for x, y in itertools.combinations(points, 2):
        common_atoms = set(x.atoms) & set(y.atoms)
        if len(common_atoms) != 1:
            p2_ok, p2_detail = False, (
                f"1-points {x.atoms} and {y.atoms} share {len(common_atoms)} atoms"
            )
            break
    if p2_ok:
        for a in atoms:
            holders = [x for x in points if a in x.members]
            if len(holders) != 2:
                p2_ok, p2_detail = False, (
                    f"atom {l.labels[a]} lies in {len(holders)} 1-points"
                )
                break
    axioms.append(AxiomStatus("P2'", "pass" if p2_ok else "fail", p2_detail))

    # (P3') join/atom duality through 1-points.
    p3_ok, p3_detail = True, "verified"
    for a in bounding:
        for b in bounding:
            lhs = set(_bits(below[l.join[a][b]]))
            both = point_mask[a] & point_mask[b]
            either = point_mask[a] | point_mask[b]
            if both:
                rhs = {p for p in atoms if point_mask[p] & ~either == 0}
            else:
                rhs = set(_bits(below[a])) | set(_bits(below[b]))
            if lhs != rhs:
                p3_ok, p3_detail = False, (
                    f"bounding pair ({l.labels[a]}, {l.labels[b]}) "
                    f"{'in' if both else 'not in'} a common 1-point violates the atom identity"
                )
                break
        if not p3_ok:
            break
    axioms.append(AxiomStatus("P3'", "pass" if p3_ok else "fail", p3_detail))

    # (P4') separation by bounding elements joining to the top.
    p4_ok, p4_detail = True, "verified"
    for i, x in enumerate(points):
        for j, y in enumerate(points):
            if i == j:
                continue
            if not any(
                l.join[a][b] == l.top
                for a in bounding if not point_mask[a] >> i & 1
                for b in bounding if not point_mask[b] >> j & 1
            ):
                p4_ok, p4_detail = False, "no separating bounding pair joins to the top"
                break
        if not p4_ok:
            break
    axioms.append(AxiomStatus("P4'", "pass" if p4_ok else "fail", p4_detail))

    # (P5') joins of nests of bounding elements: a finite chain's join is its
    # maximum, so the check reduces to comparable pairs.
    p5_ok = all(
        l.join[a][b] in bounding_set
        for a in bounding for b in bounding
        if l.leq(a, b) or l.leq(b, a)
    )
    axioms.append(
        AxiomStatus("P5'", "pass" if p5_ok else "fail",
                    "finite nests are chains whose join is their maximum")
    )

    # (P6') uniqueness of the bounding decomposition below each element.
    p6 = _check_p6(l, bounding, point_mask, search_cap)
    axioms.append(p6)

    # (P7') finite subcollections: vacuous at finite scale.
    axioms.append(
        AxiomStatus("P7'", "trivial",
                    "every collection in a finite lattice is its own finite subcollection")
    )

    passed = all(ax.ok for ax in axioms)
    space = None
    iso_ok = None
    if passed:
        space = _reconstruct_space(l, bounding, points)
        if space.discrete:
            k = space.points
            if bell_number(k) == l.n and k <= oracle_cap:
                iso_ok = are_isomorphic(l.base, build_partition_lattice(k).base) is not None
            else:
                iso_ok = False
            passed = passed and iso_ok
    return FirbyReport(
        passed=passed,
        axioms=axioms,
        one_points=points,
        space=space,
        reconstruction_iso_ok=iso_ok,
        weak_single_count=len(single_collections(l, strong=False)),
        notes=(
            "single collections use the strong reading; weak-reading count reported",
        ),
    )


def _check_p6(l: FinLattice, bounding, point_mask, search_cap) -> AxiomStatus:
    nonzero = [b for b in bounding if b != l.bottom]
    budget = [search_cap]

    def bullet3(B: tuple) -> bool:
        for c in bounding:
            for b1 in B:
                if point_mask[c] & point_mask[b1]:
                    continue
                found = False
                for b in bounding:
                    if not l.leq(c, b):
                        continue
                    if point_mask[b] & point_mask[b1]:
                        continue
                    if all(
                        l.leq(b2, b)
                        for b2 in B
                        if point_mask[b] & point_mask[b2]
                    ):
                        found = True
                        break
                if not found:
                    return False
        return True

    for a in range(l.n):
        if a == l.bottom:
            continue
        candidates_pool = [b for b in nonzero if l.leq(b, a)]
        solutions = []

        def dfs(start: int, chosen: tuple, join: int):
            budget[0] -= 1
            if budget[0] < 0:
                raise SearchCapExceeded("(P6') candidate sweep exceeded the search cap")
            if join == a and chosen and bullet3(chosen):
                solutions.append(chosen)
                if len(solutions) > 1:
                    return
            for k in range(start, len(candidates_pool)):
                b = candidates_pool[k]
                if any(point_mask[b] & point_mask[c] for c in chosen):
                    continue
                dfs(k + 1, chosen + (b,), l.join[join][b])
                if len(solutions) > 1:
                    return

        dfs(0, (), l.bottom)
        expected = tuple(
            b for b in candidates_pool
            if not any(c != b and l.leq(b, c) for c in candidates_pool)
        )
        if len(solutions) != 1:
            return AxiomStatus(
                "P6'", "fail",
                f"element {l.labels[a]} admits {len(solutions)} bounding decompositions",
            )
        if set(solutions[0]) != set(expected):
            return AxiomStatus(
                "P6'", "fail",
                f"unique decomposition of {l.labels[a]} differs from its maximal bounding elements",
            )
    return AxiomStatus("P6'", "pass", f"search cap {search_cap}")


def _reconstruct_space(l: FinLattice, bounding, points) -> FiniteSpace:
    """Closed sets generated by singleton 1-points and the loci of fixed
    bounding elements, closed under union and intersection."""
    k = len(points)
    universe = frozenset(range(k))
    gens = {frozenset(), universe}
    for i in range(k):
        gens.add(frozenset([i]))
    for b in bounding:
        gens.add(frozenset(i for i, x in enumerate(points) if b in x.members))
    family = set(gens)
    changed = True
    while changed:
        changed = False
        current = list(family)
        for s, t in itertools.combinations(current, 2):
            for new in (s | t, s & t):
                if new not in family:
                    family.add(new)
                    changed = True
    closed = tuple(sorted(tuple(sorted(s)) for s in family))
    return FiniteSpace(k, closed)
