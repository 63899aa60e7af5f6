"""Exact finite model of the commutative subalgebras of a diagonal algebra.

A subalgebra of the n-dimensional diagonal algebra is the span of the
indicator vectors of disjoint blocks over a support subset of {1..n};
an injective star-homomorphism between two of them is a partial map
from target blocks onto source blocks (each source indicator goes to
the sum of its assigned target indicators).  Everything is validated
against a 0/1-matrix oracle that multiplies actual integer vectors, so
the block-map representation is checked rather than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .amalgam import grothendieck
from .categories import FinCategory, Functor, FunctorProperties, functor_properties
from .errors import CapExceeded, LatcatError, ZeroImage
from .partitions import Partition, enumerate_partitions, build_partition_lattice
from .posets import FinLattice, FinPoset, as_lattice, are_isomorphic

SUBALG_CAP = 4


@dataclass(frozen=True)
class Subalg:
    """The span of the block indicators of a supported partition."""

    n: int
    partition: Partition

    def __post_init__(self):
        if self.partition.n != self.n:
            raise ValueError("partition ground set does not match n")

    @property
    def blocks(self):
        return self.partition.blocks

    @property
    def dimension(self):
        return len(self.blocks)

    @property
    def support(self):
        return self.partition.support

    @property
    def unital(self):
        return self.partition.full_support

    def indicator(self, block_index: int) -> tuple:
        b = set(self.blocks[block_index])
        return tuple(1 if x in b else 0 for x in range(1, self.n + 1))

    def contains_subalg(self, other: "Subalg") -> bool:
        """other is a subset of self: every indicator of other is constant
        on each block of self and vanishes off self's support."""
        supp = self.support
        for b in other.blocks:
            bs = set(b)
            if not bs <= supp:
                return False
            for c in self.blocks:
                cs = set(c)
                if cs & bs and not cs <= bs:
                    return False
        return True

    def label(self) -> str:
        return self.partition.label()

    @staticmethod
    def full(n: int) -> "Subalg":
        return Subalg(n, Partition.discrete(n))


@dataclass(frozen=True)
class CstarHom:
    """block_map[k] names the source block the k-th target block carries,
    or None; surjectivity onto source blocks encodes injectivity."""

    source: Subalg
    target: Subalg
    block_map: tuple

    def __post_init__(self):
        if len(self.block_map) != self.target.dimension:
            raise ValueError("block map must be total on target blocks")
        hit = [v for v in self.block_map if v is not None]
        if any(not 0 <= v < self.source.dimension for v in hit):
            raise ValueError("block map hits a nonexistent source block")
        if set(hit) != set(range(self.source.dimension)):
            raise ValueError("block map must be surjective onto source blocks")

    @property
    def unit_preserving(self) -> bool:
        return all(v is not None for v in self.block_map)

    def apply_indicator(self, block_index: int) -> tuple:
        """Image of the block_index-th source indicator, as a 0/1 vector."""
        points = set()
        for k, v in enumerate(self.block_map):
            if v == block_index:
                points.update(self.target.blocks[k])
        return tuple(1 if x in points else 0 for x in range(1, self.source.n + 1))

    def apply_vector(self, coeffs: tuple) -> tuple:
        """Image of sum_k coeffs[k] * indicator(k), exactly."""
        out = [0] * self.source.n
        for k, v in enumerate(self.block_map):
            if v is None:
                continue
            for x in self.target.blocks[k]:
                out[x - 1] = coeffs[v]
        return tuple(out)

    def matrix(self) -> tuple:
        """Rows indexed by target blocks, columns by source blocks."""
        return tuple(
            tuple(1 if v == j else 0 for j in range(self.source.dimension))
            for v in self.block_map
        )

    def image(self) -> Subalg:
        """The image subalgebra inside the target's ambient space."""
        blocks = []
        for j in range(self.source.dimension):
            points = [x for k, v in enumerate(self.block_map) if v == j for x in self.target.blocks[k]]
            blocks.append(tuple(sorted(points)))
        return Subalg(self.target.n, Partition(self.target.n, tuple(blocks)))

    def corestrict(self) -> "CstarHom":
        """The same map viewed as an isomorphism onto its image."""
        img = self.image()
        assign = []
        for b in img.blocks:
            first = b[0]
            k = self.target.partition.block_of(first)
            assign.append(self.block_map[k])
        return CstarHom(self.source, img, tuple(assign))


def compose_homs(g: CstarHom, f: CstarHom) -> CstarHom:
    """g o f: block maps compose contravariantly."""
    if f.target != g.source:
        raise ValueError("homs not composable")
    block_map = tuple(
        f.block_map[v] if v is not None else None
        for v in (g.block_map[k] for k in range(g.target.dimension))
    )
    return CstarHom(f.source, g.target, block_map)


def identity_hom(c: Subalg) -> CstarHom:
    return CstarHom(c, c, tuple(range(c.dimension)))


def inclusion_hom(c: Subalg, d: Subalg) -> CstarHom:
    """The inclusion c -> d for c a subset of d: each d-block carries the
    c-block containing it, if any."""
    if not d.contains_subalg(c):
        raise ValueError("not a subalgebra inclusion")
    assign = []
    for b in d.blocks:
        holder = None
        for j, cb in enumerate(c.blocks):
            if set(b) <= set(cb):
                holder = j
                break
        assign.append(holder)
    return CstarHom(c, d, tuple(assign))


# -- the star-homomorphism matrix oracle --------------------------------------------


def matrix_is_injective_star_hom(matrix, src_dim: int, tgt_dim: int) -> bool:
    """Multiplicativity, star-preservation and injectivity of a candidate
    0/1 matrix acting on block-indicator bases, checked on exact vectors.

    Over real 0/1 entries the star check reduces to the matrix acting
    coordinatewise, which multiplication already covers; it is asserted
    alongside for completeness.
    """
    cols = [tuple(matrix[i][j] for i in range(tgt_dim)) for j in range(src_dim)]
    for j in range(src_dim):
        if all(v == 0 for v in cols[j]):
            return False  # not injective
        for k in range(src_dim):
            # basis indicators are orthogonal idempotents: e_j e_k = [j=k] e_j
            product = tuple(cols[j][i] * cols[k][i] for i in range(tgt_dim))
            expected = cols[j] if j == k else tuple([0] * tgt_dim)
            if product != expected:
                return False
    return True


def all_matrix_homs(src: Subalg, tgt: Subalg) -> list:
    """Every 0/1 matrix of the right shape passing the oracle."""
    out = []
    for bits in itertools.product((0, 1), repeat=src.dimension * tgt.dimension):
        matrix = [
            bits[i * src.dimension:(i + 1) * src.dimension]
            for i in range(tgt.dimension)
        ]
        if matrix_is_injective_star_hom(matrix, src.dimension, tgt.dimension):
            out.append(tuple(tuple(row) for row in matrix))
    return out


# -- enumeration and the two categories ----------------------------------------------


def enumerate_subalgebras(n: int, unital_objects: bool = True, cap: int = SUBALG_CAP) -> list:
    if not 1 <= n <= cap:
        raise CapExceeded(f"n={n} outside 1..{cap}")
    parts = enumerate_partitions(n, full_support_only=unital_objects, cap=max(cap, n))
    return [Subalg(n, p) for p in parts]


def hom_set(src: Subalg, tgt: Subalg, unit_preserving_only: bool = False) -> list:
    """All injective star-homomorphisms src -> tgt as block maps."""
    if src.n != tgt.n:
        raise ValueError("homs need a common ambient dimension")
    out = []
    for assign in itertools.product([None] + list(range(src.dimension)), repeat=tgt.dimension):
        hit = [v for v in assign if v is not None]
        if set(hit) != set(range(src.dimension)):
            continue
        if unit_preserving_only and None in assign:
            continue
        out.append(CstarHom(src, tgt, assign))
    return out


def build_Csub(n: int, unital_objects: bool = True, cap: int = SUBALG_CAP) -> FinPoset:
    """The containment poset of subalgebras."""
    objs = enumerate_subalgebras(n, unital_objects, cap)
    pairs = [
        (i, j)
        for i, c in enumerate(objs)
        for j, d in enumerate(objs)
        if d.contains_subalg(c)
    ]
    poset = FinPoset([c.label() for c in objs], pairs)
    poset.subalgebras = objs
    return poset


def build_Cinj(n: int, unital_objects: bool = True, cap: int = SUBALG_CAP,
               unit_preserving_only: bool = False) -> FinCategory:
    """The category of injective star-homomorphisms; left-cancellativity
    is a verified property of the corpus, not an assumption."""
    objs = enumerate_subalgebras(n, unital_objects, cap)
    morphisms = []
    tags = []
    index = {}
    for i, src in enumerate(objs):
        for j, tgt in enumerate(objs):
            for h in hom_set(src, tgt, unit_preserving_only):
                index[(i, j, h.block_map)] = len(morphisms)
                morphisms.append((f"h{len(morphisms)}[{src.label()}->{tgt.label()}]", i, j))
                tags.append((i, j, h))
    identities = [index[(i, i, identity_hom(c).block_map)] for i, c in enumerate(objs)]
    comp = {}
    for gk, (j1, k, g) in enumerate(tags):
        for fk, (i, j2, f) in enumerate(tags):
            if j2 == j1:
                h = compose_homs(g, f)
                comp[(gk, fk)] = index[(i, k, h.block_map)]
    cat = FinCategory([c.label() for c in objs], morphisms, identities, comp, tags)
    cat.subalgebras = objs
    return cat


def is_left_cancellative(cat: FinCategory) -> bool:
    for g in range(len(cat.morphisms)):
        seen = {}
        for f in range(len(cat.morphisms)):
            if cat.cod(f) != cat.dom(g):
                continue
            h = cat.comp[(g, f)]
            if h in seen and seen[h] != f:
                return False
            seen[h] = f
    return True


# -- the comparison functor -----------------------------------------------------------


@dataclass
class ComparisonReport:
    n: int
    functorial: bool
    convention: str
    object_bijective: bool
    properties: Optional[FunctorProperties]
    end_top_source: int        # endomorphisms of the one-block object upstairs
    end_top_target: int        # endomorphisms of its image downstairs
    hom_t_d_target: int        # homs one-block -> discrete in the model
    hom_t_d_induced: int       # of those, how many the functor reaches
    source_hom_matrix: list
    target_hom_matrix: list
    functor: Optional[Functor] = None


def comparison_report(n: int, cap: int = SUBALG_CAP) -> ComparisonReport:
    """The functor from the permutation-action category to the opposite of
    the injective-homomorphism category, with exact hom counts.

    The morphism assignment composes with the inverse point map first; if
    that fails to be functorial the mirrored convention is tried, and the
    convention used is recorded.
    """
    from .amalgam import MonoidAction
    from .partitions import permutation_action, symmetric_monoid

    monoid, perms = symmetric_monoid(n)
    lattice = build_partition_lattice(n)
    parts = lattice.partitions
    part_index = {p: k for k, p in enumerate(parts)}
    table = [[part_index[permutation_action(pm, p)] for p in parts] for pm in perms]
    act = MonoidAction(monoid, lattice.base, table)
    gro = grothendieck(act)
    cinj = build_Cinj(n, unital_objects=True, cap=cap)
    objs = cinj.subalgebras
    cop = cinj.opposite()
    obj_map = [next(j for j, c in enumerate(objs) if c.partition == p) for p in parts]
    hom_index = {
        (i, j, h.block_map): k for k, (i, j, h) in enumerate(cinj.morphism_tags)
    }

    functor, props, convention = None, None, "none"
    for candidate in ("inverse", "direct"):
        try:
            morphism_map = []
            for (m, p, q) in gro.morphism_tags:
                point_map = perms[m].inverse() if candidate == "inverse" else perms[m]
                hom = _induced_hom(parts[p], parts[q], point_map, objs[obj_map[q]], objs[obj_map[p]])
                # a morphism p -> q upstairs lands on C(q) -> C(p) in the model,
                # i.e. a morphism obj_map[p] -> obj_map[q] of the opposite
                morphism_map.append(hom_index[(obj_map[q], obj_map[p], hom.block_map)])
            functor = Functor(gro, cop, obj_map, morphism_map)
            props = functor_properties(functor)
            convention = candidate
            break
        except (LatcatError, KeyError, ValueError):
            functor, props = None, None

    t_idx = next(j for j, c in enumerate(objs) if c.dimension == 1)
    d_idx = next(j for j, c in enumerate(objs) if c.dimension == n)
    t_up = next(k for k, p in enumerate(parts) if len(p.blocks) == 1)
    d_up = next(k for k, p in enumerate(parts) if len(p.blocks) == n)
    induced = set()
    if functor is not None:
        for f in gro.hom(d_up, t_up):
            # downstairs this lands in Hom(C(t), C(d))
            induced.add(functor.morphism_map[f])
    return ComparisonReport(
        n=n,
        functorial=functor is not None,
        convention=convention,
        object_bijective=len(set(obj_map)) == len(objs) and len(obj_map) == len(parts),
        properties=props,
        end_top_source=len(gro.hom(t_up, t_up)),
        end_top_target=len(cinj.hom(t_idx, t_idx)),
        hom_t_d_target=len(cinj.hom(t_idx, d_idx)),
        hom_t_d_induced=len(induced),
        source_hom_matrix=gro.hom_matrix(),
        target_hom_matrix=cinj.hom_matrix(),
        functor=functor,
    )


def _induced_hom(p: Partition, q: Partition, point_map, src: Subalg, tgt: Subalg) -> CstarHom:
    """The model hom C(q) -> C(p) sending the indicator of a q-block to the
    indicator of its point-map image; defined when each p-block sits
    inside exactly one image block."""
    images = [set(point_map(x) for x in b) for b in q.blocks]
    assign = []
    for b in tgt.blocks:  # tgt = C(p), its blocks are p's blocks
        holders = [j for j, img in enumerate(images) if set(b) <= img]
        if len(holders) != 1:
            raise ValueError("induced block map undefined")
        assign.append(holders[0])
    return CstarHom(src, tgt, tuple(assign))


# -- weak terminal objects ---------------------------------------------------------


@dataclass
class WeakTerminalReport:
    objects: list                  # weakly terminal object indices
    equivalences: dict             # index -> (full, faithful, essentially_surjective)

    @property
    def all_equivalences_ok(self):
        return all(all(flags) for flags in self.equivalences.values())


def weak_terminal_report(cat: FinCategory) -> WeakTerminalReport:
    """Weakly terminal objects, and for each the verification that the full
    subcategory of subalgebras of it includes fully, faithfully and
    essentially surjectively (the reduction-to-one-object equivalence).

    The inclusion functor is materialized and its three properties are
    computed exhaustively rather than argued."""
    n_obj = len(cat.objects)
    terminals = [
        d for d in range(n_obj) if all(cat.hom(x, d) for x in range(n_obj))
    ]
    subalgs = getattr(cat, "subalgebras", None)
    equivalences = {}
    for d in terminals:
        if subalgs is None:
            keep = [x for x in range(n_obj) if cat.hom(x, d)]
        else:
            keep = [x for x in range(n_obj) if subalgs[d].contains_subalg(subalgs[x])]
        keep_set = set(keep)
        kept_morphisms = [
            m for m in range(len(cat.morphisms))
            if cat.dom(m) in keep_set and cat.cod(m) in keep_set
        ]
        sub = _subcategory_on_objects(cat, keep, kept_morphisms)
        inclusion = Functor(
            sub, cat,
            keep,
            kept_morphisms,
        )
        props = functor_properties(inclusion)
        equivalences[d] = (props.full, props.faithful, props.essentially_surjective)
    return WeakTerminalReport(terminals, equivalences)


def _subcategory_on_objects(cat: FinCategory, keep_objects, keep_morphisms) -> FinCategory:
    obj_pos = {x: i for i, x in enumerate(keep_objects)}
    mor_pos = {m: i for i, m in enumerate(keep_morphisms)}
    morphisms = [
        (cat.morphisms[m][0], obj_pos[cat.dom(m)], obj_pos[cat.cod(m)])
        for m in keep_morphisms
    ]
    identities = [mor_pos[cat.identities[x]] for x in keep_objects]
    comp = {
        (mor_pos[g], mor_pos[f]): mor_pos[h]
        for (g, f), h in cat.comp.items()
        if g in mor_pos and f in mor_pos
    }
    return FinCategory([cat.objects[x] for x in keep_objects], morphisms, identities, comp)


# -- functoriality: direct images and the ideal condition ----------------------------


def direct_image(phi: dict, m: int, c: Subalg) -> Subalg:
    """Image of c under the star-homomorphism into an m-dimensional diagonal
    algebra described dually by the partial point map phi: {1..m} -> {1..n}.

    Each block indicator maps to the indicator of its phi-preimage; empty
    preimages drop out, and a fully zero image is an error because the
    zero algebra is outside the subalgebra universe.
    """
    for a, v in phi.items():
        if not (1 <= a <= m) or not (1 <= v <= c.n):
            raise ValueError(f"point map entry {a}->{v} out of range")
    blocks = []
    for b in c.blocks:
        bs = set(b)
        pre = tuple(sorted(a for a, v in phi.items() if v in bs))
        if pre:
            blocks.append(pre)
    if not blocks:
        raise ZeroImage("image subalgebra is zero")
    return Subalg(m, Partition(m, tuple(blocks)))


@dataclass(frozen=True)
class IdealModel:
    """The closed ideal of vectors supported inside a coordinate subset."""

    n: int
    coords: frozenset

    def blocks_inside(self, c: Subalg) -> frozenset:
        """Indices of c's blocks whose indicator lies in the ideal."""
        return frozenset(
            j for j, b in enumerate(c.blocks) if set(b) <= self.coords
        )

    @staticmethod
    def all_ideals(n: int):
        coords = range(1, n + 1)
        for r in range(n + 1):
            for s in itertools.combinations(coords, r):
                yield IdealModel(n, frozenset(s))


def ideal_condition_morphisms(n: int, cap: int = SUBALG_CAP):
    """The subcategory of morphisms i with preimage(I ∩ target) = I ∩ source
    for every coordinate ideal I; closure under composition and identities
    is verified, not assumed.

    Returns (category, kept_indices) where kept_indices point into
    build_Cinj(n, unital_objects=False).
    """
    cat = build_Cinj(n, unital_objects=False, cap=cap)
    kept = []
    for k, (i, j, hom) in enumerate(cat.morphism_tags):
        if all(_ideal_condition_holds(hom, ideal) for ideal in IdealModel.all_ideals(n)):
            kept.append(k)
    kept_set = set(kept)
    for x in cat.identities:
        assert x in kept_set, "identities must satisfy the ideal condition"
    for g in kept:
        for f in kept:
            if cat.cod(f) == cat.dom(g):
                assert cat.comp[(g, f)] in kept_set, "ideal condition not closed under composition"
    sub = _subcategory(cat, kept)
    return sub, kept


def _ideal_condition_holds(hom: CstarHom, ideal: IdealModel) -> bool:
    """preimage(I ∩ target) = I ∩ source on the block bases: the source
    blocks inside the ideal must equal the source blocks all of whose
    carrying target blocks are inside it."""
    lhs = ideal.blocks_inside(hom.source)
    inside_target = ideal.blocks_inside(hom.target)
    rhs = frozenset(
        j for j in range(hom.source.dimension)
        if all(
            k in inside_target
            for k, v in enumerate(hom.block_map) if v == j
        )
    )
    return lhs == rhs


def _subcategory(cat: FinCategory, kept: list) -> FinCategory:
    pos = {k: idx for idx, k in enumerate(kept)}
    morphisms = [cat.morphisms[k] for k in kept]
    identities = [pos[e] for e in cat.identities]
    comp = {
        (pos[g], pos[f]): pos[h]
        for (g, f), h in cat.comp.items()
        if g in pos and f in pos and h in pos
    }
    tags = [cat.morphism_tags[k] for k in kept] if cat.morphism_tags else None
    return FinCategory(cat.objects, morphisms, identities, comp, tags)


# -- the projection bundle ------------------------------------------------------------


def bundle_projections(n: int, cap: int = SUBALG_CAP) -> FinLattice:
    """The union over unital subalgebras of their projection Boolean
    algebras, ordered by p <= q iff pq = p; asserted Boolean of rank n."""
    projections = set()
    for c in enumerate_subalgebras(n, unital_objects=True, cap=cap):
        for r in range(c.dimension + 1):
            for blocks in itertools.combinations(range(c.dimension), r):
                vec = [0] * n
                for k in blocks:
                    for x in c.blocks[k]:
                        vec[x - 1] = 1
                projections.add(tuple(vec))
    projections = sorted(projections)
    pairs = [
        (i, j)
        for i, p in enumerate(projections)
        for j, q in enumerate(projections)
        if all(pv * qv == pv for pv, qv in zip(p, q))
    ]
    labels = ["".join(map(str, p)) for p in projections]
    lattice = as_lattice(FinPoset(labels, pairs))
    from .posets import boolean_poset

    assert lattice.n == 2 ** n
    assert are_isomorphic(lattice.base, boolean_poset(n)) is not None
    return lattice
