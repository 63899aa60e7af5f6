"""The inverse semigroup of embeddings into the full diagonal algebra,
its derived poset / groupoid / left-cancellative category, and the
automorphism-presheaf equivalence.

Elements are pairs (domain subalgebra, injective star-homomorphism into
the full algebra).  The product pulls the left factor's domain back
along the right factor and composes; the star inverts onto the image.
Pullbacks can hit the zero algebra, which lies outside the subalgebra
universe, so a zero element is adjoined to keep the tables total; every
product that needed it is visible in the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .categories import (
    FinCategory,
    Functor,
    Presheaf,
    category_of_elements,
    find_isomorphism,
    functor_properties,
    poset_as_category,
)
from .cstar import (
    CstarHom,
    Subalg,
    build_Cinj,
    build_Csub,
    compose_homs,
    enumerate_subalgebras,
    hom_set,
    inclusion_hom,
    _subcategory,
)
from .errors import CapExceeded, IsoNotFound
from .partitions import Partition
from .posets import FinPoset, are_isomorphic

T_CAP = 3


@dataclass(frozen=True)
class TElement:
    """A subalgebra together with an embedding into the full algebra."""

    domain: Subalg
    hom: CstarHom

    def __post_init__(self):
        if self.hom.source != self.domain:
            raise ValueError("hom must start at the domain")
        if self.hom.target != Subalg.full(self.domain.n):
            raise ValueError("hom must land in the full algebra")

    def label(self) -> str:
        return f"{self.domain.label()}~{''.join('.' if v is None else str(v) for v in self.hom.block_map)}"


def _into_subalgebra(vector: tuple, c: Subalg) -> bool:
    """Is the exact vector an element of c (constant on blocks, zero off
    support)?"""
    supp = c.support
    for x in range(1, c.n + 1):
        if x not in supp and vector[x - 1] != 0:
            return False
    for b in c.blocks:
        vals = {vector[x - 1] for x in b}
        if len(vals) != 1:
            return False
    return True


def _preimage_domain(left: TElement, right: TElement) -> Optional[Subalg]:
    """The largest subalgebra of right.domain whose image under right.hom
    lies in left.domain; None when only zero qualifies.

    Solved by merging and zeroing the blocks of right.domain under the
    linear constraints membership imposes on indicator coefficients.
    """
    n = right.domain.n
    k = right.domain.dimension
    assign = [None] * n  # point -> block of right.domain carrying it, via hom
    for a_idx, v in enumerate(right.hom.block_map):
        if v is not None:
            assign[a_idx] = v
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    zero = set()
    supp = left.domain.support
    for a in range(1, n + 1):
        j = assign[a - 1]
        if j is None:
            continue
        if a not in supp:
            zero.add(j)
    for b in left.domain.blocks:
        carried = [assign[a - 1] for a in b]
        defined = [j for j in carried if j is not None]
        if any(j is None for j in carried) and defined:
            zero.update(defined)
        for j1, j2 in zip(defined, defined[1:]):
            union(j1, j2)
    # propagate zeros through merged classes
    zero_roots = {find(j) for j in zero}
    classes = {}
    for j in range(k):
        r = find(j)
        if r in zero_roots:
            continue
        classes.setdefault(r, []).append(j)
    if not classes:
        return None
    blocks = []
    for group in classes.values():
        points = sorted(x for j in group for x in right.domain.blocks[j])
        blocks.append(tuple(points))
    return Subalg(n, Partition(n, tuple(blocks)))


def _mul(left: TElement, right: TElement) -> Optional[TElement]:
    """(C', i') . (C, i) = (preimage of C' under i, i' o i restricted)."""
    domain = _preimage_domain(left, right)
    if domain is None:
        return None
    n = domain.n
    full = Subalg.full(n)
    point_to_block = [None] * n
    for j, block in enumerate(domain.blocks):
        # image of the block indicator under i, then under i'
        vec_i = [0] * n
        for x in block:
            kblock = right.domain.partition.block_of(x)
            for a_idx, v in enumerate(right.hom.block_map):
                if v == kblock:
                    vec_i[a_idx] = 1
        # vec_i lies in left.domain by construction; express in its basis
        assert _into_subalgebra(tuple(vec_i), left.domain)
        coeffs = tuple(
            vec_i[b[0] - 1] for b in left.domain.blocks
        )
        vec_out = left.hom.apply_vector(coeffs)
        for a in range(1, n + 1):
            if vec_out[a - 1]:
                point_to_block[a - 1] = j
    hom = CstarHom(domain, full, tuple(point_to_block))
    return TElement(domain, hom)


def _star(t: TElement) -> TElement:
    """(C, i)* = (i(C), the inverse embedding)."""
    n = t.domain.n
    full = Subalg.full(n)
    image_points = [
        tuple(sorted(a + 1 for a, v in enumerate(t.hom.block_map) if v == j))
        for j in range(t.domain.dimension)
    ]
    image = Subalg(n, Partition(n, tuple(image_points)))
    block_map = [None] * n
    for j, points in enumerate(image_points):
        img_index = image.partition.block_of(points[0])
        for x in t.domain.blocks[j]:
            block_map[x - 1] = img_index
    return TElement(image, CstarHom(image, full, tuple(block_map)))


def inclusion_element(c: Subalg) -> TElement:
    return TElement(c, inclusion_hom(c, Subalg.full(c.n)))


@dataclass
class InvSemigroup:
    """Element list with total multiplication and star tables; the zero
    element, when present, sits at index `zero`."""

    elements: list  # TElement entries, zero represented by None
    mul: tuple
    star: tuple
    zero: Optional[int]

    @property
    def size(self):
        return len(self.elements)

    def label(self, k: int) -> str:
        return "0" if self.elements[k] is None else self.elements[k].label()

    def nonzero_indices(self):
        return [k for k in range(self.size) if self.elements[k] is not None]

    def idempotents(self, include_zero: bool = False):
        out = [k for k in range(self.size) if self.mul[k][k] == k]
        if not include_zero:
            out = [k for k in out if self.elements[k] is not None]
        return out


def build_T(n: int, cap: int = T_CAP) -> InvSemigroup:
    """All embeddings of the general subalgebras into the full algebra,
    with a zero adjoined so the multiplication table is total."""
    if not 1 <= n <= cap:
        raise CapExceeded(f"n={n} outside 1..{cap}")
    full = Subalg.full(n)
    elements = []
    for c in enumerate_subalgebras(n, unital_objects=False, cap=max(cap, n)):
        for h in hom_set(c, full):
            elements.append(TElement(c, h))
    elements.sort(
        key=lambda t: (
            sorted(t.domain.support),
            t.domain.blocks,
            tuple(-1 if v is None else v for v in t.hom.block_map),
        )
    )
    index = {(t.domain, t.hom.block_map): k for k, t in enumerate(elements)}
    zero = len(elements)
    size = zero + 1
    mul = [[zero] * size for _ in range(size)]
    star = [zero] * size
    for a, ta in enumerate(elements):
        star[a] = index[(lambda s: (s.domain, s.hom.block_map))(_star(ta))]
        for b, tb in enumerate(elements):
            prod = _mul(ta, tb)
            if prod is not None:
                mul[a][b] = index[(prod.domain, prod.hom.block_map)]
    return InvSemigroup(list(elements) + [None], tuple(map(tuple, mul)), tuple(star), zero)


# -- the inverse semigroup laws --------------------------------------------------------


@dataclass
class LawReport:
    ok: bool
    failure: str = ""
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def law_report(t: InvSemigroup) -> LawReport:
    """Associativity, the two star identities, and uniqueness of the
    generalized inverse, all exhaustive."""
    size = t.size
    mul = [list(row) for row in t.mul]
    for a in range(size):
        row_a = mul[a]
        for b in range(size):
            ab = row_a[b]
            row_ab = mul[ab]
            row_b = mul[b]
            for c in range(size):
                if row_ab[c] != row_a[row_b[c]]:
                    return LawReport(False, "associativity", (a, b, c))
    for a in range(size):
        s = t.star[a]
        if mul[mul[a][s]][a] != a:
            return LawReport(False, "i i* i = i", (a,))
        if mul[mul[s][a]][s] != s:
            return LawReport(False, "i* i i* = i*", (a,))
    for a in range(size):
        inverses = [
            b for b in range(size)
            if mul[mul[a][b]][a] == a and mul[mul[b][a]][b] == b
        ]
        if inverses != [t.star[a]]:
            return LawReport(False, "generalized inverse not unique", (a, tuple(inverses)))
    return LawReport(True)


def lemma_domain_codomain(t: InvSemigroup) -> bool:
    """i* i is the inclusion of the domain and i i* the inclusion of the
    image, for every nonzero element."""
    for k in t.nonzero_indices():
        elt = t.elements[k]
        dom_incl = inclusion_element(elt.domain)
        img_incl = inclusion_element(_star(elt).domain)
        left = t.mul[t.star[k]][k]
        right = t.mul[k][t.star[k]]
        if t.elements[left] != dom_incl or t.elements[right] != img_incl:
            return False
    return True


# -- derived structures -----------------------------------------------------------------


@dataclass
class DerivedStructures:
    idempotent_poset: FinPoset
    groupoid: FinCategory
    left_cancellative: FinCategory
    poset_iso: tuple
    groupoid_iso: tuple
    category_iso: tuple
    lemma_a2_ok: bool
    idempotents_are_inclusions: bool


def derived_structures(t: InvSemigroup, n: int) -> DerivedStructures:
    """The idempotent poset, the groupoid and the left-cancellative
    category of the semigroup, each with an explicit verified isomorphism
    onto its subalgebra model; raises IsoNotFound when a search fails."""
    idems = t.idempotents()
    idem_pos = {e: k for k, e in enumerate(idems)}

    incl_ok = all(
        t.elements[e] == inclusion_element(t.elements[e].domain) for e in idems
    )

    # E(T): e <= f iff e = f e
    pairs = [
        (idem_pos[e], idem_pos[f])
        for e in idems
        for f in idems
        if t.mul[f][e] == e
    ]
    eposet = FinPoset([t.label(e) for e in idems], pairs)
    csub = build_Csub(n, unital_objects=False)
    poset_iso = are_isomorphic(eposet, csub)
    if poset_iso is None:
        raise IsoNotFound("idempotent poset does not match the containment poset")

    # G(T): morphisms e -> f are elements with t* t = e, t t* = f
    gro_morphisms = []
    gro_tags = []
    for k in t.nonzero_indices():
        e = t.mul[t.star[k]][k]
        f = t.mul[k][t.star[k]]
        gro_morphisms.append((t.label(k), idem_pos[e], idem_pos[f]))
        gro_tags.append(k)
    gro_index = {k: i for i, k in enumerate(gro_tags)}
    comp = {}
    for gi, g in enumerate(gro_tags):
        for fi, f in enumerate(gro_tags):
            if gro_morphisms[fi][2] == gro_morphisms[gi][1]:
                comp[(gi, fi)] = gro_index[t.mul[g][f]]
    identities = [gro_index[e] for e in idems]
    groupoid = FinCategory([t.label(e) for e in idems], gro_morphisms, identities, comp, gro_tags)

    cinj = build_Cinj(n, unital_objects=False)
    ciso = _subcategory(cinj, sorted(cinj.isomorphisms()))
    gpair = find_isomorphism(groupoid, ciso)
    if gpair is None:
        raise IsoNotFound("groupoid does not match the isomorphism subcategory")

    # L(T): morphisms e -> f are elements with t* t = e and f t = t
    l_morphisms = []
    l_tags = []
    for k in t.nonzero_indices():
        e = t.mul[t.star[k]][k]
        for f in idems:
            if t.mul[f][k] == k:
                l_tags.append((k, f))
                l_morphisms.append((f"{t.label(k)}>{t.label(f)}", idem_pos[e], idem_pos[f]))
    l_index = {tag: i for i, tag in enumerate(l_tags)}
    l_comp = {}
    for gi, (g, gf) in enumerate(l_tags):
        for fi, (f, ff) in enumerate(l_tags):
            if l_morphisms[fi][2] == l_morphisms[gi][1]:
                l_comp[(gi, fi)] = l_index[(t.mul[g][f], gf)]
    l_identities = [l_index[(e, e)] for e in idems]
    lcat = FinCategory([t.label(e) for e in idems], l_morphisms, l_identities, l_comp, l_tags)

    lpair = find_isomorphism(lcat, cinj)
    if lpair is None:
        raise IsoNotFound("left-cancellative category does not match the model category")

    return DerivedStructures(
        idempotent_poset=eposet,
        groupoid=groupoid,
        left_cancellative=lcat,
        poset_iso=poset_iso,
        groupoid_iso=gpair,
        category_iso=lpair,
        lemma_a2_ok=lemma_domain_codomain(t),
        idempotents_are_inclusions=incl_ok,
    )


# -- the automorphism presheaf and its category of elements -------------------------------


@dataclass
class AutElementsReport:
    elements_category: FinCategory
    base_objects: int
    element_objects: int
    forward: Functor
    backward: Functor
    forward_properties: object
    backward_properties: object
    objects_roundtrip: bool

    @property
    def equivalence_ok(self):
        return (
            self.forward_properties.is_equivalence
            and self.backward_properties.is_equivalence
            and self.objects_roundtrip
        )


def aut_elements_equivalence(n: int, cap: int = T_CAP) -> AutElementsReport:
    """The presheaf of outgoing isomorphisms on the embedding category, its
    category of elements, and the two functors exchanging it with the
    containment poset."""
    if not 1 <= n <= cap:
        raise CapExceeded(f"n={n} outside 1..{cap}")
    cinj = build_Cinj(n, unital_objects=False)
    objs = cinj.subalgebras
    isos = sorted(cinj.isomorphisms())
    hom_index = {
        (i, j, h.block_map): k for k, (i, j, h) in enumerate(cinj.morphism_tags)
    }

    sets = [[] for _ in objs]
    for m in isos:
        sets[cinj.dom(m)].append(m)
    sets = [sorted(s) for s in sets]
    positions = [{m: p for p, m in enumerate(s)} for s in sets]

    def restrict_along(k: int, j: int) -> int:
        """Aut(k)(j) = the corestriction of j o k, as an iso out of dom(k)."""
        (src, mid, hom_k) = cinj.morphism_tags[k]
        (mid2, tgt, hom_j) = cinj.morphism_tags[j]
        composite = compose_homs(hom_j, hom_k)
        core = composite.corestrict()
        img_obj = next(i for i, c in enumerate(objs) if c == core.target)
        return hom_index[(src, img_obj, core.block_map)]

    maps = {}
    for k in range(len(cinj.morphisms)):
        d = cinj.dom(k)
        c = cinj.cod(k)
        maps[k] = tuple(positions[d][restrict_along(k, j)] for j in sets[c])
    presheaf = Presheaf(cinj, [[cinj.label(m) for m in s] for s in sets], maps)
    elements, projection = category_of_elements(presheaf)

    csub = build_Csub(n, unital_objects=False)
    base = poset_as_category(csub)

    # forward: C -> (C, id_C); the containment C <= D goes to the inclusion
    element_index = {}
    pos = 0
    for x in range(len(objs)):
        for p in range(len(sets[x])):
            element_index[(x, p)] = pos
            pos += 1
    fwd_objects = [
        element_index[(x, positions[x][cinj.identities[x]])] for x in range(len(objs))
    ]
    elt_mor_index = {}
    for k, (m, v) in enumerate(elements.morphism_tags):
        elt_mor_index[(m, v)] = k
    fwd_morphisms = []
    for k, (lbl, i, j) in enumerate(base.morphisms):
        incl = inclusion_hom(objs[i], objs[j])
        m = hom_index[(i, j, incl.block_map)]
        v = positions[j][cinj.identities[j]]
        fwd_morphisms.append(elt_mor_index[(m, v)])
    forward = Functor(base, elements, fwd_objects, fwd_morphisms)

    # backward: (C, i) -> image of i; a morphism becomes the containment
    base_pairs = {(i, j): k for k, (lbl, i, j) in enumerate(base.morphisms)}
    bwd_objects = []
    for x in range(len(objs)):
        for p in range(len(sets[x])):
            iso = cinj.morphism_tags[sets[x][p]][2]
            img = iso.image()
            bwd_objects.append(next(i for i, c in enumerate(objs) if c == img))
    bwd_morphisms = []
    for k, (m, v) in enumerate(elements.morphism_tags):
        d, c = cinj.dom(m), cinj.cod(m)
        src = bwd_objects[element_index[(d, presheaf.maps[m][v])]]
        tgt = bwd_objects[element_index[(c, v)]]
        bwd_morphisms.append(base_pairs[(src, tgt)])
    backward = Functor(elements, base, bwd_objects, bwd_morphisms)

    roundtrip = all(
        bwd_objects[fwd_objects[x]] == x for x in range(len(objs))
    )
    return AutElementsReport(
        elements_category=elements,
        base_objects=len(objs),
        element_objects=len(elements.objects),
        forward=forward,
        backward=backward,
        forward_properties=functor_properties(forward),
        backward_properties=functor_properties(backward),
        objects_roundtrip=roundtrip,
    )
