"""Finite categories, monoids, functors and presheaves with exhaustive checks.

Categories are stored extensionally: a list of objects, a list of
morphisms (label, dom, cod), identity indices, and a composition table
on composable pairs.  Construction re-verifies identity and
associativity laws, so everything downstream may assume a lawful
category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    AssociativityViolation,
    DanglingComposite,
    IdentityViolation,
    NotFunctorial,
    SearchCapExceeded,
)
from .posets import FinPoset


class FinCategory:
    """A finite category with explicit composition table.

    comp maps (g, f) -> g o f for every composable pair, i.e. whenever
    cod(f) = dom(g).  morphism_tags optionally carries structured data
    per morphism (used by the Grothendieck construction).
    """

    def __init__(self, objects, morphisms, identities, comp, morphism_tags=None):
        self.objects = tuple(str(o) for o in objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object labels must be distinct")
        self.morphisms = tuple((str(m[0]), m[1], m[2]) for m in morphisms)
        if len(set(m[0] for m in self.morphisms)) != len(self.morphisms):
            raise ValueError("morphism labels must be distinct")
        self.identities = tuple(identities)
        self.comp = dict(comp)
        self.morphism_tags = tuple(morphism_tags) if morphism_tags is not None else None
        self._hom = None
        self._isos = None
        self._validate()

    # -- law checks ----------------------------------------------------------

    def _validate(self):
        n_obj = len(self.objects)
        for label, d, c in self.morphisms:
            if not (0 <= d < n_obj and 0 <= c < n_obj):
                raise ValueError(f"morphism {label} has dangling endpoints")
        if len(self.identities) != n_obj:
            raise IdentityViolation("one identity per object required")
        for x, e in enumerate(self.identities):
            _, d, c = self.morphisms[e]
            if d != x or c != x:
                raise IdentityViolation(f"identity of {self.objects[x]} is not an endomorphism")
        composable = {
            (g, f)
            for f in range(len(self.morphisms))
            for g in range(len(self.morphisms))
            if self.morphisms[f][2] == self.morphisms[g][1]
        }
        if set(self.comp) != composable:
            extra = set(self.comp) - composable
            missing = composable - set(self.comp)
            which = next(iter(extra or missing))
            raise DanglingComposite(f"composition table mismatch at pair {which}")
        for (g, f), h in self.comp.items():
            if self.morphisms[h][1] != self.morphisms[f][1] or self.morphisms[h][2] != self.morphisms[g][2]:
                raise DanglingComposite(f"composite of pair ({g},{f}) has wrong endpoints")
        for f, (_, d, c) in enumerate(self.morphisms):
            if self.comp[(f, self.identities[d])] != f:
                raise IdentityViolation(f"right identity law fails at {self.morphisms[f][0]}")
            if self.comp[(self.identities[c], f)] != f:
                raise IdentityViolation(f"left identity law fails at {self.morphisms[f][0]}")
        by_dom = {}
        for g in range(len(self.morphisms)):
            by_dom.setdefault(self.morphisms[g][1], []).append(g)
        n_mor = len(self.morphisms)
        if n_mor <= 1500:
            # row arrays make the cubic associativity sweep cheap
            rows = [[-1] * n_mor for _ in range(n_mor)]
            for (g, f), h in self.comp.items():
                rows[g][f] = h
            for f in range(n_mor):
                for g in by_dom.get(self.morphisms[f][2], ()):
                    gf = rows[g][f]
                    for h in by_dom.get(self.morphisms[g][2], ()):
                        if rows[h][gf] != rows[rows[h][g]][f]:
                            raise AssociativityViolation(
                                f"associativity fails at triple ({self.morphisms[h][0]}, "
                                f"{self.morphisms[g][0]}, {self.morphisms[f][0]})"
                            )
        else:
            for f in range(n_mor):
                for g in by_dom.get(self.morphisms[f][2], ()):
                    gf = self.comp[(g, f)]
                    for h in by_dom.get(self.morphisms[g][2], ()):
                        if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                            raise AssociativityViolation(
                                f"associativity fails at triple ({self.morphisms[h][0]}, "
                                f"{self.morphisms[g][0]}, {self.morphisms[f][0]})"
                            )

    # -- hom structure ---------------------------------------------------------

    def hom(self, x: int, y: int) -> tuple:
        if self._hom is None:
            table = {}
            for m, (_, d, c) in enumerate(self.morphisms):
                table.setdefault((d, c), []).append(m)
            self._hom = {k: tuple(v) for k, v in table.items()}
        return self._hom.get((x, y), ())

    def dom(self, m: int) -> int:
        return self.morphisms[m][1]

    def cod(self, m: int) -> int:
        return self.morphisms[m][2]

    def label(self, m: int) -> str:
        return self.morphisms[m][0]

    def compose(self, g: int, f: int) -> int:
        return self.comp[(g, f)]

    def isomorphisms(self) -> frozenset:
        """Morphism indices with a two-sided inverse; cached."""
        if self._isos is None:
            isos = set()
            for f, (_, d, c) in enumerate(self.morphisms):
                for g in self.hom(c, d):
                    if (
                        self.comp[(g, f)] == self.identities[d]
                        and self.comp[(f, g)] == self.identities[c]
                    ):
                        isos.add(f)
                        break
            self._isos = frozenset(isos)
        return self._isos

    def iso_classes(self) -> list:
        isos = self.isomorphisms()
        classes = []
        seen = set()
        for x in range(len(self.objects)):
            if x in seen:
                continue
            cls = {x}
            for f in isos:
                if self.dom(f) == x:
                    cls.add(self.cod(f))
            seen |= cls
            classes.append(sorted(cls))
        return classes

    def opposite(self) -> "FinCategory":
        morphisms = [(lbl, c, d) for (lbl, d, c) in self.morphisms]
        comp = {(f, g): h for (g, f), h in self.comp.items()}
        return FinCategory(self.objects, morphisms, self.identities, comp, self.morphism_tags)

    def hom_matrix(self) -> list:
        return [
            [len(self.hom(x, y)) for y in range(len(self.objects))]
            for x in range(len(self.objects))
        ]

    def __repr__(self):
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate_category(objects, morphisms, identities, comp, morphism_tags=None) -> FinCategory:
    """Build a verified FinCategory or raise the specific law violation."""
    return FinCategory(objects, morphisms, identities, comp, morphism_tags)


# -- monoids -------------------------------------------------------------------


class FinMonoid:
    """A finite monoid given by a total multiplication table."""

    def __init__(self, names: Sequence[str], unit: int, mul):
        self.names = tuple(str(x) for x in names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("monoid element names must be distinct")
        self.size = len(self.names)
        self.unit = unit
        self.mul = tuple(tuple(row) for row in mul)
        for a in range(self.size):
            if self.mul[self.unit][a] != a or self.mul[a][self.unit] != a:
                raise ValueError(f"unit law fails at {self.names[a]}")
            for b in range(self.size):
                for c in range(self.size):
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                        raise ValueError(
                            f"associativity fails at ({self.names[a]}, {self.names[b]}, {self.names[c]})"
                        )

    def opposite(self) -> "FinMonoid":
        return FinMonoid(
            self.names,
            self.unit,
            [[self.mul[b][a] for b in range(self.size)] for a in range(self.size)],
        )

    def is_group(self) -> bool:
        return all(self.inverse(a) is not None for a in range(self.size))

    def inverse(self, a: int) -> Optional[int]:
        for b in range(self.size):
            if self.mul[a][b] == self.unit and self.mul[b][a] == self.unit:
                return b
        return None

    def element_order(self, a: int) -> tuple:
        """(index, period) of the cyclic subsemigroup generated by a."""
        seen = {}
        x = a
        k = 1
        while x not in seen:
            seen[x] = k
            x = self.mul[x][a]
            k += 1
        return (seen[x], k - seen[x])

    def __repr__(self):
        return f"FinMonoid({self.size} elements)"


def one_object_category(m: FinMonoid, obj_label: str = "*") -> FinCategory:
    """The monoid as a one-object category; composition e_a o e_b = e_{ab}."""
    morphisms = [(m.names[a], 0, 0) for a in range(m.size)]
    comp = {(a, b): m.mul[a][b] for a in range(m.size) for b in range(m.size)}
    return FinCategory([obj_label], morphisms, [m.unit], comp)


def poset_as_category(p: FinPoset) -> FinCategory:
    """The posetal category: one morphism i -> j per related pair."""
    pairs = p.pairs()
    idx = {pair: k for k, pair in enumerate(pairs)}
    morphisms = [(f"le[{p.labels[i]}->{p.labels[j]}]", i, j) for i, j in pairs]
    identities = [idx[(i, i)] for i in range(p.n)]
    comp = {}
    for gk, (j1, k) in enumerate(pairs):
        for fk, (i, j2) in enumerate(pairs):
            if j2 == j1:
                comp[(gk, fk)] = idx[(i, k)]
    return FinCategory(p.labels, morphisms, identities, comp)


def monoid_isomorphism(a: FinMonoid, b: FinMonoid) -> Optional[tuple]:
    """Search for a monoid isomorphism a -> b; profile-pruned backtracking."""
    if a.size != b.size:
        return None

    def profile(m: FinMonoid, x: int):
        idem = m.mul[x][x] == x
        return (m.element_order(x), idem, sorted(m.element_order(m.mul[x][y]) for y in range(m.size)))

    pa = [profile(a, x) for x in range(a.size)]
    pb = [profile(b, x) for x in range(b.size)]
    if sorted(map(str, pa)) != sorted(map(str, pb)):
        return None
    cands = [[y for y in range(b.size) if pb[y] == pa[x]] for x in range(a.size)]
    image = [-1] * a.size
    used = [False] * b.size

    def extend(x: int) -> bool:
        if x == a.size:
            return True
        for y in cands[x]:
            if used[y]:
                continue
            if x == a.unit and y != b.unit:
                continue
            ok = True
            for x2 in range(x):
                p1, p2 = a.mul[x][x2], a.mul[x2][x]
                q1, q2 = b.mul[y][image[x2]], b.mul[image[x2]][y]
                if (image[p1] != -1 and image[p1] != q1) or (image[p2] != -1 and image[p2] != q2):
                    ok = False
                    break
                # products must at least stay inside unused-or-consistent cells
            if ok:
                image[x] = y
                used[y] = True
                if all(
                    image[a.mul[x1][x2]] in (-1, b.mul[image[x1]][image[x2]])
                    for x1 in range(a.size)
                    for x2 in range(a.size)
                    if image[x1] != -1 and image[x2] != -1
                ):
                    if extend(x + 1):
                        return True
                image[x] = -1
                used[y] = False
        return False

    if not extend(0):
        return None
    for x in range(a.size):
        for y in range(a.size):
            assert image[a.mul[x][y]] == b.mul[image[x]][image[y]]
    return tuple(image)


# -- functors -------------------------------------------------------------------


class Functor:
    """A verified functor between finite categories."""

    def __init__(self, source: FinCategory, target: FinCategory, object_map, morphism_map):
        self.source = source
        self.target = target
        self.object_map = tuple(object_map)
        self.morphism_map = tuple(morphism_map)
        for m, (_, d, c) in enumerate(source.morphisms):
            fm = self.morphism_map[m]
            if target.dom(fm) != self.object_map[d] or target.cod(fm) != self.object_map[c]:
                raise NotFunctorial(f"endpoint mismatch at {source.label(m)}")
        for x, e in enumerate(source.identities):
            if self.morphism_map[e] != target.identities[self.object_map[x]]:
                raise NotFunctorial(f"identity of {source.objects[x]} not preserved")
        for (g, f), h in source.comp.items():
            if target.comp[(self.morphism_map[g], self.morphism_map[f])] != self.morphism_map[h]:
                raise NotFunctorial(
                    f"composition not preserved at ({source.label(g)}, {source.label(f)})"
                )

    def __repr__(self):
        return f"Functor({self.source!r} -> {self.target!r})"


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, range(len(c.objects)), range(len(c.morphisms)))


def compose_functors(g: Functor, f: Functor) -> Functor:
    assert f.target is g.source or f.target == g.source
    return Functor(
        f.source,
        g.target,
        [g.object_map[x] for x in f.object_map],
        [g.morphism_map[m] for m in f.morphism_map],
    )


@dataclass
class FunctorProperties:
    faithful: bool
    full: bool
    essentially_surjective: bool
    faithful_witness: Optional[tuple] = None
    full_witness: Optional[tuple] = None

    @property
    def is_equivalence(self) -> bool:
        return self.faithful and self.full and self.essentially_surjective


def functor_properties(F: Functor) -> FunctorProperties:
    """Faithful / full / essentially surjective, each decided exhaustively."""
    src, tgt = F.source, F.target
    faithful, full = True, True
    faithful_w, full_w = None, None
    for x in range(len(src.objects)):
        for y in range(len(src.objects)):
            images = [F.morphism_map[m] for m in src.hom(x, y)]
            if len(set(images)) != len(images):
                if faithful:
                    faithful = False
                    faithful_w = (src.objects[x], src.objects[y])
            target_hom = set(tgt.hom(F.object_map[x], F.object_map[y]))
            if not target_hom <= set(images):
                if full:
                    full = False
                    full_w = (src.objects[x], src.objects[y])
    hit = {F.object_map[x] for x in range(len(src.objects))}
    ess = True
    for cls in tgt.iso_classes():
        if not hit & set(cls):
            ess = False
            break
    return FunctorProperties(faithful, full, ess, faithful_w, full_w)


# -- weak initial objects, endo monoids, hom preorder ----------------------------


@dataclass
class WeakInitialReport:
    objects: list
    unique_up_to_iso: bool


def weak_initial_objects(c: FinCategory) -> WeakInitialReport:
    """Objects with a morphism into every object, plus a pairwise-iso flag."""
    n = len(c.objects)
    wi = [x for x in range(n) if all(c.hom(x, y) for y in range(n))]
    isos = c.isomorphisms()
    unique = True
    for x, y in itertools.combinations(wi, 2):
        if not any(f in isos for f in c.hom(x, y)):
            unique = False
            break
    return WeakInitialReport(wi, unique)


@dataclass
class EndoMonoid:
    monoid: FinMonoid
    opposite: FinMonoid
    morphism_indices: tuple  # global morphism index per monoid element


def endo_monoid(c: FinCategory, x: int) -> EndoMonoid:
    """Hom(x, x) as a monoid under composition, plus its opposite."""
    endos = sorted(c.hom(x, x))
    pos = {m: k for k, m in enumerate(endos)}
    mul = [[pos[c.comp[(endos[a], endos[b])]] for b in range(len(endos))] for a in range(len(endos))]
    monoid = FinMonoid([c.label(m) for m in endos], pos[c.identities[x]], mul)
    return EndoMonoid(monoid, monoid.opposite(), tuple(endos))


@dataclass
class HomPreorder:
    relation: tuple          # bitmask per object: relation[x] has bit y iff x <= y
    quotient: FinPoset
    class_of: tuple          # object -> quotient index


def hom_preorder(c: FinCategory, retraction, zero: int) -> HomPreorder:
    """x <= y iff some f: x -> y has retraction value id_zero.

    `retraction` maps every morphism index to an endomorphism index of
    `zero`; it must be functorial and restrict to the identity on
    Hom(zero, zero), otherwise NotFunctorial is raised.
    """
    id0 = c.identities[zero]
    for m in c.hom(zero, zero):
        if retraction[m] != m:
            raise NotFunctorial("retraction must fix Hom(zero, zero) pointwise")
    for x, e in enumerate(c.identities):
        if retraction[e] != id0:
            raise NotFunctorial(f"retraction sends identity of {c.objects[x]} off id_zero")
    for (g, f), h in c.comp.items():
        if c.comp[(retraction[g], retraction[f])] != retraction[h]:
            raise NotFunctorial(f"retraction not functorial at ({c.label(g)}, {c.label(f)})")
    n = len(c.objects)
    rel = [0] * n
    for x in range(n):
        for y in range(n):
            if any(retraction[f] == id0 for f in c.hom(x, y)):
                rel[x] |= 1 << y
    # quotient by mutual comparability
    class_of = [-1] * n
    reps = []
    for x in range(n):
        if class_of[x] != -1:
            continue
        cls = [y for y in range(n) if rel[x] >> y & 1 and rel[y] >> x & 1]
        for y in cls:
            class_of[y] = len(reps)
        reps.append(x)
    pairs = [
        (class_of[x], class_of[y])
        for x in range(n)
        for y in range(n)
        if rel[x] >> y & 1
    ]
    quotient = FinPoset([c.objects[r] for r in reps], pairs)
    return HomPreorder(tuple(rel), quotient, tuple(class_of))


# -- category isomorphism search -------------------------------------------------


def _morphism_colors(c: FinCategory, rounds: int = 4):
    """WL-style refinement on the composition structure; colours are ranked
    per round in sorted signature order so they compare across categories."""
    ids = set(c.identities)
    isos = c.isomorphisms()
    colors = [
        (m in ids, m in isos, len(c.hom(c.dom(m), c.cod(m))))
        for m in range(len(c.morphisms))
    ]
    by_dom = {}
    by_cod = {}
    for g in range(len(c.morphisms)):
        by_dom.setdefault(c.dom(g), []).append(g)
        by_cod.setdefault(c.cod(g), []).append(g)
    for _ in range(rounds):
        sigs = []
        for m in range(len(c.morphisms)):
            post = sorted(
                (colors[g], colors[c.comp[(g, m)]])
                for g in by_dom.get(c.cod(m), ())
            )
            pre = sorted(
                (colors[f], colors[c.comp[(m, f)]])
                for f in by_cod.get(c.dom(m), ())
            )
            sigs.append((colors[m], tuple(post), tuple(pre)))
        rank = {sig: k for k, sig in enumerate(sorted(set(sigs)))}
        nxt = [rank[sig] for sig in sigs]
        if nxt == colors:
            break
        colors = nxt
    return colors


def find_isomorphism(c: FinCategory, d: FinCategory, cap: int = 2_000_000):
    """A strict isomorphism (functor pair composing to identities), or None.

    Raises SearchCapExceeded when the backtracking budget runs out.
    """
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None
    col_c = _morphism_colors(c)
    col_d = _morphism_colors(d)
    if sorted(col_c) != sorted(col_d):
        return None
    obj_col_c = [col_c[e] for e in c.identities]
    obj_col_d = [col_d[e] for e in d.identities]
    if sorted(obj_col_c) != sorted(obj_col_d):
        return None

    n_obj = len(c.objects)
    obj_image = [-1] * n_obj
    obj_used = [False] * n_obj
    mor_image = [-1] * len(c.morphisms)
    mor_used = [False] * len(d.morphisms)
    budget = [cap]

    factors = {m: [] for m in range(len(c.morphisms))}
    for (g, f), h in c.comp.items():
        factors[h].append((g, f))

    hom_pairs = sorted(
        {(c.dom(m), c.cod(m)) for m in range(len(c.morphisms))},
        key=lambda xy: (len(c.hom(*xy)), xy),
    )

    def consistent(m: int) -> bool:
        """All composition constraints whose three parts are now assigned."""
        t = mor_image[m]
        for f in range(len(c.morphisms)):
            if mor_image[f] == -1:
                continue
            if c.cod(f) == c.dom(m):
                h = c.comp[(m, f)]
                if mor_image[h] != -1 and d.comp[(t, mor_image[f])] != mor_image[h]:
                    return False
            if c.cod(m) == c.dom(f):
                h = c.comp[(f, m)]
                if mor_image[h] != -1 and d.comp[(mor_image[f], t)] != mor_image[h]:
                    return False
        for g, f in factors[m]:
            if mor_image[g] != -1 and mor_image[f] != -1:
                if d.comp[(mor_image[g], mor_image[f])] != t:
                    return False
        return True

    def assign_morphisms(pair_idx: int) -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchCapExceeded("category isomorphism search cap exceeded")
        if pair_idx == len(hom_pairs):
            return True
        x, y = hom_pairs[pair_idx]
        src = c.hom(x, y)
        tgt = d.hom(obj_image[x], obj_image[y])
        if len(src) != len(tgt):
            return False

        def place(k: int) -> bool:
            if k == len(src):
                return assign_morphisms(pair_idx + 1)
            m = src[k]
            for t in tgt:
                if mor_used[t] or col_d[t] != col_c[m]:
                    continue
                if m in c.identities and t != d.identities[obj_image[c.dom(m)]]:
                    continue
                mor_image[m] = t
                mor_used[t] = True
                if consistent(m) and place(k + 1):
                    return True
                mor_image[m] = -1
                mor_used[t] = False
            return False

        return place(0)

    def assign_objects(k: int) -> bool:
        if k == n_obj:
            return assign_morphisms(0)
        for y in range(n_obj):
            if obj_used[y] or obj_col_d[y] != obj_col_c[k]:
                continue
            obj_image[k] = y
            obj_used[y] = True
            if assign_objects(k + 1):
                return True
            obj_image[k] = -1
            obj_used[y] = False
        return False

    if not assign_objects(0):
        return None
    fwd = Functor(c, d, obj_image, mor_image)
    inv_obj = [0] * n_obj
    for x, y in enumerate(obj_image):
        inv_obj[y] = x
    inv_mor = [0] * len(c.morphisms)
    for m, t in enumerate(mor_image):
        inv_mor[t] = m
    bwd = Functor(d, c, inv_obj, inv_mor)
    for m in range(len(c.morphisms)):
        assert bwd.morphism_map[fwd.morphism_map[m]] == m
    return fwd, bwd


# -- presheaves and the category of elements --------------------------------------


class Presheaf:
    """A contravariant Set-valued functor on a finite category.

    sets[x] lists the element labels over object x; maps[f] sends an
    index into sets[cod f] to an index into sets[dom f].
    """

    def __init__(self, base: FinCategory, sets, maps):
        self.base = base
        self.sets = tuple(tuple(str(v) for v in s) for s in sets)
        self.maps = {m: tuple(t) for m, t in maps.items()}
        for m, (_, d, c) in enumerate(base.morphisms):
            t = self.maps[m]
            if len(t) != len(self.sets[c]) or any(not (0 <= v < len(self.sets[d])) for v in t):
                raise ValueError(f"restriction along {base.label(m)} is not a map into P(dom)")
        for x, e in enumerate(base.identities):
            if self.maps[e] != tuple(range(len(self.sets[x]))):
                raise ValueError(f"identity restriction at {base.objects[x]} is not the identity")
        for (g, f), h in base.comp.items():
            tg, tf, th = self.maps[g], self.maps[f], self.maps[h]
            for v in range(len(tg)):
                if tf[tg[v]] != th[v]:
                    raise ValueError(
                        f"contravariant composition law fails at ({base.label(g)}, {base.label(f)})"
                    )


def terminal_presheaf(base: FinCategory) -> Presheaf:
    return Presheaf(
        base,
        [("*",) for _ in base.objects],
        {m: (0,) for m in range(len(base.morphisms))},
    )


def empty_presheaf(base: FinCategory) -> Presheaf:
    return Presheaf(base, [() for _ in base.objects], {m: () for m in range(len(base.morphisms))})


def category_of_elements(P: Presheaf):
    """The category of elements and the projection functor to the base."""
    base = P.base
    objects = []
    index = {}
    for x in range(len(base.objects)):
        for v in range(len(P.sets[x])):
            index[(x, v)] = len(objects)
            objects.append(f"{base.objects[x]}#{P.sets[x][v]}")
    morphisms = []
    tags = []
    midx = {}
    for m, (_, d, c) in enumerate(base.morphisms):
        for v in range(len(P.sets[c])):
            src = index[(d, P.maps[m][v])]
            tgt = index[(c, v)]
            midx[(m, v)] = len(morphisms)
            morphisms.append((f"{base.label(m)}#{P.sets[c][v]}", src, tgt))
            tags.append((m, v))
    identities = [midx[(base.identities[x], v)] for (x, v) in index]
    comp = {}
    for (g, vg), gk in midx.items():
        for (f, vf), fk in midx.items():
            if base.cod(f) == base.dom(g) and P.maps[g][vg] == vf:
                comp[(gk, fk)] = midx[(base.comp[(g, f)], vg)]
    cat = FinCategory(objects, morphisms, identities, comp, tags)
    proj = Functor(
        cat,
        base,
        [x for (x, v) in index],
        [m for (m, v) in tags],
    )
    return cat, proj
