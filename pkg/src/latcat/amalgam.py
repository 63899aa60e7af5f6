"""Monoid actions on posets, their Grothendieck categories, and the
amalgamation axiom checkers with action recovery.

The Grothendieck category of an action has the poset elements as objects
and, as morphisms p -> q, the monoid elements m with p <= m.q; units and
composition come from the opposite monoid.  The checkers evaluate the
group axioms (weak initial object; faithful retraction; opposite-monoid
isomorphism; preorder equivalence; unit-labelled and arbitrary-labelled
isomorphisms) and the monoid refinement (universal morphisms replacing
isomorphisms, plus label factorization), then reconstruct the action and
certify the comparison functor as an equivalence.

Uniqueness of the weak initial object is reported but only enforced in
group mode: categories of monoid actions routinely contain constant-like
labels making every object weakly initial without making them isomorphic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional

from .categories import (
    FinCategory,
    FinMonoid,
    Functor,
    endo_monoid,
    functor_properties,
    hom_preorder,
    monoid_isomorphism,
    weak_initial_objects,
)
from .errors import (
    AmbiguousRecovery,
    LatcatError,
    MissingWitnessMorphism,
    SearchCapExceeded,
)
from .partitions import (
    build_partition_lattice,
    permutation_action,
    pullback_action,
    symmetric_monoid,
    transformation_monoid,
)
from .posets import FinPoset, as_lattice, random_poset
from .recognition import check_yoon


# -- actions ---------------------------------------------------------------------


@dataclass
class MonoidAction:
    """A left action: table[m][p] with table[unit] identity and
    table[mul(m, n)][p] == table[m][table[n][p]], monotone in p."""

    monoid: FinMonoid
    poset: FinPoset
    table: tuple

    def __post_init__(self):
        self.table = tuple(tuple(row) for row in self.table)

    def act(self, m: int, p: int) -> int:
        return self.table[m][p]


@dataclass
class ActionVerdict:
    ok: bool
    failure: str = ""
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def check_action(act: MonoidAction) -> ActionVerdict:
    """Unit, composition and monotonicity, each with a counterexample."""
    m_size, p_size = act.monoid.size, act.poset.n
    if len(act.table) != m_size or any(len(r) != p_size for r in act.table):
        return ActionVerdict(False, "table shape", None)
    for p in range(p_size):
        if act.act(act.monoid.unit, p) != p:
            return ActionVerdict(False, "unit law", (p,))
    for m in range(m_size):
        for n in range(m_size):
            mn = act.monoid.mul[m][n]
            for p in range(p_size):
                if act.act(mn, p) != act.act(m, act.act(n, p)):
                    return ActionVerdict(False, "composition law", (m, n, p))
    for m in range(m_size):
        for p in range(p_size):
            for q in range(p_size):
                if act.poset.leq(p, q) and not act.poset.leq(act.act(m, p), act.act(m, q)):
                    return ActionVerdict(False, "monotonicity", (m, p, q))
    return ActionVerdict(True)


# -- the Grothendieck construction -------------------------------------------------


def grothendieck(act: MonoidAction) -> FinCategory:
    """The category with objects p and morphisms p -> q the labels m with
    p <= m.q.  One composition convention is tried first and the mirror is
    used if the category laws reject it; the winner is recorded on the
    returned category as `composition_convention`."""
    verdict = check_action(act)
    if not verdict:
        raise ValueError(f"invalid action: {verdict.failure} at {verdict.witness}")
    for convention in ("m-first", "mirrored"):
        try:
            cat = _build_grothendieck(act, convention)
            cat.composition_convention = convention
            return cat
        except (LatcatError, KeyError):
            continue
    raise ValueError("no composition convention yields a lawful category")


def _build_grothendieck(act: MonoidAction, convention: str) -> FinCategory:
    M, P = act.monoid, act.poset
    tags = []
    index = {}
    morphisms = []
    for m in range(M.size):
        for p in range(P.n):
            for q in range(P.n):
                if P.leq(p, act.act(m, q)):
                    index[(m, p, q)] = len(morphisms)
                    morphisms.append((f"[{M.names[m]}]{P.labels[p]}->{P.labels[q]}", p, q))
                    tags.append((m, p, q))
    identities = [index[(M.unit, p, p)] for p in range(P.n)]
    comp = {}
    for gk, (n, q1, r) in enumerate(tags):
        for fk, (m, p, q2) in enumerate(tags):
            if q2 == q1:
                label = M.mul[m][n] if convention == "m-first" else M.mul[n][m]
                comp[(gk, fk)] = index[(label, p, r)]
    return FinCategory([P.labels[p] for p in range(P.n)], morphisms, identities, comp, tags)


# -- witnesses ----------------------------------------------------------------------


@dataclass
class AmalgamWitness:
    """The data the axioms quantify over, in checkable form.

    retraction maps each morphism to an endomorphism of `zero`; alpha maps
    those endomorphisms to elements of the abstract monoid, reversing
    composition order; beta / beta_prime implement the preorder
    equivalence with `poset`.
    """

    zero: int
    retraction: tuple
    monoid: FinMonoid
    alpha: dict
    poset: FinPoset
    beta: tuple
    beta_prime: tuple

    def label(self, cat: FinCategory, f: int) -> int:
        """alpha(F(f)) as an element of the abstract monoid."""
        return self.alpha[self.retraction[f]]


def canonical_witness(act: MonoidAction, cat: FinCategory) -> AmalgamWitness:
    """The witness the construction itself provides: zero is the least
    element, the retraction reads off the label, alpha is the identity."""
    bottom = None
    for p in range(act.poset.n):
        if all(act.poset.leq(p, q) for q in range(act.poset.n)):
            bottom = p
            break
    if bottom is None:
        raise ValueError("canonical witness needs a least element")
    endo_index = {}
    for f, (m, p, q) in enumerate(cat.morphism_tags):
        if p == bottom and q == bottom:
            endo_index[m] = f
    retraction = tuple(endo_index[m] for (m, _, _) in cat.morphism_tags)
    alpha = {endo_index[m]: m for m in endo_index}
    identity = tuple(range(act.poset.n))
    return AmalgamWitness(
        zero=bottom,
        retraction=retraction,
        monoid=act.monoid,
        alpha=alpha,
        poset=act.poset,
        beta=identity,
        beta_prime=identity,
    )


# -- axiom evaluation ----------------------------------------------------------------


@dataclass
class AxiomResult:
    tag: str
    status: str  # "pass" | "fail" | "info"
    detail: str = ""

    @property
    def ok(self):
        return self.status != "fail"


@dataclass
class AxiomReport:
    mode: str
    passed: bool
    axioms: list
    witness: Optional[AmalgamWitness] = None
    weak_initial_unique: Optional[bool] = None

    def __bool__(self):
        return self.passed

    def result(self, tag: str) -> AxiomResult:
        for ax in self.axioms:
            if ax.tag == tag:
                return ax
        raise KeyError(tag)

    def first_failure(self) -> Optional[str]:
        for ax in self.axioms:
            if not ax.ok:
                return ax.tag
        return None


def check_group_amalgamation(
    cat: FinCategory,
    witness: Optional[AmalgamWitness] = None,
    expected_monoid: Optional[FinMonoid] = None,
    search_cap: int = 500_000,
) -> AxiomReport:
    return _check_amalgamation(cat, "group", witness, expected_monoid, search_cap)


def check_monoid_amalgamation(
    cat: FinCategory,
    witness: Optional[AmalgamWitness] = None,
    expected_monoid: Optional[FinMonoid] = None,
    search_cap: int = 500_000,
) -> AxiomReport:
    return _check_amalgamation(cat, "monoid", witness, expected_monoid, search_cap)


def _check_amalgamation(cat, mode, witness, expected_monoid, search_cap) -> AxiomReport:
    if witness is None:
        witness, prefix_report = _search_witness(cat, mode, expected_monoid, search_cap)
        if witness is None:
            return prefix_report
    return _evaluate_axioms(cat, mode, witness, expected_monoid)


def _evaluate_axioms(cat, mode, witness, expected_monoid) -> AxiomReport:
    suffix = "" if mode == "group" else "'"
    axioms = []
    wir = weak_initial_objects(cat)

    def tag(k):
        return f"A{k}{suffix}"

    # (A1) weak initial object, unique up to isomorphism.
    if witness.zero not in wir.objects:
        axioms.append(AxiomResult(tag(1), "fail", "designated object is not weakly initial"))
    elif not wir.unique_up_to_iso and mode == "group":
        axioms.append(AxiomResult(tag(1), "fail", "weak initial object not unique up to isomorphism"))
    else:
        note = "" if wir.unique_up_to_iso else " (uniqueness fails; reported, not enforced in monoid mode)"
        axioms.append(AxiomResult(tag(1), "pass", f"weak initial objects: {len(wir.objects)}{note}"))

    # (A2) faithful retraction of the inclusion of Hom(0,0).
    a2 = _check_retraction(cat, witness)
    axioms.append(AxiomResult(tag(2), "pass" if a2 is None else "fail", a2 or "verified"))

    # (A3) alpha: Hom(0,0) -> M^op is a monoid isomorphism.
    a3_status, a3_detail = _check_alpha(cat, witness, expected_monoid, mode)
    axioms.append(AxiomResult(tag(3), a3_status, a3_detail))

    # (A4) preorder equivalence with the witness poset.
    a4, preorder = _check_preorder_equivalence(cat, witness)
    axioms.append(AxiomResult(tag(4), "pass" if a4 is None else "fail", a4 or "verified"))

    if any(ax.status == "fail" for ax in axioms):
        return AxiomReport(mode, False, axioms, witness, wir.unique_up_to_iso)

    isos = cat.isomorphisms()
    unit = witness.monoid.unit

    # (A5) unit-labelled isomorphism x -> beta'(beta(x)).
    a5_detail = "verified"
    a5_ok = True
    for x in range(len(cat.objects)):
        target = witness.beta_prime[witness.beta[x]]
        if not any(
            f in isos and witness.label(cat, f) == unit for f in cat.hom(x, target)
        ):
            a5_ok, a5_detail = False, f"no unit-labelled isomorphism {cat.objects[x]} -> {cat.objects[target]}"
            break
    axioms.append(AxiomResult(tag(5), "pass" if a5_ok else "fail", a5_detail))

    # (A6) / (A6')
    if mode == "group":
        a6_ok, a6_detail = True, "verified"
        for y in range(len(cat.objects)):
            for m in range(witness.monoid.size):
                if not any(
                    f in isos and witness.label(cat, f) == m and cat.cod(f) == y
                    for f in range(len(cat.morphisms))
                ):
                    a6_ok, a6_detail = False, (
                        f"no isomorphism labelled {witness.monoid.names[m]} into {cat.objects[y]}"
                    )
                    break
            if not a6_ok:
                break
        axioms.append(AxiomResult("A6", "pass" if a6_ok else "fail", a6_detail))
    else:
        a6 = _check_universal_morphisms(cat, witness)
        axioms.append(AxiomResult("A6'", "pass" if a6 is None else "fail", a6 or "verified"))
        a7 = _check_factorization(cat, witness)
        axioms.append(AxiomResult("A7'", "pass" if a7 is None else "fail", a7 or "verified"))

    passed = all(ax.ok for ax in axioms)
    return AxiomReport(mode, passed, axioms, witness, wir.unique_up_to_iso)


def _check_retraction(cat, witness) -> Optional[str]:
    zero = witness.zero
    endos = set(cat.hom(zero, zero))
    for f, e in enumerate(witness.retraction):
        if e not in endos:
            return f"retraction value of {cat.label(f)} is not an endomorphism of zero"
    for e in endos:
        if witness.retraction[e] != e:
            return "retraction does not restrict to the identity on Hom(zero, zero)"
    for x, e in enumerate(cat.identities):
        if witness.retraction[e] != cat.identities[zero]:
            return f"identity of {cat.objects[x]} not sent to the unit"
    for (g, f), h in cat.comp.items():
        if cat.comp[(witness.retraction[g], witness.retraction[f])] != witness.retraction[h]:
            return f"not functorial at ({cat.label(g)}, {cat.label(f)})"
    for x in range(len(cat.objects)):
        for y in range(len(cat.objects)):
            hom = cat.hom(x, y)
            if len({witness.retraction[f] for f in hom}) != len(hom):
                return f"not faithful on Hom({cat.objects[x]}, {cat.objects[y]})"
    return None


def _check_alpha(cat, witness, expected_monoid, mode) -> tuple:
    zero = witness.zero
    endos = sorted(cat.hom(zero, zero))
    M = witness.monoid
    if sorted(witness.alpha) != endos or sorted(witness.alpha.values()) != list(range(M.size)):
        return ("fail", "alpha is not a bijection Hom(zero, zero) -> M")
    for a in endos:
        for b in endos:
            # alpha reverses composition: alpha(a o b) = alpha(b) * alpha(a)
            if witness.alpha[cat.comp[(a, b)]] != M.mul[witness.alpha[b]][witness.alpha[a]]:
                return ("fail", "alpha does not invert composition order")
    notes = []
    if mode == "group":
        if not M.is_group():
            return ("fail", "endomorphism monoid of zero is not a group")
        notes.append("group case: inversion gives M isomorphic to M^op, so both readings of the target agree")
    if expected_monoid is not None:
        if monoid_isomorphism(M, expected_monoid) is None:
            return (
                "fail",
                f"endomorphism monoid (size {M.size}) is not isomorphic to the"
                f" demanded monoid (size {expected_monoid.size})",
            )
        notes.append("matches the demanded monoid")
    return ("pass", "; ".join(notes) or "verified")


def _check_preorder_equivalence(cat, witness):
    try:
        pre = hom_preorder(cat, witness.retraction, witness.zero)
    except LatcatError as exc:
        return str(exc), None
    P = witness.poset
    if len(witness.beta) != len(cat.objects) or len(witness.beta_prime) != P.n:
        return "beta / beta_prime have wrong shape", pre
    rel = pre.relation
    for x in range(len(cat.objects)):
        for y in range(len(cat.objects)):
            if bool(rel[x] >> y & 1) != P.leq(witness.beta[x], witness.beta[y]):
                return (
                    f"beta does not match the preorder at ({cat.objects[x]}, {cat.objects[y]})",
                    pre,
                )
    for p in range(P.n):
        for q in range(P.n):
            if P.leq(p, q) != bool(rel[witness.beta_prime[p]] >> witness.beta_prime[q] & 1):
                return "beta_prime is not an order embedding", pre
        if witness.beta[witness.beta_prime[p]] != p:
            return "beta o beta_prime is not the identity", pre
    for x in range(len(cat.objects)):
        x2 = witness.beta_prime[witness.beta[x]]
        if not (rel[x] >> x2 & 1 and rel[x2] >> x & 1):
            return f"{cat.objects[x]} not preorder-equivalent to its representative", pre
    return None, pre


def _check_universal_morphisms(cat, witness) -> Optional[str]:
    M = witness.monoid
    unit = M.unit
    for y in range(len(cat.objects)):
        into_y = [f for f in range(len(cat.morphisms)) if cat.cod(f) == y]
        for m in range(M.size):
            candidates = [f for f in into_y if witness.label(cat, f) == m]
            if not candidates:
                return f"no morphism labelled {M.names[m]} into {cat.objects[y]}"
            if not any(
                all(_factors_through(cat, witness, f2, f1, unit) for f2 in candidates)
                for f1 in candidates
            ):
                return (
                    f"no universal morphism labelled {M.names[m]} into {cat.objects[y]}"
                )
    return None


def _factors_through(cat, witness, f2, f1, unit) -> bool:
    """f2 = f1 o h for some h with unit label."""
    for h in cat.hom(cat.dom(f2), cat.dom(f1)):
        if witness.label(cat, h) == unit and cat.comp[(f1, h)] == f2:
            return True
    return False


def _check_factorization(cat, witness) -> Optional[str]:
    M = witness.monoid
    pairs_of = {f: set() for f in range(len(cat.morphisms))}
    for (g, f), h in cat.comp.items():
        # h = g o f covers the decomposition (m2, m1) = (label f, label g)
        pairs_of[h].add((witness.label(cat, f), witness.label(cat, g)))
    by_product = {}
    for m2 in range(M.size):
        for m1 in range(M.size):
            by_product.setdefault(M.mul[m2][m1], []).append((m2, m1))
    for f in range(len(cat.morphisms)):
        for m2, m1 in by_product.get(witness.label(cat, f), ()):
            if (m2, m1) not in pairs_of[f]:
                return (
                    f"{cat.label(f)} has label {M.names[M.mul[m2][m1]]} ="
                    f" {M.names[m2]}*{M.names[m1]} but no matching factorization"
                )
    return None


# -- witness search -------------------------------------------------------------------


def _search_witness(cat, mode, expected_monoid, search_cap):
    """First witness (deterministic order) passing the first four axioms."""
    wir = weak_initial_objects(cat)
    first_report = None
    if not wir.objects:
        return None, AxiomReport(
            mode, False,
            [AxiomResult(f"A1{_s(mode)}", "fail", "no weakly initial object")],
            None, False,
        )
    for zero in wir.objects:
        for retraction in _search_retractions(cat, zero, search_cap):
            em = endo_monoid(cat, zero)
            M = em.opposite
            alpha = {m: k for k, m in enumerate(em.morphism_indices)}
            pre = hom_preorder(cat, retraction, zero)
            beta = pre.class_of
            beta_prime = tuple(
                next(x for x in range(len(cat.objects)) if pre.class_of[x] == p)
                for p in range(pre.quotient.n)
            )
            witness = AmalgamWitness(
                zero=zero,
                retraction=retraction,
                monoid=M,
                alpha=alpha,
                poset=pre.quotient,
                beta=beta,
                beta_prime=beta_prime,
            )
            report = _evaluate_axioms(cat, mode, witness, expected_monoid)
            if first_report is None:
                first_report = report
            prefix = [ax for ax in report.axioms if ax.tag in
                      {f"A1{_s(mode)}", f"A2{_s(mode)}", f"A3{_s(mode)}", f"A4{_s(mode)}"}]
            if all(ax.ok for ax in prefix):
                return witness, report
    return None, first_report


def _s(mode):
    return "" if mode == "group" else "'"


def _search_retractions(cat, zero, search_cap):
    """All functorial, hom-faithful assignments morphism -> Hom(zero, zero),
    fixing Hom(zero, zero) pointwise; deterministic backtracking order."""
    endos = sorted(cat.hom(zero, zero))
    id0 = cat.identities[zero]
    n = len(cat.morphisms)
    value = [-1] * n
    for e in endos:
        value[e] = e
    for e in cat.identities:
        if value[e] == -1:
            value[e] = id0
        elif value[e] != id0 and e in endos:
            pass  # id of zero is its own retraction value
    free = [f for f in range(n) if value[f] == -1]
    budget = [search_cap]

    def consistent(f) -> bool:
        for g in range(n):
            if value[g] == -1:
                continue
            if cat.cod(g) == cat.dom(f):
                h = cat.comp[(f, g)]
                if value[h] != -1 and cat.comp[(value[f], value[g])] != value[h]:
                    return False
            if cat.cod(f) == cat.dom(g):
                h = cat.comp[(g, f)]
                if value[h] != -1 and cat.comp[(value[g], value[f])] != value[h]:
                    return False
        # faithfulness within the hom-set of f
        taken = [value[g] for g in cat.hom(cat.dom(f), cat.cod(f)) if g != f and value[g] != -1]
        if value[f] in taken:
            return False
        return True

    solutions = []

    def extend(k):
        budget[0] -= 1
        if budget[0] < 0:
            raise SearchCapExceeded("retraction search cap exceeded")
        if k == len(free):
            solutions.append(tuple(value))
            return
        f = free[k]
        for e in endos:
            value[f] = e
            if consistent(f):
                extend(k + 1)
            value[f] = -1

    extend(0)
    return solutions


# -- action recovery and the comparison equivalence --------------------------------------


def recover_action(cat: FinCategory, witness: AmalgamWitness, mode: str = "group") -> MonoidAction:
    """Rebuild the action table from the category: in group mode via
    isomorphisms into representatives, in monoid mode via universal
    morphisms.  Ambiguity or a missing witness morphism raises."""
    M, P = witness.monoid, witness.poset
    isos = cat.isomorphisms()
    unit = M.unit
    table = [[-1] * P.n for _ in range(M.size)]
    for m in range(M.size):
        for p in range(P.n):
            target = witness.beta_prime[p]
            into = [f for f in range(len(cat.morphisms))
                    if cat.cod(f) == target and witness.label(cat, f) == m]
            if mode == "group":
                candidates = [f for f in into if f in isos]
            else:
                candidates = [
                    f for f in into
                    if all(_factors_through(cat, witness, f2, f, unit) for f2 in into)
                ]
            if not candidates:
                raise MissingWitnessMorphism(
                    f"no witness morphism for label {M.names[m]} at {P.labels[p]}"
                )
            results = {witness.beta[cat.dom(f)] for f in candidates}
            if len(results) != 1:
                raise AmbiguousRecovery(
                    f"label {M.names[m]} at {P.labels[p]} recovers {len(results)} distinct elements"
                )
            table[m][p] = results.pop()
    act = MonoidAction(M, P, tuple(map(tuple, table)))
    verdict = check_action(act)
    if not verdict:
        raise AmbiguousRecovery(f"recovered table is not an action: {verdict.failure}")
    return act


def build_equivalence(cat: FinCategory, witness: AmalgamWitness, mode: str = "group"):
    """The functor x -> beta(x), f -> alpha(F(f)) into the Grothendieck
    category of the recovered action, with its computed properties."""
    act = recover_action(cat, witness, mode)
    target = grothendieck(act)
    tag_index = {tag: k for k, tag in enumerate(target.morphism_tags)}
    object_map = list(witness.beta)
    morphism_map = []
    for f in range(len(cat.morphisms)):
        key = (witness.label(cat, f), witness.beta[cat.dom(f)], witness.beta[cat.cod(f)])
        if key not in tag_index:
            raise MissingWitnessMorphism(
                f"image of {cat.label(f)} is not a morphism of the reconstruction"
            )
        morphism_map.append(tag_index[key])
    functor = Functor(cat, target, object_map, morphism_map)
    return functor, functor_properties(functor)


# -- the finite-dimensional characterization certificate -----------------------------------


@dataclass
class CstarCertificate:
    clauses: list  # of AxiomResult
    passed: bool

    def __bool__(self):
        return self.passed

    def clause(self, tag):
        for c in self.clauses:
            if c.tag == tag:
                return c
        raise KeyError(tag)


def check_cstar_characterization(
    cat: FinCategory,
    dims,
    dim_A: int,
    witness: Optional[AmalgamWitness] = None,
) -> CstarCertificate:
    """Four clauses: amalgamation axioms through the universal-morphism
    variant; the quotient poset passes the partition-lattice axioms for
    sum(dims) - 1; the opposite endomorphism monoid is the symmetric group
    on sum(dims) letters; the squared dimensions sum to dim_A."""
    dims = list(dims)
    if not dims or any(d <= 0 for d in dims):
        raise ValueError("dims must be positive integers")
    m_total = sum(dims)
    clauses = []

    report = check_monoid_amalgamation(cat, witness)
    needed = [f"A{k}'" for k in (1, 2, 3, 4, 5)] + ["A6'"]
    ok_a = all(report.result(t).ok for t in needed if any(ax.tag == t for ax in report.axioms))
    ok_a = ok_a and len([ax for ax in report.axioms if ax.tag in needed]) == len(needed)
    clauses.append(AxiomResult(
        "amalgamation", "pass" if ok_a else "fail",
        f"first failure: {report.first_failure()}" if not ok_a else "(A1')-(A5') and (A6') hold",
    ))
    w = report.witness

    if w is not None:
        try:
            lattice = as_lattice(w.poset)
            yoon = check_yoon(lattice)
            ok_b = yoon.passed and yoon.inferred_n == m_total - 1
            detail = (
                f"quotient poset passes with n = {yoon.inferred_n}"
                if yoon.passed
                else f"quotient poset fails at {yoon.first_failure[0]}"
            )
        except LatcatError as exc:
            ok_b, detail = False, f"quotient poset is not a graded lattice: {exc}"
    else:
        ok_b, detail = False, "no witness available"
    clauses.append(AxiomResult("partition-axioms", "pass" if ok_b else "fail", detail))

    if w is not None:
        target, _ = symmetric_monoid(m_total)
        ok_c = monoid_isomorphism(w.monoid.opposite(), target) is not None
        detail = (
            f"endomorphism monoid opposite is the symmetric group on {m_total} letters"
            if ok_c
            else f"endomorphism monoid opposite (size {w.monoid.size}) is not S({m_total})"
        )
    else:
        ok_c, detail = False, "no witness available"
    clauses.append(AxiomResult("symmetric-group", "pass" if ok_c else "fail", detail))

    ok_d = sum(d * d for d in dims) == dim_A
    clauses.append(AxiomResult(
        "dimension", "pass" if ok_d else "fail",
        f"sum of squares {sum(d * d for d in dims)} versus dim {dim_A}",
    ))
    return CstarCertificate(clauses, all(c.ok for c in clauses))


# -- corpus builders -------------------------------------------------------------------


def permutation_lattice_action(n: int) -> MonoidAction:
    """S(n) acting on the partition lattice by pointwise images."""
    monoid, perms = symmetric_monoid(n)
    lattice = build_partition_lattice(n)
    parts = lattice.partitions
    index = {p: k for k, p in enumerate(parts)}
    table = [
        [index[permutation_action(pm, p)] for p in parts]
        for pm in perms
    ]
    return MonoidAction(monoid, lattice.base, tuple(map(tuple, table)))


def pullback_lattice_action(n: int) -> MonoidAction:
    """The full transformation monoid (diagrammatic composition) acting on
    the partition lattice by pulling partitions back along point maps."""
    monoid, maps = transformation_monoid(n)
    lattice = build_partition_lattice(n)
    parts = lattice.partitions
    index = {p: k for k, p in enumerate(parts)}
    table = [
        [index[pullback_action(f, p)] for p in parts]
        for f in maps
    ]
    return MonoidAction(monoid, lattice.base, tuple(map(tuple, table)))


def order_automorphisms(p: FinPoset) -> list:
    """All order automorphisms of p, as tuples (images per element)."""
    out = []
    for perm in itertools.permutations(range(p.n)):
        if all(
            p.leq(i, j) == p.leq(perm[i], perm[j])
            for i in range(p.n)
            for j in range(p.n)
        ):
            out.append(perm)
    return out


def enumerate_group_actions(group: FinMonoid, p: FinPoset) -> list:
    """All actions of the group on the poset: every map into the
    automorphism group satisfying the homomorphism laws, exhaustively."""
    autos = order_automorphisms(p)
    auto_index = {a: k for k, a in enumerate(autos)}
    compose = [
        [auto_index[tuple(a[b[i]] for i in range(p.n))] for b in autos]
        for a in autos
    ]
    identity = auto_index[tuple(range(p.n))]
    actions = []
    for assignment in itertools.product(range(len(autos)), repeat=group.size):
        if assignment[group.unit] != identity:
            continue
        if any(
            assignment[group.mul[a][b]] != compose[assignment[a]][assignment[b]]
            for a in range(group.size)
            for b in range(group.size)
        ):
            continue
        table = tuple(autos[assignment[m]] for m in range(group.size))
        actions.append(MonoidAction(group, p, table))
    return actions


def random_monotone_action(seed: int, max_poset: int = 5, max_monoid: int = 6) -> MonoidAction:
    """A seeded random monotone monoid action on a random bottomed poset.

    The monoid is generated by random monotone self-maps under function
    composition; generation retries until the closure fits the cap.
    """
    rng = random.Random(seed)
    for _ in range(200):
        size = rng.randint(2, max_poset)
        poset = random_poset(rng, size, density=rng.uniform(0.2, 0.7), with_bottom=True)

        def random_monotone():
            for _ in range(40):
                values = tuple(rng.randrange(size) for _ in range(size))
                if all(
                    poset.leq(values[i], values[j])
                    for i in range(size)
                    for j in range(size)
                    if poset.leq(i, j)
                ):
                    return values
            return tuple([rng.randrange(size)] * size)  # constants are monotone

        identity = tuple(range(size))
        generators = [random_monotone() for _ in range(rng.randint(1, 2))]
        elements = [identity]
        frontier = [g for g in generators if g not in elements]
        elements += frontier
        while frontier and len(elements) <= max_monoid:
            new = []
            for a in elements:
                for b in elements:
                    c = tuple(a[b[i]] for i in range(size))
                    if c not in elements and c not in new:
                        new.append(c)
            frontier = new
            elements += new
        if len(elements) > max_monoid:
            continue
        index = {f: k for k, f in enumerate(elements)}
        mul = [
            [index[tuple(a[b[i]] for i in range(size))] for b in elements]
            for a in elements
        ]
        monoid = FinMonoid(
            ["".join(map(str, f)) for f in elements], index[identity], mul
        )
        return MonoidAction(monoid, poset, tuple(elements))
    raise ValueError(f"seed {seed} produced no action within the caps")


def standard_corpus() -> list:
    """(name, action) pairs: every group action of S(2) and S(3) on P(2)
    and P(3), the transformation-monoid pullback action on P(3), and
    twenty seeded random monotone actions."""
    corpus = []
    groups = {2: symmetric_monoid(2)[0], 3: symmetric_monoid(3)[0]}
    posets = {2: build_partition_lattice(2).base, 3: build_partition_lattice(3).base}
    for gn in (2, 3):
        for pn in (2, 3):
            for k, act in enumerate(enumerate_group_actions(groups[gn], posets[pn])):
                corpus.append((f"S({gn}) on P({pn}) #{k}", act))
    corpus.append(("T(3) pullback on P(3)", pullback_lattice_action(3)))
    for seed in range(20):
        corpus.append((f"random #{seed}", random_monotone_action(seed)))
    return corpus
