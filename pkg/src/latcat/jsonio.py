"""JSON schemas and DOT export for every interchange type.

Writers emit deterministic documents (sorted keys, explicit
reflexive-transitive closure for posets) so reports are byte-identical
across runs; readers re-validate through the ordinary constructors.
"""

from __future__ import annotations

import json

from .amalgam import AxiomReport, CstarCertificate, MonoidAction
from .categories import FinCategory, FinMonoid, Functor
from .cstar import CstarHom, Subalg
from .errors import LatcatError
from .invsemi import InvSemigroup, TElement
from .partitions import Partition, PointMap
from .posets import FinLattice, FinPoset, as_lattice
from .recognition import FiniteSpace, FirbyReport, YoonVerdict


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- posets ------------------------------------------------------------------


def poset_to_json(p: FinPoset) -> dict:
    return {
        "elements": list(p.labels),
        "leq": [[i, j] for i, j in p.pairs()],
    }


def poset_from_json(doc: dict) -> FinPoset:
    return FinPoset(doc["elements"], [tuple(pair) for pair in doc["leq"]])


def lattice_from_json(doc: dict) -> FinLattice:
    return as_lattice(poset_from_json(doc))


def poset_to_dot(p: FinPoset, name: str = "poset") -> str:
    """Hasse diagram: cover edges only, drawn bottom to top."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", '  node [shape=box];']
    for i, label in enumerate(p.labels):
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in p.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def category_to_dot(c: FinCategory, name: str = "category") -> str:
    lines = [f'digraph "{name}" {{', '  node [shape=ellipse];']
    for i, label in enumerate(c.objects):
        lines.append(f'  o{i} [label="{label}"];')
    for label, d, cod in c.morphisms:
        if d == cod and c.morphisms[c.identities[d]][0] == label:
            continue  # identities clutter the graph
        lines.append(f'  o{d} -> o{cod} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- partitions and point maps --------------------------------------------------


def partition_to_json(p: Partition) -> dict:
    return {
        "n": p.n,
        "support": sorted(p.support),
        "blocks": [list(b) for b in p.blocks],
    }


def partition_from_json(doc: dict) -> Partition:
    part = Partition(doc["n"], tuple(tuple(b) for b in doc["blocks"]))
    if sorted(part.support) != sorted(doc["support"]):
        raise LatcatError("support field disagrees with the blocks")
    return part


def pointmap_to_json(pm: PointMap) -> dict:
    return {"n": pm.n, "values": list(pm.values)}


def pointmap_from_json(doc: dict) -> PointMap:
    return PointMap(doc["n"], tuple(doc["values"]))


# -- monoids, categories, functors, actions ---------------------------------------


def monoid_to_json(m: FinMonoid) -> dict:
    return {
        "names": list(m.names),
        "unit": m.unit,
        "mul": [list(row) for row in m.mul],
    }


def monoid_from_json(doc: dict) -> FinMonoid:
    return FinMonoid(doc["names"], doc["unit"], doc["mul"])


def category_to_json(c: FinCategory) -> dict:
    return {
        "objects": list(c.objects),
        "morphisms": [
            {"id": label, "dom": c.objects[d], "cod": c.objects[cod]}
            for label, d, cod in c.morphisms
        ],
        "identities": [c.morphisms[e][0] for e in c.identities],
        "comp": sorted(
            [c.morphisms[g][0], c.morphisms[f][0], c.morphisms[h][0]]
            for (g, f), h in c.comp.items()
        ),
    }


def category_from_json(doc: dict) -> FinCategory:
    objects = doc["objects"]
    obj_index = {o: i for i, o in enumerate(objects)}
    morphisms = [
        (m["id"], obj_index[m["dom"]], obj_index[m["cod"]]) for m in doc["morphisms"]
    ]
    mor_index = {label: k for k, (label, _, _) in enumerate(morphisms)}
    identities = [mor_index[l] for l in doc["identities"]]
    comp = {
        (mor_index[g], mor_index[f]): mor_index[h] for g, f, h in doc["comp"]
    }
    return FinCategory(objects, morphisms, identities, comp)


def functor_to_json(F: Functor) -> dict:
    return {
        "objects": {
            F.source.objects[x]: F.target.objects[F.object_map[x]]
            for x in range(len(F.source.objects))
        },
        "morphisms": {
            F.source.label(m): F.target.label(F.morphism_map[m])
            for m in range(len(F.source.morphisms))
        },
    }


def action_to_json(act: MonoidAction) -> dict:
    return {
        "monoid": monoid_to_json(act.monoid),
        "poset": poset_to_json(act.poset),
        "table": [list(row) for row in act.table],
    }


def action_from_json(doc: dict) -> MonoidAction:
    return MonoidAction(
        monoid_from_json(doc["monoid"]),
        poset_from_json(doc["poset"]),
        tuple(tuple(row) for row in doc["table"]),
    )


# -- the subalgebra model -----------------------------------------------------------


def subalg_to_json(c: Subalg) -> dict:
    return partition_to_json(c.partition)


def subalg_from_json(doc: dict) -> Subalg:
    return Subalg(doc["n"], partition_from_json(doc))


def cstarhom_to_json(h: CstarHom) -> dict:
    return {
        "src": subalg_to_json(h.source),
        "tgt": subalg_to_json(h.target),
        "block_map": [
            [k, v] for k, v in enumerate(h.block_map) if v is not None
        ],
    }


def cstarhom_from_json(doc: dict) -> CstarHom:
    src = subalg_from_json(doc["src"])
    tgt = subalg_from_json(doc["tgt"])
    assign = [None] * tgt.dimension
    for k, v in doc["block_map"]:
        assign[k] = v
    return CstarHom(src, tgt, tuple(assign))


def invsemigroup_to_json(t: InvSemigroup) -> dict:
    return {
        "elements": [
            None if e is None else {
                "domain": subalg_to_json(e.domain),
                "hom": cstarhom_to_json(e.hom),
            }
            for e in t.elements
        ],
        "mul": [list(row) for row in t.mul],
        "star": list(t.star),
        "zero": t.zero,
    }


def invsemigroup_from_json(doc: dict) -> InvSemigroup:
    elements = [
        None if e is None else TElement(
            subalg_from_json(e["domain"]), cstarhom_from_json(e["hom"])
        )
        for e in doc["elements"]
    ]
    return InvSemigroup(
        elements,
        tuple(tuple(row) for row in doc["mul"]),
        tuple(doc["star"]),
        doc["zero"],
    )


# -- verdict reports ------------------------------------------------------------------


def yoon_to_json(v: YoonVerdict) -> dict:
    return {
        "passed": v.passed,
        "inferred_n": v.inferred_n,
        "first_failure": (
            None if v.first_failure is None
            else {"axiom": v.first_failure[0], "witness": v.first_failure[1]}
        ),
        "characteristic_polynomial": (
            None if v.characteristic is None else v.characteristic.pretty()
        ),
        "oracle_isomorphism_found": v.oracle_isomorphism is not None,
    }


def finite_space_to_json(s: FiniteSpace) -> dict:
    return {"points": s.points, "closed": [list(c) for c in s.closed]}


def firby_to_json(r: FirbyReport) -> dict:
    return {
        "passed": r.passed,
        "axioms": [
            {"axiom": ax.tag, "status": ax.status, "detail": ax.detail}
            for ax in r.axioms
        ],
        "one_points": [
            {"atoms": list(op.atoms), "members": list(op.members)}
            for op in r.one_points
        ],
        "space": None if r.space is None else finite_space_to_json(r.space),
        "discrete": None if r.space is None else r.space.discrete,
        "reconstruction_isomorphism": r.reconstruction_iso_ok,
        "weak_single_collections": r.weak_single_count,
        "notes": list(r.notes),
    }


def axiom_report_to_json(r: AxiomReport) -> dict:
    return {
        "mode": r.mode,
        "passed": r.passed,
        "axioms": [
            {"axiom": ax.tag, "status": ax.status, "detail": ax.detail}
            for ax in r.axioms
        ],
        "weak_initial_unique": r.weak_initial_unique,
    }


def certificate_to_json(c: CstarCertificate) -> dict:
    return {
        "passed": c.passed,
        "clauses": [
            {"clause": cl.tag, "status": cl.status, "detail": cl.detail}
            for cl in c.clauses
        ],
    }
