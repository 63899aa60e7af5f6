"""Command-line interface: verdict-oriented reports over JSON fixtures.

Exit codes: 0 success / property holds, 1 a checked property failed,
2 invalid input, 3 a cap was exceeded.  Reports go to stdout (JSON with
--json, terse text otherwise); timings and diagnostics go to stderr so
repeated runs produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__, amalgam, cstar, invsemi, jsonio, partitions, posets, recognition, selftest
from .errors import CapExceeded, LatcatError, SearchCapExceeded

EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_CAP_EXCEEDED = 3


class RunReport:
    """Command echo, input digests, version, and the verdict payload.

    Deterministic for fixed inputs: wall-clock timings are kept out of
    the document and reported on stderr instead.
    """

    def __init__(self, command, inputs, report):
        self.command = list(command)
        self.version = __version__
        self.inputs = {p: _digest(p) for p in inputs}
        self.report = report

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "version": self.version,
            "inputs": self.inputs,
            "report": self.report,
        }


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load(path: str) -> dict:
    with open(path, "r") as fh:
        return json.load(fh)


def _emit(args, report: dict, inputs=()):
    if getattr(args, "json", False):
        doc = RunReport(args.command_echo, inputs, report).to_json()
        sys.stdout.write(jsonio.dumps(doc))
    else:
        for line in _humanize(report):
            print(line)


def _humanize(report, prefix=""):
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            lines.extend(_humanize(value, prefix + "  "))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{prefix}{key}:")
            for item in value:
                body = ", ".join(f"{k}={_scalar(v)}" for k, v in item.items())
                lines.append(f"{prefix}  - {body}")
        else:
            lines.append(f"{prefix}{key}: {_scalar(value)}")
    return lines


def _scalar(value):
    if isinstance(value, (list, dict)):
        return json.dumps(value)
    return value


# -- subcommand handlers -----------------------------------------------------------


def _cmd_pn(args) -> int:
    if args.n < 1:
        raise LatcatError(f"n must be positive, got {args.n}")
    cap = args.cap_n if args.cap_n is not None else partitions.FULL_SUPPORT_CAP
    lattice = partitions.build_partition_lattice(args.n, cap=cap)
    report = {"n": args.n, "size": lattice.n}
    if args.charpoly:
        report["characteristic_polynomial"] = posets.characteristic_polynomial(lattice).pretty()
    if args.mobius:
        mu = posets.mobius(lattice)
        report["mobius"] = {lattice.labels[x]: mu[x] for x in range(lattice.n)}
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(jsonio.poset_to_dot(lattice.base, f"P{args.n}"))
        report["dot"] = args.dot
    if args.figure:
        from .render import render_hasse

        render_hasse(lattice, args.figure, title=f"partition lattice on {args.n} points")
        report["figure"] = args.figure
    if not (args.charpoly or args.mobius or args.dot or args.figure) or args.json:
        report["poset"] = jsonio.poset_to_json(lattice.base)
    _emit(args, report)
    return EXIT_OK


def _cmd_mobius(args) -> int:
    lattice = jsonio.lattice_from_json(_load(args.file))
    mu = posets.mobius(lattice)
    _emit(args, {"mobius": {lattice.labels[x]: mu[x] for x in range(lattice.n)}}, [args.file])
    return EXIT_OK


def _cmd_charpoly(args) -> int:
    lattice = jsonio.lattice_from_json(_load(args.file))
    poly = posets.characteristic_polynomial(lattice)
    _emit(args, {"characteristic_polynomial": poly.pretty()}, [args.file])
    return EXIT_OK


def _cmd_check(args) -> int:
    lattice = jsonio.lattice_from_json(_load(args.file))
    if args.figure:
        from .render import render_hasse

        render_hasse(lattice, args.figure)
    if args.which == "yoon":
        verdict = recognition.check_yoon(lattice)
        _emit(args, jsonio.yoon_to_json(verdict), [args.file])
        return EXIT_OK if verdict.passed else EXIT_PROPERTY_FAILED
    report = recognition.check_firby(lattice, search_cap=args.cap_search)
    _emit(args, jsonio.firby_to_json(report), [args.file])
    return EXIT_OK if report.passed else EXIT_PROPERTY_FAILED


def _amalgam_witness(act, cat):
    try:
        return amalgam.canonical_witness(act, cat)
    except ValueError:
        return None  # fall back to the witness search inside the checkers


def _cmd_amalgam(args) -> int:
    if args.sub == "build":
        act = jsonio.action_from_json(_load(args.file))
        cat = amalgam.grothendieck(act)
        report = {
            "objects": len(cat.objects),
            "morphisms": len(cat.morphisms),
            "composition_convention": cat.composition_convention,
            "category": jsonio.category_to_json(cat),
        }
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(jsonio.category_to_dot(cat))
            report["dot"] = args.dot
        _emit(args, report, [args.file])
        return EXIT_OK
    if args.sub == "check":
        act = jsonio.action_from_json(_load(args.file))
        cat = amalgam.grothendieck(act)
        witness = _amalgam_witness(act, cat)
        checker = (
            amalgam.check_group_amalgamation
            if args.mode == "group"
            else amalgam.check_monoid_amalgamation
        )
        report = checker(cat, witness, search_cap=args.cap_search)
        _emit(args, jsonio.axiom_report_to_json(report), [args.file])
        return EXIT_OK if report.passed else EXIT_PROPERTY_FAILED
    if args.sub == "recover":
        act = jsonio.action_from_json(_load(args.file))
        cat = amalgam.grothendieck(act)
        witness = amalgam.canonical_witness(act, cat)
        recovered = amalgam.recover_action(cat, witness, args.mode)
        ok = recovered.table == act.table
        _emit(args, {"roundtrip": ok, "mode": args.mode}, [args.file])
        return EXIT_OK if ok else EXIT_PROPERTY_FAILED
    # charfactor
    if args.pn is not None:
        act = amalgam.permutation_lattice_action(args.pn)
        cat = amalgam.grothendieck(act)
        witness = amalgam.canonical_witness(act, cat)
        inputs = []
    else:
        act = jsonio.action_from_json(_load(args.file))
        cat = amalgam.grothendieck(act)
        witness = _amalgam_witness(act, cat)
        inputs = [args.file]
    dims = [int(x) for x in args.dims.split(",") if x]
    cert = amalgam.check_cstar_characterization(cat, dims, args.dim_a, witness=witness)
    _emit(args, jsonio.certificate_to_json(cert), inputs)
    return EXIT_OK if cert.passed else EXIT_PROPERTY_FAILED


def _cmd_cstar(args) -> int:
    cap = args.cap_n if args.cap_n is not None else cstar.SUBALG_CAP
    if args.sub == "build":
        cat = cstar.build_Cinj(args.n, unital_objects=args.unital, cap=cap)
        report = {
            "objects": len(cat.objects),
            "morphisms": len(cat.morphisms),
            "left_cancellative": cstar.is_left_cancellative(cat),
            "hom_matrix": cat.hom_matrix(),
            "category": jsonio.category_to_json(cat),
        }
        _emit(args, report)
        return EXIT_OK
    if args.sub == "compare":
        rep = cstar.comparison_report(args.n, cap=cap)
        report = {
            "n": rep.n,
            "functorial": rep.functorial,
            "convention": rep.convention,
            "object_bijective": rep.object_bijective,
            "faithful": rep.properties.faithful if rep.properties else None,
            "full": rep.properties.full if rep.properties else None,
            "essentially_surjective": (
                rep.properties.essentially_surjective if rep.properties else None
            ),
            "endomorphisms_of_one_block": [rep.end_top_source, rep.end_top_target],
            "homs_one_block_to_discrete": [rep.hom_t_d_target, rep.hom_t_d_induced],
            "source_hom_matrix": rep.source_hom_matrix,
            "target_hom_matrix": rep.target_hom_matrix,
        }
        _emit(args, report)
        return EXIT_OK
    if args.sub == "ideals":
        sub, kept = cstar.ideal_condition_morphisms(args.n, cap=cap)
        full = cstar.build_Cinj(args.n, unital_objects=False, cap=cap)
        report = {
            "total_morphisms": len(full.morphisms),
            "kept_morphisms": len(kept),
            "kept": [full.label(k) for k in kept],
        }
        _emit(args, report)
        return EXIT_OK
    cat = cstar.build_Cinj(args.n, unital_objects=args.unital, cap=cap)
    rep = cstar.weak_terminal_report(cat)
    report = {
        "weak_terminals": [cat.objects[d] for d in rep.objects],
        "reduction_equivalences_ok": rep.all_equivalences_ok,
    }
    _emit(args, report)
    return EXIT_OK if rep.objects else EXIT_PROPERTY_FAILED


def _cmd_invsemi(args) -> int:
    cap = args.cap_n if args.cap_n is not None else invsemi.T_CAP
    if args.sub == "build":
        t = invsemi.build_T(args.n, cap=cap)
        report = {
            "nonzero_elements": t.size - 1,
            "zero_index": t.zero,
            "semigroup": jsonio.invsemigroup_to_json(t),
        }
        _emit(args, report)
        return EXIT_OK
    if args.sub == "verify":
        t = invsemi.build_T(args.n, cap=cap)
        law = invsemi.law_report(t)
        report = {
            "laws_hold": bool(law),
            "failure": law.failure,
            "lemma_domain_codomain": invsemi.lemma_domain_codomain(t),
        }
        _emit(args, report)
        return EXIT_OK if law and report["lemma_domain_codomain"] else EXIT_PROPERTY_FAILED
    if args.sub == "derived":
        t = invsemi.build_T(args.n, cap=cap)
        ds = invsemi.derived_structures(t, args.n)
        report = {
            "idempotents": ds.idempotent_poset.n,
            "groupoid_morphisms": len(ds.groupoid.morphisms),
            "category_morphisms": len(ds.left_cancellative.morphisms),
            "poset_isomorphism": True,
            "groupoid_isomorphism": True,
            "category_isomorphism": True,
            "domain_codomain_lemma": ds.lemma_a2_ok,
            "idempotents_are_inclusions": ds.idempotents_are_inclusions,
        }
        _emit(args, report)
        return EXIT_OK
    rep = invsemi.aut_elements_equivalence(args.n, cap=cap)
    report = {
        "element_objects": rep.element_objects,
        "base_objects": rep.base_objects,
        "equivalence": rep.equivalence_ok,
    }
    _emit(args, report)
    return EXIT_OK if rep.equivalence_ok else EXIT_PROPERTY_FAILED


def _cmd_selftest(args) -> int:
    only = args.only.split(",") if args.only else None
    results = selftest.run_all(only=only, report_dir=args.report_dir)
    report = {
        "criteria": [
            {"id": cid, "name": name, "status": "pass" if ok else "fail", "detail": detail}
            for cid, name, ok, detail in results
        ],
        "passed": all(ok for _, _, ok, _ in results),
    }
    if args.json:
        _emit(args, report)
    else:
        for cid, name, ok, detail in results:
            print(f"{cid:4} {'pass' if ok else 'FAIL'}  {name}: {detail}")
        print("all criteria pass" if report["passed"] else "FAILURES PRESENT")
    return EXIT_OK if report["passed"] else EXIT_PROPERTY_FAILED


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latcat",
        description="finite lattice / subalgebra-category toolkit",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON reports")
    parser.add_argument("--cap-n", type=int, default=None,
                    help="override the per-module size caps")
    parser.add_argument("--cap-search", type=int, default=500_000, help="node cap for searches")
    sub = parser.add_subparsers(dest="command", required=True)

    pn = sub.add_parser("pn", help="emit the partition lattice")
    pn.add_argument("n", type=int)
    pn.add_argument("--charpoly", action="store_true")
    pn.add_argument("--mobius", action="store_true")
    pn.add_argument("--dot", metavar="FILE")
    pn.add_argument("--figure", metavar="FILE")
    pn.set_defaults(fn=_cmd_pn)

    mob = sub.add_parser("mobius", help="Moebius function of a lattice file")
    mob.add_argument("file")
    mob.set_defaults(fn=_cmd_mobius)

    cp = sub.add_parser("charpoly", help="characteristic polynomial of a lattice file")
    cp.add_argument("file")
    cp.set_defaults(fn=_cmd_charpoly)

    chk = sub.add_parser("check", help="decision procedures on a lattice file")
    chk.add_argument("which", choices=["yoon", "firby"])
    chk.add_argument("file")
    chk.add_argument("--figure", metavar="FILE")
    chk.set_defaults(fn=_cmd_check)

    am = sub.add_parser("amalgam", help="actions and their categories")
    amsub = am.add_subparsers(dest="sub", required=True)
    am_build = amsub.add_parser("build")
    am_build.add_argument("file")
    am_build.add_argument("--dot", metavar="FILE")
    am_check = amsub.add_parser("check")
    am_check.add_argument("file")
    am_check.add_argument("--mode", choices=["group", "monoid"], default="monoid")
    am_rec = amsub.add_parser("recover")
    am_rec.add_argument("file")
    am_rec.add_argument("--mode", choices=["group", "monoid"], default="monoid")
    am_cf = amsub.add_parser("charfactor")
    am_cf.add_argument("file", nargs="?")
    am_cf.add_argument("--pn", type=int)
    am_cf.add_argument("--dims", required=True)
    am_cf.add_argument("--dim-a", dest="dim_a", type=int, required=True)
    am.set_defaults(fn=_cmd_amalgam)

    cs = sub.add_parser("cstar", help="the subalgebra model")
    cssub = cs.add_subparsers(dest="sub", required=True)
    for name in ("build", "compare", "ideals", "terminal"):
        p = cssub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        if name in ("build", "terminal"):
            p.add_argument("--unital", action="store_true")
    cs.set_defaults(fn=_cmd_cstar)

    iv = sub.add_parser("invsemi", help="the embedding semigroup")
    ivsub = iv.add_subparsers(dest="sub", required=True)
    for name in ("build", "verify", "derived", "autelements"):
        p = ivsub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
    iv.set_defaults(fn=_cmd_invsemi)

    st = sub.add_parser("selftest", help="run the acceptance corpus")
    st.add_argument("--only", help="comma-separated criterion ids")
    st.add_argument("--report-dir", help="write criteria.csv and figures here")
    st.set_defaults(fn=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID_INPUT if exc.code not in (0, None) else EXIT_OK
    args.command_echo = argv
    started = time.time()
    try:
        code = args.fn(args)
    except (CapExceeded, SearchCapExceeded) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except (LatcatError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    print(f"elapsed: {time.time() - started:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
