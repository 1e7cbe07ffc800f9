"""Command-line front end.

Exit codes: 0 success or verified, 1 refuted or failed check, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from .algebra import doubled_maps_algebra, hom_bimodule
from .approximation import GCommaObject, ApproximationRequest, approximate
from .generic import ApproximationCertificate
from .io import (Workspace, WorkspaceError, algebra_to_json, builtin_workspace, dumps, load_json_file,
                 maps_morphism_to_json, maps_object_to_json, module_to_json, morphism_to_json, parse_field,
                 sequence_from_json, sequence_to_json, workspace_from_json)
from .maps import MapsObject, ar_sequence_from_module, maps_hom, maps_Tau, verify_almost_split
from .modules import (ModuleMorphism, Representation, ShortExactSequence, almost_split_sequence, combine, hom_space,
                      tau, tau_inverse, verify_almost_split_module)
from .recollement import (GFunctor, SubcategoryDatum, build_recollement, check_compatibility_and_induce,
                          check_recollement, restricted_hom_bimodule)

VARIANTS = ("1i", "1ii", "2i", "2ii")


def fmt_dims(M: Representation) -> str:
    return "{" + ", ".join("%s: %d" % (v, M.dims[v]) for v in M.algebra.vertices) + "}"


def fmt_maps(X: MapsObject) -> str:
    return "(%s -> %s)" % (fmt_dims(X.A1), fmt_dims(X.A0))


def load(args) -> Workspace:
    if not args.workspace:
        raise WorkspaceError("a workspace is required (-w FILE or -w builtin:NAME)")
    field = parse_field(args.field) if args.field else None
    if args.workspace.startswith("builtin:"):
        return workspace_from_json(builtin_workspace(args.workspace[len("builtin:"):]), field)
    return workspace_from_json(load_json_file(args.workspace), field)


def need(value: Optional[str], flag: str) -> str:
    if not value:
        raise WorkspaceError("missing required option %s" % flag)
    return value


def emit(args, human: str, machine: Dict[str, Any]) -> None:
    print(dumps(machine) if args.json else human)


# ---------------------------------------------------------------- subcommands

def cmd_hom(args) -> int:
    ws = load(args)
    src, tgt = need(args.module, "-m"), need(args.to, "--to")
    if src in ws.maps_objects or tgt in ws.maps_objects:
        X, Y = ws.maps_object(src), ws.maps_object(tgt)
        basis = maps_hom(X, Y)
        data = [maps_morphism_to_json(m) for m in basis]
    else:
        X, Y = ws.module(src), ws.module(tgt)
        basis = hom_space(X, Y)
        data = [morphism_to_json(h) for h in basis]
    emit(args, "dim Hom(%s, %s) = %d" % (src, tgt, len(basis)),
         {"source": src, "target": tgt, "dim": len(basis), "basis": data})
    return 0


def cmd_tau(args) -> int:
    ws = load(args)
    name = need(args.module, "-m")
    M = ws.module(name)
    T = tau_inverse(M) if args.inverse else tau(M)
    label = "tau^-1" if args.inverse else "tau"
    emit(args, "%s(%s): dims %s" % (label, name, fmt_dims(T)), {"input": name, "op": label, "module": module_to_json(T)})
    return 0


def cmd_maps_tau(args) -> int:
    ws = load(args)
    name = need(args.module, "-m")
    T = maps_Tau(ws.maps_object(name))
    emit(args, "Tau(%s): %s" % (name, fmt_maps(T)), {"input": name, "maps_object": maps_object_to_json(T)})
    return 0


def _maps_ses_json(s) -> dict:
    return {"left": maps_object_to_json(s.left), "middle": maps_object_to_json(s.middle),
            "right": maps_object_to_json(s.right), "j": maps_morphism_to_json(s.j), "p": maps_morphism_to_json(s.p)}


def cmd_ar_seq(args) -> int:
    ws = load(args)
    name = need(args.module, "-m")
    ses = almost_split_sequence(ws.module(name))
    if args.variant:
        s = ar_sequence_from_module(ses, args.variant)
        cert = verify_almost_split(s) if args.verify else None
        out = {"variant": args.variant, "sequence": _maps_ses_json(s)}
        human = "0 -> %s -> %s -> %s -> 0" % (fmt_maps(s.left), fmt_maps(s.middle), fmt_maps(s.right))
    else:
        cert = verify_almost_split_module(ses) if args.verify else None
        out = {"sequence": sequence_to_json(ses.j, ses.p)}
        human = "0 -> %s -> %s -> %s -> 0" % (fmt_dims(ses.left), fmt_dims(ses.middle), fmt_dims(ses.right))
    if cert is not None:
        out["verified"] = cert.verified
        out["summary"] = cert.summary()
        human += "\n" + cert.summary()
    emit(args, human, out)
    return 0 if cert is None or cert.verified else 1


def cmd_verify_ar(args) -> int:
    ws = load(args)
    j, p = sequence_from_json(ws.algebra, load_json_file(need(args.seq, "--seq")))
    try:
        ses = ShortExactSequence(j, p)
    except ValueError as exc:
        emit(args, "not almost split: %s" % exc, {"verified": False, "failures": [str(exc)]})
        return 1
    cert = verify_almost_split_module(ses)
    emit(args, cert.summary(), {"verified": cert.verified, "failures": cert.failures,
                                "witnesses": len(cert.witnesses)})
    return 0 if cert.verified else 1


def cmd_maps_algebra(args) -> int:
    ws = load(args)
    print(dumps(algebra_to_json(doubled_maps_algebra(ws.algebra))))
    return 0


def cmd_recollement_check(args) -> int:
    ws = load(args)
    objs = tuple(o.strip() for o in need(args.objects, "--objects").split(",") if o.strip())
    unknown = [o for o in objs if o not in ws.algebra.vertices]
    if unknown:
        raise WorkspaceError("unknown vertex %r" % unknown[0])
    rec = build_recollement(SubcategoryDatum(ws.algebra, objs))
    if args.corrupt:
        if args.corrupt not in [a.name for a in rec.adjunctions]:
            raise WorkspaceError("unknown adjunction %r" % args.corrupt)
        rec = rec.corrupted(args.corrupt)
    reports = [check_recollement(rec)]
    if args.induce:
        reports.append(check_compatibility_and_induce(rec, restricted_hom_bimodule(rec.R, ws.algebra))[1])
    ok = all(r.passed for r in reports)
    lines = []
    for r in reports:
        for ax in sorted({c.axiom for c in r.checks}):
            checks = [c for c in r.checks if c.axiom == ax]
            fails = [c for c in checks if not c.passed]
            lines.append("%-4s %s (%d checks)" % (ax, "FAIL" if fails else "pass", len(checks)))
            lines.extend("     %s: %s" % (c.name, c.detail) for c in fails)
    lines.append("recollement checks: %s" % ("passed" if ok else "FAILED"))
    emit(args, "\n".join(lines), {"passed": ok, "reports": [r.to_json() for r in reports]})
    return 0 if ok else 1


def _object_json(X) -> Any:
    if isinstance(X, Representation):
        return module_to_json(X)
    if isinstance(X, MapsObject):
        return maps_object_to_json(X)
    if isinstance(X, GCommaObject):
        return {"B": module_to_json(X.B), "A": module_to_json(X.A), "g": morphism_to_json(X.g)}
    return repr(X)


def _object_text(X) -> str:
    if isinstance(X, Representation):
        return fmt_dims(X)
    if isinstance(X, MapsObject):
        return fmt_maps(X)
    return "(%s, %s)" % (fmt_dims(X.B), fmt_dims(X.A))


def cmd_approx(args) -> int:
    ws = load(args)
    name = need(args.module, "-m")
    gens: List = []
    xgens: List = []
    if args.kind in ("epi", "mono"):
        target = ws.maps_object(name)
        if args.gens:
            gens = ws.maps_generators(args.gens)
    elif args.kind == "comma":
        if args.bimodule and args.bimodule not in ws.bimodules:
            raise WorkspaceError("unknown bimodule %r" % args.bimodule)
        G = GFunctor(ws.bimodules[args.bimodule] if args.bimodule else hom_bimodule(ws.algebra))
        B, A = ws.module(name), ws.module(need(args.over, "--over"))
        GB = G.obj(B)
        basis = hom_space(GB, A)
        coeffs = [int(c) for c in args.g.split(",")] if args.g else [0] * len(basis)
        if len(coeffs) != len(basis):
            raise WorkspaceError("--g needs %d coefficients" % len(basis))
        g = combine(basis, coeffs, GB, A) if basis else ModuleMorphism.zero(GB, A)
        target = GCommaObject(B, A, g, G)
        gens = ws.generators(need(args.gens, "--gens"))
        xgens = ws.generators(need(args.x_gens, "--x-gens"))
    else:
        target = ws.module(name)
        gens = ws.generators(need(args.gens, "--gens"))
    cert: ApproximationCertificate = approximate(ApproximationRequest(target, args.kind, args.direction, gens, xgens))
    approx = cert.approximating_object
    out = {"kind": args.kind, "direction": args.direction, "target": name, "certified": cert.certified,
           "approximating_object": _object_json(approx), "witnesses": len(cert.witnesses)}
    human = "%s %s approximation of %s: %s\n" % (args.direction, args.kind, name, _object_text(approx))
    if cert.certified:
        n = len(cert.witnesses)
        human += "certified (%d factorization witness%s)" % (n, "" if n == 1 else "es")
    else:
        gen, _ = cert.refutation
        out["refutation"] = gen
        human += "refuted: a morphism involving %s does not factor" % gen
    emit(args, human, out)
    return 0 if cert.certified else 1


def cmd_selftest(args) -> int:
    from .acceptance import run_suite
    only = [int(x) for x in args.only.split(",")] if args.only else None
    if only and any(n not in range(1, 13) for n in only):
        raise WorkspaceError("criteria are numbered 1 to 12")
    results = run_suite(corrupt=args.corrupt, only=only)
    ok = all(r.passed for r in results)
    if args.json:
        print(dumps({"passed": ok, "criteria": [{k: v for k, v in r.to_json().items() if k != "seconds"} for r in results]}))
    else:
        for r in results:
            print(r.line())
        print("%d/%d criteria passed" % (sum(r.passed for r in results), len(results)))
    return 0 if ok else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--workspace", help="workspace JSON file, or builtin:a2 / builtin:a3 / builtin:delta5")
    common.add_argument("-m", "--module", help="name of a module or maps object in the workspace")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", help="override the field: Q or Fp:<prime>")

    p = argparse.ArgumentParser(prog="matcat", description="Exact computations in module, maps and comma categories.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hom", parents=[common], help="basis of Hom between two modules or maps objects")
    s.add_argument("--to", help="target name")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("tau", parents=[common], help="Auslander-Reiten translate of a module")
    s.add_argument("--inverse", action="store_true", help="compute the inverse translate")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("maps-tau", parents=[common], help="translate of a maps object")
    s.set_defaults(func=cmd_maps_tau)

    s = sub.add_parser("ar-seq", parents=[common], help="almost split sequence ending in a module")
    s.add_argument("--variant", choices=VARIANTS, help="build the maps-category sequence of this kind")
    s.add_argument("--verify", action="store_true", help="also run the almost-split verifier")
    s.set_defaults(func=cmd_ar_seq)

    s = sub.add_parser("verify-ar", parents=[common], help="verify that a sequence of modules is almost split")
    s.add_argument("--seq", help="sequence JSON (left, middle, right, j, p)")
    s.set_defaults(func=cmd_verify_ar)

    s = sub.add_parser("maps-algebra", parents=[common], help="emit the algebra whose modules are maps objects")
    s.set_defaults(func=cmd_maps_algebra)

    s = sub.add_parser("recollement-check", parents=[common], help="check the recollement of a full subcategory")
    s.add_argument("--objects", help="comma-separated vertices spanning the subcategory")
    s.add_argument("--corrupt", help="zero the counit of this adjunction, e.g. '(i^*, i_*)'")
    s.add_argument("--induce", action="store_true", help="also check the induced comma-category recollements")
    s.set_defaults(func=cmd_recollement_check)

    s = sub.add_parser("approx", parents=[common], help="certified approximation")
    s.add_argument("--kind", choices=("addG", "epi", "mono", "comma"), default="addG")
    s.add_argument("--direction", choices=("left", "right"), default="right")
    s.add_argument("--gens", help="generator list name (for comma: the U-side list)")
    s.add_argument("--x-gens", dest="x_gens", help="comma only: the T-side generator list")
    s.add_argument("--over", help="comma only: the T-module A of (B, g, A)")
    s.add_argument("--g", help="comma only: coefficients of g in the basis of Hom(G(B), A)")
    s.add_argument("--bimodule", help="comma only: bimodule name (default: the hom bimodule)")
    s.set_defaults(func=cmd_approx)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance suite on built-in workspaces")
    s.add_argument("--corrupt", action="store_true", help="inject a bad relation into the built-in A2")
    s.add_argument("--only", help="comma-separated criterion numbers")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except WorkspaceError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        # inconsistent input caught deeper down (bad relation, non-morphism, unsupported field)
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
