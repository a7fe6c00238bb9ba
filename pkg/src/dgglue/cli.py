"""Command-line interface.

Exit codes: 0 every check passed, 1 a mathematical check failed,
2 bad input or a validation error, 3 a resolution hit its depth cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dgcore import ValidationError, validate_category
from .euler import exceptionality_check, form_equivalence, gram, representable_euler_matrix
from .exactlin import cohomology_dims
from .glue import (
    BimoduleMorphism,
    point_bimodule,
    upper_triangular,
    validate_bimodule,
    validate_bimodule_morphism,
    widetilde,
)
from .scenarios import (
    ScenarioConfig,
    ScenarioError,
    build_kronecker,
    format_point,
    parse_points,
    report_dict,
    report_text,
    run_scenario,
    torsion_object,
)
from .serialize import (
    FormatError,
    bimodule_from_json,
    bimodule_morphism_from_json,
    bimodule_morphism_to_json,
    bimodule_to_json,
    category_from_json,
    category_to_json,
    dumps,
    glued_from_json,
    glued_to_json,
    gram_from_json,
    load,
    save,
    twcx_from_json,
)
from .sod import (
    ResolutionDepthExceeded,
    check_condition,
    check_perfectness,
    ks_partner,
    proof_chain_tables,
    verify_fully_faithful,
)
from .twcx import direct_sum, projection, validate_twcx

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_DEPTH = 0, 1, 2, 3


def _dims(h) -> dict:
    return {str(n): d for n, d in sorted(h.items())}


def _emit(args, record: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(dumps(record))
    else:
        print(text)


def _load_category(path):
    rec = load(path)
    kind = rec.get("type") if isinstance(rec, dict) else None
    if kind == "glued":
        return glued_from_json(rec)
    if kind == "category":
        return validate_category(category_from_json(rec))
    raise FormatError(f"{path}: expected a category or a glued bundle, got {kind!r}")


def cmd_validate(args) -> int:
    rec = load(args.file)
    kind = rec.get("type") if isinstance(rec, dict) else None
    if kind == "category":
        validate_category(category_from_json(rec))
    elif kind == "twisted_complex":
        Z = twcx_from_json(rec)
        validate_category(Z.category)
        validate_twcx(Z)
    elif kind == "bimodule":
        validate_bimodule(bimodule_from_json(rec))
    elif kind == "bimodule_morphism":
        phi = bimodule_morphism_from_json(rec)
        validate_bimodule(phi.source)
        validate_bimodule(phi.target)
        validate_bimodule_morphism(phi)
    elif kind == "glued":
        glued_from_json(rec)
    elif kind == "gram" or isinstance(rec, list):
        gram_from_json(rec)
    else:
        raise FormatError(f"{args.file}: unknown record type {kind!r}")
    print(f"valid {kind or 'gram'}")
    return EXIT_OK


def cmd_hom(args) -> int:
    cat = _load_category(args.file)
    for o in (args.obj1, args.obj2):
        cat.index(o)
    c = cat.hom(args.obj1, args.obj2)
    h = cohomology_dims(c)
    rec = {"source": args.obj1, "target": args.obj2, "dims": _dims(c.dims), "cohomology": _dims(h)}
    _emit(args, rec, f"Hom({args.obj1}, {args.obj2}): dims {_dims(c.dims)}, cohomology {_dims(h)}")
    return EXIT_OK


def cmd_glue(args) -> int:
    A = validate_category(category_from_json(load(args.fileA)))
    B = validate_category(category_from_json(load(args.fileB)))
    S = bimodule_from_json(load(args.fileS))
    if S.source != B or S.target != A:
        raise FormatError("the bimodule does not go from the second category to twisted complexes over the first")
    C = upper_triangular(A, B, S)
    save(args.output, glued_to_json(C))
    print(f"glued category {C.name} with objects {', '.join(C.objects)} written to {args.output}")
    return EXIT_OK


def _load_gluing(args):
    C = glued_from_json(load(args.glued))
    phi = bimodule_morphism_from_json(load(args.phi), source=C.S)
    validate_bimodule(phi.target)
    validate_bimodule_morphism(phi)
    return C, phi


def cmd_check_sod(args) -> int:
    C, phi = _load_gluing(args)
    T = phi.target
    cond = check_condition(C.S, T, phi)
    W = widetilde(C, T, phi)
    ff = verify_fully_faithful(C, W)
    chain = proof_chain_tables(C, T, phi, W) if cond.passed else None
    ok = cond.passed and ff.passed and (chain is None or chain.passed)
    rec = {
        "condition": {"passed": cond.passed, "note": cond.note,
                      "table": {f"{j}->{k}": _dims(v) for (j, k), v in cond.table.items()}},
        "fully_faithful": {"passed": ff.passed,
                           "glued": {f"{j}->{k}": _dims(v) for (j, k), v in ff.glued.items()},
                           "original": {f"{j}->{k}": _dims(v) for (j, k), v in ff.original.items()}},
        "proof_chain": None if chain is None else {"passed": chain.passed},
        "passed": ok,
    }
    lines = [f"condition on cone(phi): {'pass' if cond.passed else 'FAIL'} ({cond.note})"]
    for (j, k), v in cond.failures().items():
        lines.append(f"  Hom(R({j}), T({k})) has cohomology {_dims(v)}")
    lines.append(f"fully faithful: {'pass' if ff.passed else 'FAIL'}")
    for (j, k), (g, o) in ff.mismatches().items():
        lines.append(f"  {j}->{k}: glued {_dims(g)} vs original {_dims(o)}")
    if chain is not None:
        lines.append(f"proof-chain tables agree: {'yes' if chain.passed else 'NO'}")
    _emit(args, rec, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_ks_partner(args) -> int:
    C, phi = _load_gluing(args)
    cond = check_condition(C.S, phi.target, phi)
    if not cond.passed:
        print("condition on cone(phi) fails; no partner computed", file=sys.stderr)
        return EXIT_FAILED
    W = widetilde(C, phi.target, phi)
    perf = check_perfectness(C, W, args.depth_cap)
    if not perf.passed:
        for g, msg in perf.unresolved.items():
            print(f"hypothesis unverified for {g}: {msg}", file=sys.stderr)
        return EXIT_DEPTH
    P = ks_partner(C, W, args.depth_cap, perf)
    rec = {"sources": P.sources, "dropped": P.dropped, "k0_classes": P.classes, "gram": P.gram,
           "right_orthogonal": P.orthogonal, "k0_rank": P.k0_rank,
           "resolution_rounds": P.rounds}
    lines = [f"partner generators: {', '.join('E(%s)' % s for s in P.sources) or 'none'}"
             f" (contractible, dropped: {', '.join(P.dropped) or 'none'})",
             f"K0 classes: {P.classes}",
             f"Euler Gram: {P.gram}",
             f"K0 rank: {P.k0_rank}",
             f"right-orthogonal to the image of B: {'yes' if P.orthogonal else 'NO'}"]
    _emit(args, rec, "\n".join(lines))
    return EXIT_OK if P.orthogonal else EXIT_FAILED


def cmd_euler(args) -> int:
    cat = _load_category(args.file)
    objects = args.objects or list(cat.objects)
    for o in objects:
        cat.index(o)
    full = representable_euler_matrix(cat)
    idx = [cat.index(o) for o in objects]
    g = [[full.matrix[i][j] for j in idx] for i in idx]
    exc = exceptionality_check(cat)
    rec = {"objects": objects, "gram": g, "exceptional": exc.passed, "order": exc.order,
           "failures": exc.failures}
    text = [f"Euler matrix on {', '.join(objects)}: {g}",
            f"exceptional: {'yes, order ' + ', '.join(exc.order) if exc.passed else 'no'}"]
    text += [f"  {f}" for f in exc.failures]
    _emit(args, rec, "\n".join(text))
    return EXIT_OK


def _gram_arg(value):
    p = Path(value)
    if p.exists():
        return gram_from_json(load(p))
    try:
        return gram_from_json(json.loads(value))
    except json.JSONDecodeError:
        raise FormatError(f"{value}: neither a file nor a JSON matrix") from None


def cmd_form_equiv(args) -> int:
    G1, G2 = _gram_arg(args.G1), _gram_arg(args.G2)
    v = form_equivalence(G1, G2, args.bound)
    rec = v.to_dict()
    if v.kind == "Equivalent":
        text = f"Equivalent: P = {v.certificate} satisfies P^T G1 P = G2"
    elif v.kind == "Inequivalent":
        text = f"Inequivalent: {v.invariant} differs ({v.values[0]} vs {v.values[1]})"
    else:
        text = f"Undecided: no certificate with entries bounded by {v.bound}"
    _emit(args, rec, text)
    return {"Equivalent": EXIT_OK, "Inequivalent": EXIT_FAILED}.get(v.kind, EXIT_FAILED)


def cmd_scenario(args) -> int:
    cfg = ScenarioConfig(parse_points(args.points1), parse_points(args.points2), args.bound, args.depth_cap,
                         args.report, allow_overlap=args.allow_overlap)
    try:
        rep = run_scenario(cfg)
    except ScenarioError as exc:
        if exc.stage == "check_perfectness":
            print(f"stopped at {exc.stage}: resolution depth cap reached", file=sys.stderr)
            return EXIT_DEPTH
        print(f"stopped at {exc.stage}", file=sys.stderr)
        if exc.stage == "check_condition":
            for (j, k), v in exc.report.failures().items():
                print(f"  Hom(R({j}), T({k})) has cohomology {_dims(v)}", file=sys.stderr)
        return EXIT_FAILED
    if args.report == "json":
        print(dumps(report_dict(rep)))
    else:
        print(report_text(rep))
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_make_example(args) -> int:
    """Write the two-point gluing as input files for the other commands."""
    out = Path(args.directory)
    out.mkdir(parents=True, exist_ok=True)
    K = build_kronecker()
    pts1, pts2 = parse_points(args.points1), parse_points(args.points2)
    P1, P2 = torsion_object(pts1, K), torsion_object(pts2, K)
    S = point_bimodule(K, direct_sum(P1, P2), name="S")
    T = point_bimodule(K, P2, name="T")
    phi = BimoduleMorphism(S, T, {"*": projection([P1, P2], 1)})
    save(out / "A.json", category_to_json(K))
    save(out / "B.json", category_to_json(S.source))
    save(out / "S.json", bimodule_to_json(S))
    save(out / "phi.json", bimodule_morphism_to_json(phi))
    print(f"wrote A.json, B.json, S.json, phi.json to {out} "
          f"(points1 {', '.join(map(format_point, pts1))}; points2 {', '.join(map(format_point, pts2))})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgglue", description="Gluing of finite DG categories along bimodules.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a JSON record against its axioms")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("hom", help="Hom complex between two objects")
    s.add_argument("file")
    s.add_argument("obj1")
    s.add_argument("obj2")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("glue", help="build the upper-triangular category")
    s.add_argument("fileA")
    s.add_argument("fileB")
    s.add_argument("fileS")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_glue)

    s = sub.add_parser("check-sod", help="vanishing condition and full faithfulness for phi")
    s.add_argument("glued")
    s.add_argument("phi")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_check_sod)

    s = sub.add_parser("ks-partner", help="complementary category via counit cones")
    s.add_argument("glued")
    s.add_argument("phi")
    s.add_argument("--depth-cap", type=int, default=8)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_ks_partner)

    s = sub.add_parser("euler", help="Euler matrix of representables")
    s.add_argument("file")
    s.add_argument("objects", nargs="*")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_euler)

    s = sub.add_parser("form-equiv", help="integral congruence of two bilinear forms")
    s.add_argument("G1", help="file or inline JSON matrix")
    s.add_argument("G2", help="file or inline JSON matrix")
    s.add_argument("--bound", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_form_equiv)

    s = sub.add_parser("scenario", help="run a built-in scenario")
    s.add_argument("name", choices=["p1-two-points"])
    s.add_argument("--points1", required=True, help='comma-separated points, e.g. "1:0,1:1"')
    s.add_argument("--points2", required=True)
    s.add_argument("--report", choices=["json", "text"], default="text")
    s.add_argument("--bound", type=int, default=None)
    s.add_argument("--depth-cap", type=int, default=8)
    s.add_argument("--allow-overlap", action="store_true",
                   help="skip the disjointness check so the pipeline reports the failure")
    s.set_defaults(func=cmd_scenario)

    s = sub.add_parser("make-example", help="write the two-point gluing inputs as JSON files")
    s.add_argument("directory")
    s.add_argument("--points1", default="1:0")
    s.add_argument("--points2", default="0:1")
    s.set_defaults(func=cmd_make_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResolutionDepthExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEPTH
    except (FormatError, ValidationError, ValueError, KeyError, TypeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
