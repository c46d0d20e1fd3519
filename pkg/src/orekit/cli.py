"""Batch command-line front end.

    orekit <verb> --config <file> [--poly <text>] [--point <text>] ...

One command per process; every verb loads a JSON session configuration,
validates the context, and emits a deterministic report on stdout (JSON by
default, aligned text with --out text).  Wall-clock timing goes to stderr
so reports stay byte-identical across runs.

Exit codes: 0 success, 2 validation/precondition failure, 3 guard
exceeded, 4 parse error.
"""

import argparse
import json
import sys
import time

from . import matrices, modstruct, structure
from .config import load_config
from .errors import (GuardExceeded, OreError, ParseError, PreconditionError,
                     SchemaError, ShapeError)
from .evaluation import (Point, conjugacy_class, evaluate_pmt, evaluate_reduce,
                         conjugate, related)
from .orepoly import format_poly, parse_poly
from .report import CommandReport, render_figure, render_json, render_text, supports_figure
from .twist import phi_embedding_check, validate_twist

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_GUARD = 3
EXIT_PARSE = 4


def _report_checks(report):
    return {"mode": report.mode,
            "checks": [{"name": c.name, "passed": c.passed, "witness": c.witness}
                       for c in report.checks]}


def _guard_info(cfg, **extra):
    g = cfg.ctx.guards
    info = {"max_ring_card": g.max_ring_card, "max_terms": g.max_terms,
            "max_search": g.max_search, "ring_cardinality": cfg.ctx.ring.card}
    info.update(extra)
    return info


def _require_validated(cfg):
    report = validate_twist(cfg.ctx)
    if not report.passed:
        bad = report.first_failure()
        raise PreconditionError(
            f"context failed validation: {bad.name} at witness {bad.witness}")


def cmd_validate(cfg, args):
    twist_report = validate_twist(cfg.ctx)
    embed_report = phi_embedding_check(cfg.ctx)
    passed = twist_report.passed and embed_report.passed
    result = {"twist": _report_checks(twist_report),
              "embedding": _report_checks(embed_report),
              "passed": passed}
    report = CommandReport("validate", {"context": cfg.ctx.describe()}, result,
                           _guard_info(cfg))
    return report, EXIT_OK if passed else EXIT_VALIDATION


def cmd_eval(cfg, args):
    _require_validated(cfg)
    f = parse_poly(cfg.ctx, args.poly)
    a = Point.parse(cfg.ctx, args.point)
    via_pmt = evaluate_pmt(f, a)
    via_reduce = evaluate_reduce(f, a)
    result = {"pmt": str(via_pmt), "reduce": str(via_reduce),
              "agree": via_pmt == via_reduce}
    inputs = {"poly": format_poly(f), "point": str(a)}
    return CommandReport("eval", inputs, result, _guard_info(cfg)), EXIT_OK


def cmd_center(cfg, args):
    _require_validated(cfg)
    members = structure.center_candidates(cfg.ctx)
    result = {"center": [str(m) for m in members],
              "division_ring_hypothesis": cfg.ctx.ring.kind == "gf"}
    return CommandReport("center", {"context": cfg.ctx.describe()}, result,
                         _guard_info(cfg, elements_scanned=cfg.ctx.ring.card)), EXIT_OK


def cmd_centralizer(cfg, args):
    _require_validated(cfg)
    a = Point.parse(cfg.ctx, args.point)
    members = structure.centralizer(a)
    result = {"members": [str(m) for m in members]}
    return CommandReport("centralizer", {"point": str(a)}, result,
                         _guard_info(cfg, elements_scanned=cfg.ctx.ring.card)), EXIT_OK


def cmd_roots(cfg, args):
    _require_validated(cfg)
    f = parse_poly(cfg.ctx, args.poly)
    found = structure.roots(f)
    space = cfg.ctx.ring.card ** cfg.ctx.n
    result = {"roots": [str(p) for p in found], "space_size": space}
    return CommandReport("roots", {"poly": format_poly(f)}, result,
                         _guard_info(cfg, points_scanned=space)), EXIT_OK


def cmd_classes(cfg, args):
    _require_validated(cfg)
    f = parse_poly(cfg.ctx, args.poly)
    rep = structure.class_decomposition(f)
    result = {
        "roots": [str(p) for p in rep.root_set],
        "slices": [{"representative": str(s.representative),
                    "witnesses": [str(x) for x in s.witnesses],
                    "members": [str(m) for m in s.members]}
                   for s in rep.slices],
        "coverage": rep.coverage,
        "kernel_root_link": rep.kernel_root_link,
        "centralizer_closure": rep.centralizer_closure,
    }
    return CommandReport("classes", {"poly": format_poly(f)}, result,
                         _guard_info(cfg)), EXIT_OK


def cmd_semi_check(cfg, args):
    _require_validated(cfg)
    f = parse_poly(cfg.ctx, args.poly)
    cert = structure.semi_invariant_certificate(f)
    if cert is None:
        result = {"semi_invariant": False}
    else:
        result = {"semi_invariant": True, "map": cert.describe(),
                  "verified_homomorphism": cert.verified}
    return CommandReport("semi-check", {"poly": format_poly(f)}, result,
                         _guard_info(cfg)), EXIT_OK


def cmd_semi_find(cfg, args):
    _require_validated(cfg)
    certs = structure.find_semi_invariants(
        cfg.ctx, max_len=args.max_len,
        monic_only=not args.include_nonmonic,
        restricted=not args.unrestricted)
    result = {"certificates": [
        {"poly": format_poly(c.poly), "degree": c.poly.degree(),
         "map": c.describe(), "verified_homomorphism": c.verified}
        for c in certs]}
    inputs = {"max_len": args.max_len, "restricted": not args.unrestricted}
    return CommandReport("semi-find", inputs, result, _guard_info(cfg)), EXIT_OK


def _load_presentation(cfg, text, name):
    if text.startswith("point:"):
        a = Point.parse(cfg.ctx, text[len("point:"):])
        return modstruct.module_from_point(a)
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    else:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad presentation JSON for {name}: {exc}") from None
    if not isinstance(obj, dict) or set(obj) != {"rank", "X"}:
        raise SchemaError('presentation must be {"rank": l, "X": [...]}', name)
    rank = obj["rank"]
    mats = [matrices.grid_from_obj(cfg.ctx.ring, m, rank, rank, f"{name}.X[{i}]")
            for i, m in enumerate(obj["X"])]
    return modstruct.ModulePresentation(cfg.ctx, rank, mats)


def cmd_hom(cfg, args):
    _require_validated(cfg)
    p1 = _load_presentation(cfg, args.p1, "--p1")
    p2 = _load_presentation(cfg, args.p2, "--p2")
    sol = modstruct.hom_solve(p1, p2)
    result = {"solution_count": sol.count()}
    if sol.basis is not None:
        result["basis"] = [matrices.grid_to_obj(b) for b in sol.basis]
        result["dimension"] = sol.dimension()
        result["characteristic"] = sol.char
    else:
        result["solutions"] = [matrices.grid_to_obj(s) for s in sol.solutions]
    inputs = {"p1": args.p1, "p2": args.p2}
    return CommandReport("hom", inputs, result, _guard_info(cfg)), EXIT_OK


def cmd_conj(cfg, args):
    _require_validated(cfg)
    a = Point.parse(cfg.ctx, args.point)
    x = cfg.ctx.ring.parse(args.x)
    b = conjugate(a, x)
    result = {"point": str(b)}
    return CommandReport("conj", {"point": str(a), "x": str(x)}, result,
                         _guard_info(cfg)), EXIT_OK


def cmd_related(cfg, args):
    _require_validated(cfg)
    a = Point.parse(cfg.ctx, args.point)
    b = Point.parse(cfg.ctx, args.point2)
    witness = related(a, b)
    result = {"related": witness is not None,
              "witness": None if witness is None else str(witness)}
    if args.with_class:
        result["class"] = [str(p) for p in conjugacy_class(a)]
    inputs = {"point": str(a), "point2": str(b)}
    return CommandReport("related", inputs, result, _guard_info(cfg)), EXIT_OK


_HANDLERS = {
    "validate": cmd_validate,
    "eval": cmd_eval,
    "center": cmd_center,
    "centralizer": cmd_centralizer,
    "roots": cmd_roots,
    "classes": cmd_classes,
    "semi-check": cmd_semi_check,
    "semi-find": cmd_semi_find,
    "hom": cmd_hom,
    "conj": cmd_conj,
    "related": cmd_related,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="orekit",
        description="exact computations in multivariate Ore extensions over"
                    " finite coefficient rings")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, fig=False):
        p.add_argument("--config", required=True, help="session JSON file")
        p.add_argument("--out", choices=("json", "text"), default=None,
                       help="report format (default: config output setting)")
        if fig:
            p.add_argument("--fig", default=None, metavar="PATH",
                           help="also render a chart of the result to PATH")

    common(sub.add_parser("validate", help="check the twisting laws"))
    p = sub.add_parser("eval", help="evaluate a polynomial at a point")
    common(p)
    p.add_argument("--poly", required=True)
    p.add_argument("--point", required=True)
    common(sub.add_parser("center", help="central scalar candidates"), fig=True)
    p = sub.add_parser("centralizer", help="twisted centralizer of a point")
    common(p, fig=True)
    p.add_argument("--point", required=True)
    p = sub.add_parser("roots", help="exact root set of a polynomial")
    common(p, fig=True)
    p.add_argument("--poly", required=True)
    p = sub.add_parser("classes", help="root set split into conjugacy slices")
    common(p, fig=True)
    p.add_argument("--poly", required=True)
    p = sub.add_parser("semi-check", help="certify a semi-invariant polynomial")
    common(p)
    p.add_argument("--poly", required=True)
    p = sub.add_parser("semi-find", help="search for semi-invariant polynomials")
    common(p, fig=True)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--include-nonmonic", action="store_true")
    p.add_argument("--unrestricted", action="store_true",
                   help="search all coefficient assignments, not just {0,1}")
    p = sub.add_parser("hom", help="solve for module homomorphisms")
    common(p)
    p.add_argument("--p1", required=True,
                   help='presentation: {"rank":l,"X":[...]}, @file, or point:(...)')
    p.add_argument("--p2", required=True)
    p = sub.add_parser("conj", help="twisted conjugate of a point by a unit")
    common(p)
    p.add_argument("--point", required=True)
    p.add_argument("--x", required=True)
    p = sub.add_parser("related", help="witness search for the point relation")
    common(p)
    p.add_argument("--point", required=True)
    p.add_argument("--point2", required=True)
    p.add_argument("--with-class", action="store_true",
                   help="also list the full class of the first point")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        cfg = load_config(args.config)
        report, code = _HANDLERS[args.verb](cfg, args)
        out = args.out or cfg.output
        text = render_json(report) if out == "json" else render_text(report)
        sys.stdout.write(text)
        fig_path = getattr(args, "fig", None)
        if fig_path:
            if not supports_figure(args.verb):
                raise PreconditionError(f"no figure defined for {args.verb!r}")
            render_figure(report, fig_path, ring_card=cfg.ctx.ring.card)
        print(f"elapsed: {time.perf_counter() - started:.3f}s", file=sys.stderr)
        return code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (SchemaError, PreconditionError, ShapeError, OreError, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
