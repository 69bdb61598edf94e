"""Command-line interface: classify, gallery, verify.

Spec files are JSON with exact rationals ("p/q" strings, bare integers
allowed); reports render as text or JSON with stable ordering.  Exit
codes: 0 success, 1 validation or verification failure, 2 parse error
or unknown name, 3 internal error, 4 verification skipped.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from tquot import gallery
from tquot.classify import (
    CollapsedProduct,
    Disk,
    ProductPolytopeSurface,
    Sphere,
    StratificationOnly,
    TopologyReport,
    ValidationFailure,
    classify,
)
from tquot.hamspace import (
    HamSpec,
    SpecError,
    point_component,
    surface_component,
    validate,
)
from tquot.simplicial import SizeCapExceeded, verify_report


class SpecFileError(ValueError):
    pass


def _fraction_from_json(value) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        parts = value.split("/")
        if len(parts) == 1 and parts[0].lstrip("-").isdigit():
            return Fraction(int(parts[0]))
        if len(parts) == 2 and parts[0].lstrip("-").isdigit() and parts[1].isdigit():
            num, den = int(parts[0]), int(parts[1])
            if den <= 0:
                raise SpecFileError(f"rational {value!r} needs a positive denominator")
            return Fraction(num, den)
    raise SpecFileError(f"not a rational: {value!r}")


def _fraction_to_json(x: Fraction):
    x = Fraction(x)
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def parse_spec(data) -> HamSpec:
    try:
        name = data["name"]
        torus_rank = int(data["torus_rank"])
        half_dim = int(data["half_dim"])
        raw_components = data["fixed_components"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFileError(f"malformed spec file: {exc}") from exc
    components = []
    for raw in raw_components:
        try:
            kind = raw["kind"]
            moment = tuple(_fraction_from_json(x) for x in raw["moment"])
            weights = tuple(tuple(int(x) for x in w) for w in raw["weights"])
            if kind == "point":
                components.append(point_component(moment, weights))
            elif kind == "surface":
                components.append(surface_component(int(raw["genus"]), moment, weights))
            else:
                raise SpecFileError(f"unknown component kind {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SpecFileError):
                raise
            raise SpecFileError(f"malformed component: {exc}") from exc
    return HamSpec(name, torus_rank, half_dim, tuple(components))


def load_spec(path: str) -> HamSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecFileError(f"cannot read spec file {path}: {exc}") from exc
    return parse_spec(data)


def spec_to_json(spec: HamSpec) -> dict:
    components = []
    for c in spec.components:
        entry = {
            "kind": c.kind,
            "moment": [_fraction_to_json(x) for x in c.moment],
            "weights": [list(w) for w in c.weights],
        }
        if c.is_surface:
            entry["genus"] = c.genus
        components.append(entry)
    return {
        "name": spec.name,
        "torus_rank": spec.torus_rank,
        "half_dim": spec.half_dim,
        "fixed_components": components,
    }


def dump_spec(spec: HamSpec, path: str) -> None:
    text = json.dumps(spec_to_json(spec), sort_keys=True, indent=2) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _verdict_to_json(verdict) -> dict:
    if isinstance(verdict, Sphere):
        return {"type": "sphere", "dim": verdict.dim}
    if isinstance(verdict, Disk):
        return {"type": "disk", "dim": verdict.dim}
    if isinstance(verdict, ProductPolytopeSurface):
        return {"type": "product-polytope-surface", "genus": verdict.genus}
    if isinstance(verdict, CollapsedProduct):
        return {
            "type": "collapsed-product",
            "short_face_ids": list(verdict.short_face_ids),
            "fiber": "S2",
        }
    if isinstance(verdict, StratificationOnly):
        return {"type": "stratification-only"}
    raise ValueError(f"unknown verdict {verdict!r}")


def verdict_text(verdict) -> str:
    if isinstance(verdict, Sphere):
        return f"Sphere({verdict.dim})"
    if isinstance(verdict, Disk):
        return f"Disk({verdict.dim})"
    if isinstance(verdict, ProductPolytopeSurface):
        return f"ProductPolytopeSurface(genus={verdict.genus})"
    if isinstance(verdict, CollapsedProduct):
        return f"CollapsedProduct(short_faces={list(verdict.short_face_ids)}, fiber=S2)"
    return "StratificationOnly"


def report_to_json(spec: HamSpec, report: TopologyReport, validation=None) -> dict:
    sp = report.stratification
    faces = [
        {
            "id": f.id,
            "dim": f.dim,
            "vertices": list(f.vertex_set),
            "complexity": sp.face_complexity[f.id],
        }
        for f in sp.lattice.faces
    ]
    doc = {
        "name": spec.name,
        "verdict": _verdict_to_json(report.verdict),
        "provenance": report.provenance,
        "join_presentation": report.join_presentation,
        "annotation": report.annotation,
        "complexity": sp.complexity,
        "polytope": {
            "ambient_dim": sp.polytope.ambient_dim,
            "dim": sp.polytope.dim,
            "vertices": [[_fraction_to_json(x) for x in v] for v in sp.polytope.vertices],
            "facets": [
                {"conormal": list(c), "offset": _fraction_to_json(o)}
                for c, o in sp.polytope.facets
            ],
        },
        "faces": faces,
        "short_faces": list(sp.short_faces),
    }
    if validation is not None:
        doc["validation"] = [
            {"check": c.name, "passed": c.passed, "detail": c.detail}
            for c in validation.checks
        ]
    return doc


def _render_report_text(spec, report, validation) -> str:
    sp = report.stratification
    lines = [f"spec: {spec.name}"]
    if validation is not None:
        for c in validation.checks:
            lines.append(f"  {c.name}: {'ok' if c.passed else 'FAIL ' + c.detail}")
    lines.append(f"momentum polytope: dim {sp.polytope.dim}, {len(sp.polytope.vertices)} vertices, {len(sp.polytope.facets)} facets")
    lines.append(f"complexity: {sp.complexity}")
    for f in sp.lattice.faces:
        lines.append(
            f"  face {f.id} dim {f.dim} vertices {list(f.vertex_set)} complexity {sp.face_complexity[f.id]}"
        )
    lines.append(f"short faces: {list(sp.short_faces)}")
    lines.append(f"verdict: {verdict_text(report.verdict)}")
    lines.append(f"provenance: {report.provenance}")
    if report.annotation:
        lines.append(f"reported identification: {report.annotation}")
    return "\n".join(lines)


def _emit(doc, text: str, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True, indent=2), file=out)
    else:
        print(text, file=out)


def _annotation_for(spec: HamSpec):
    entry = gallery.CATALOG.get(spec.name)
    return entry.reported_quotient if entry else None


def cmd_classify(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        spec = load_spec(args.path)
    except SpecFileError as exc:
        print(f"error: {exc}", file=err)
        return 2
    validation = None
    if not args.skip_validation:
        validation = validate(spec)
        if not validation.ok:
            first = validation.first_failed()
            if args.format == "json":
                doc = {
                    "error": "validation-failed",
                    "check": first,
                    "validation": [
                        {"check": c.name, "passed": c.passed, "detail": c.detail}
                        for c in validation.checks
                    ],
                }
                print(json.dumps(doc, sort_keys=True, indent=2), file=out)
            else:
                for c in validation.checks:
                    print(f"{c.name}: {'ok' if c.passed else 'FAIL ' + c.detail}", file=out)
                print(f"validation failed: {first}", file=out)
            return 1
    try:
        report = classify(spec, skip_validation=True, annotation=_annotation_for(spec))
    except SpecError as exc:
        print(f"error: {exc}", file=err)
        return 3
    _emit(report_to_json(spec, report, validation), _render_report_text(spec, report, validation), args.format, out)
    return 0


def cmd_gallery(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    if args.gallery_command == "list":
        for name in gallery.names():
            entry = gallery.CATALOG[name]
            genus = " (takes --genus)" if entry.parametrized else ""
            print(
                f"{name:14s} row ({entry.row}): {entry.summary}; quotient {entry.reported_quotient}{genus}",
                file=out,
            )
        return 0
    name = args.name
    if name not in gallery.CATALOG:
        print(f"error: unknown gallery name {name!r}", file=err)
        return 2
    genus = args.genus if gallery.CATALOG[name].parametrized else None
    spec = gallery.build(name, genus=genus)
    if args.gallery_command == "show":
        report = classify(spec, annotation=_annotation_for(spec))
        print(_render_report_text(spec, report, validate(spec)), file=out)
        return 0
    dump_spec(spec, args.out_path)
    print(f"wrote {args.out_path}", file=out)
    return 0


def cmd_verify(args, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        spec = load_spec(args.path)
    except SpecFileError as exc:
        print(f"error: {exc}", file=err)
        return 2
    validation = validate(spec)
    if not validation.ok:
        first = validation.first_failed()
        if args.format == "json":
            print(
                json.dumps({"error": "validation-failed", "check": first}, sort_keys=True),
                file=out,
            )
        else:
            print(f"validation failed: {first}", file=out)
        return 1
    report = classify(spec, skip_validation=True, annotation=_annotation_for(spec))
    if isinstance(report.verdict, StratificationOnly):
        msg = f"StratificationOnly: complexity {report.stratification.complexity}"
        if args.format == "json":
            print(json.dumps({"skipped": msg}, sort_keys=True), file=out)
        else:
            print(f"skipped: {msg}", file=out)
        return 4
    entry = gallery.CATALOG.get(spec.name)
    expected = entry.expected_betti if entry else None
    try:
        result = verify_report(report, expected_betti=expected, max_simplices=args.max_simplices)
    except SizeCapExceeded as exc:
        msg = f"size cap exceeded: at least {exc.estimate} simplices (cap {exc.cap})"
        if args.format == "json":
            print(json.dumps({"skipped": msg, "estimate": exc.estimate}, sort_keys=True), file=out)
        else:
            print(f"skipped: {msg}", file=out)
        return 4
    doc = report_to_json(spec, report, validation)
    doc["verification"] = {
        "passed": result.passed,
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "computed_betti": list(c.computed.betti) if c.computed else None,
                "computed_torsion": [list(t) for t in c.computed.torsion] if c.computed else None,
                "expected_betti": list(c.expected) if c.expected else None,
            }
            for c in result.checks
        ],
    }
    lines = [_render_report_text(spec, report, validation), "verification:"]
    for c in result.checks:
        comp = list(c.computed.betti) if c.computed else None
        exp = list(c.expected) if c.expected else None
        lines.append(
            f"  {c.name}: {'pass' if c.passed else 'FAIL'} computed betti {comp}"
            + (f" expected {exp}" if exp else "")
        )
    _emit(doc, "\n".join(lines), args.format, out)
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tquot",
        description="momentum polytopes, complexity stratification and quotient topology",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify the quotient of a spec file")
    p_classify.add_argument("path")
    p_classify.add_argument("--format", choices=["text", "json"], default="text")
    p_classify.add_argument("--skip-validation", action="store_true")

    p_gallery = sub.add_parser("gallery", help="list, show or export shipped specimens")
    gsub = p_gallery.add_subparsers(dest="gallery_command", required=True)
    gsub.add_parser("list")
    p_show = gsub.add_parser("show")
    p_show.add_argument("name")
    p_show.add_argument("--genus", type=int, default=1)
    p_export = gsub.add_parser("export")
    p_export.add_argument("name")
    p_export.add_argument("out_path")
    p_export.add_argument("--genus", type=int, default=1)

    p_verify = sub.add_parser("verify", help="verify a classification by homology")
    p_verify.add_argument("path")
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    p_verify.add_argument("--max-simplices", type=int, default=200000)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "gallery":
            return cmd_gallery(args)
        if args.command == "verify":
            return cmd_verify(args)
        return 3
    except ValidationFailure as exc:
        print(f"validation failed: {exc.report.first_failed()}", file=sys.stderr)
        return 1
    except (SpecError, gallery.GalleryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, gallery.GalleryError) else 3
    except Exception as exc:  # pragma: no cover
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
