"""Command-line front end: validate, analyze, extend, reduce, tensor and the catalog.

Exit codes: 0 clean, 1 semantic failure (the report is printed), 2 malformed
input. Reports and documents go to stdout (or ``--out``); logging goes to
stderr.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from flat_qqf import __version__
from flat_qqf import catalog
from flat_qqf.config import get_settings
from flat_qqf.errors import DocumentError, FlatQQFError, HypothesisError, UnknownEntry
from flat_qqf.extensions import (
    central_reduce,
    double_extend,
    planar_extend,
    planar_qqf_extend,
    peel,
    planar_reduce,
    qqf_double_extend,
)
from flat_qqf.liesuper import center, derived, perp, validate_lie
from flat_qqf.models.document_models import (
    AlgebraDocument,
    ExtensionDataDocument,
    FrobeniusDocument,
    PlanarDataDocument,
)
from flat_qqf.report import ValidationReport
from flat_qqf.structures import (
    QQFStructure,
    check_closed,
    check_flat,
    dimension_checks,
    flavor_facts,
    natural_product,
    quadratic_existence,
    validate_qqf,
    validate_quasi_frobenius,
)
from flat_qqf.utils.document_utils import (
    AlgebraBundle,
    bundle_from_document,
    document_from_reduction,
    document_from_structure,
    dump_document,
    extension_data_from_document,
    load_document,
    parse_model,
    planar_data_from_document,
    read_json,
)

logger = logging.getLogger(__name__)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _print_report(report: ValidationReport) -> None:
    for line in report.lines():
        print(line)


def _load_bundle(path: str) -> AlgebraBundle:
    return bundle_from_document(load_document(AlgebraDocument, path), path)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args.file)
    reports = [validate_lie(bundle.alg)]
    for name, form in bundle.forms.items():
        reports.append(form.validate(name))
    report = ValidationReport.combine(bundle.alg.name, reports)
    _print_report(report)
    return 0 if report.ok else 1


def _quadratic_line(label: str, verdict) -> str:
    if verdict.verdict == "yes":
        return f"quadratic structure ({label} rho): yes, {verdict.dimension}-parameter family"
    return f"quadratic structure ({label} rho): {verdict.verdict} ({verdict.witness})"


def cmd_analyze(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args.file)
    alg = bundle.alg
    qf = bundle.quasi_frobenius()
    space = alg.space
    print(f"algebra {alg.name}: dimension {space.even_dim}|{space.odd_dim}, omega {qf.flavor}")
    base = validate_quasi_frobenius(qf)
    if not base.ok:
        _print_report(base)
        return 1
    z, d = center(alg), derived(alg)
    print(f"center: {z}")
    print(f"derived: {d}")
    print(f"perp(derived, omega): {perp(d, qf.omega)}")
    print(f"closed: {'yes' if check_closed(alg, qf.omega).ok else 'no'}")
    star = natural_product(alg, qf)
    print("natural product:")
    labels = space.labels
    for i in range(space.dim):
        for j in range(space.dim):
            value = star.entry(i, j)
            if not value.is_zero():
                print(f"  {labels[i]} * {labels[j]} = {value}")
    flat = check_flat(star, alg)
    print("flat: yes" if flat else f"flat: no, {flat.detail}")
    for parity, label in ((0, "even"), (1, "odd")):
        print(_quadratic_line(label, quadratic_existence(alg, qf, parity)))
    if bundle.rho or bundle.quadratic:
        qqf = bundle.qqf()
        dims = dimension_checks(qqf)
        print(f"dimension checks: {'ok' if dims.ok else 'failed'}")
        report = validate_qqf(qqf)
        _print_report(report)
        return 0 if report.ok else 1
    facts = flavor_facts(space, qf.omega)
    print(f"dimension checks: {'ok' if facts.ok else 'failed'}")
    for failure in facts.failures:
        print(failure.line())
    return 0


def cmd_extend(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args.file)
    raw = read_json(args.data)
    qqf = bool(bundle.rho or bundle.quadratic)
    if "flavor" in raw:
        document = parse_model(PlanarDataDocument, raw, args.data)
        data = planar_data_from_document(document, bundle.space, args.data)
        if qqf:
            result = planar_qqf_extend(document.flavor, bundle.qqf(), data, args.name)
        else:
            result = planar_extend(document.flavor, bundle.quasi_frobenius(), data, args.name)
    else:
        document = parse_model(ExtensionDataDocument, raw, args.data)
        kind = args.kind or document.kind
        data = extension_data_from_document(document, bundle.space, args.data)
        if qqf:
            result = qqf_double_extend(kind, bundle.qqf(), data, args.name)
        else:
            result = double_extend(kind, bundle.quasi_frobenius(), data, args.name)
    _emit(dump_document(document_from_structure(result)), args.out)
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args.file)
    qqf = bundle.qqf()
    result = planar_reduce(qqf) if qqf.rho.parity == 1 else central_reduce(qqf)
    _emit(dump_document(document_from_reduction(result)), args.out)
    if not result.report.ok:
        for line in result.report.lines():
            logger.error(line)
        return 1
    return 0


def cmd_peel(args: argparse.Namespace) -> int:
    qqf = _load_bundle(args.file).qqf()
    chain = peel(qqf)
    ok = True
    for step in chain:
        space = step.base.space
        status = "ok" if step.report.ok else "FAILED"
        print(f"{step.kind}: {step.base.name} dimension {space.even_dim}|{space.odd_dim}, round trip {status}")
        ok = ok and step.report.ok
    print(f"{qqf.name}: {len(chain)} step(s) to zero")
    return 0 if ok else 1


def cmd_tensor(args: argparse.Namespace) -> int:
    h = _load_bundle(args.file).qqf()
    A = catalog.FrobeniusAlgebra.from_document(load_document(FrobeniusDocument, args.algebra), args.algebra)
    result: QQFStructure = catalog.tensor_qqf(h, A, args.name)
    _emit(dump_document(document_from_structure(result)), args.out)
    return 0


def cmd_catalog_list(args: argparse.Namespace) -> int:
    for name in catalog.list_entries():
        print(f"{name}: {catalog.load_entry_document(name).title}")
    return 0


def cmd_catalog_show(args: argparse.Namespace) -> int:
    entry = catalog.get(args.name)
    print(f"{entry.name}: {entry.title}")
    for note in entry.notes:
        print(f"  {note}")
    _print_report(entry.report)
    print(f"certification {entry.certification}")
    return 0 if entry.report.ok else 1


def cmd_catalog_export(args: argparse.Namespace) -> int:
    _emit(dump_document(catalog.export(args.name)), args.out)
    return 0


def cmd_certify(args: argparse.Namespace) -> int:
    report = catalog.certify_all()
    _print_report(report)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flat-qqf", description="Exact computations with flat QQF Lie superalgebras")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("validate", help="Check brackets, Jacobi, homogeneity and form flags")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze", help="Center, products, flatness and quadratic-structure verdicts")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("extend", help="(Planar) double extension of a base document")
    e.add_argument("file")
    e.add_argument("--data", required=True, help="Extension or planar data document")
    e.add_argument("--kind", default=None, help="Override the kind named in the data document")
    e.add_argument("--name", default=None)
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_extend)

    r = sub.add_parser("reduce", help="Central or planar reduction of a QQF document")
    r.add_argument("file")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_reduce)

    pl = sub.add_parser("peel", help="Reduce repeatedly down to the zero algebra")
    pl.add_argument("file")
    pl.set_defaults(func=cmd_peel)

    t = sub.add_parser("tensor", help="Tensor a QQF document with a Frobenius superalgebra")
    t.add_argument("file")
    t.add_argument("algebra")
    t.add_argument("--name", default=None)
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_tensor)

    c = sub.add_parser("catalog", help="Certified example library")
    c_sub = c.add_subparsers(dest="catalog_cmd", required=True)
    cl = c_sub.add_parser("list")
    cl.set_defaults(func=cmd_catalog_list)
    cs = c_sub.add_parser("show")
    cs.add_argument("name")
    cs.set_defaults(func=cmd_catalog_show)
    cx = c_sub.add_parser("export")
    cx.add_argument("name")
    cx.add_argument("--out", default=None)
    cx.set_defaults(func=cmd_catalog_export)

    k = sub.add_parser("certify", help="Rebuild and certify every catalog entry")
    k.set_defaults(func=cmd_certify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (DocumentError, FileNotFoundError, UnknownEntry) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        if exc.report is not None:
            _print_report(exc.report)
        return 1
    except FlatQQFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
