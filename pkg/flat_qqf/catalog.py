"""Certified library of named flat QQF superalgebras, and the tensor construction.

Entries live as JSON documents under ``data/catalog``. An entry either stores
an algebra directly or stores a flat QQF base together with (planar) double
extension data; the second kind is rebuilt through the extension
constructors, which is also how ``build_example`` produces the rescaled
family members.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from flat_qqf.errors import DocumentError, FlatQQFError, HypothesisError, UnknownEntry
from flat_qqf.extensions import (
    central_reduce,
    get_kind,
    planar_qqf_extend,
    planar_reduce,
    qqf_double_extend,
)
from flat_qqf.liesuper import LieSuperalgebra
from flat_qqf.models.document_models import (
    AlgebraDocument,
    CatalogDocument,
    EndoEntry,
    FrobeniusDocument,
)
from flat_qqf.report import Failure, ValidationReport
from flat_qqf.structures import (
    ProductTable,
    QQFStructure,
    QuasiFrobeniusStructure,
    is_flat,
    natural_product,
    quadratic_existence,
    validate_qqf,
    validate_quasi_frobenius,
)
from flat_qqf.superlinalg import BilinearForm, Endomorphism, SuperSpace, SuperVector
from flat_qqf.utils.document_utils import (
    bundle_from_document,
    document_errors,
    document_from_structure,
    extension_data_from_document,
    form_from_entry,
    load_document,
    planar_data_from_document,
    space_from_basis,
    vector_from_table,
)
from flat_qqf.utils.rational_utils import ONE, ZERO, format_rational, koszul, parse_rational, to_rational

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent / "data"
CATALOG_DIR = DATA_DIR / "catalog"
FROBENIUS_DIR = DATA_DIR / "frobenius"

Structure = Union[QQFStructure, QuasiFrobeniusStructure]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    title: str
    structure: Structure
    notes: Tuple[str, ...]
    report: ValidationReport

    @property
    def is_qqf(self) -> bool:
        return isinstance(self.structure, QQFStructure)

    @property
    def facts(self) -> Tuple[str, ...]:
        return self.report.notes

    @property
    def certification(self) -> str:
        return self.report.digest()


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def list_entries() -> List[str]:
    return sorted(path.stem for path in CATALOG_DIR.glob("*.json"))


def load_entry_document(name: str) -> CatalogDocument:
    path = CATALOG_DIR / f"{name}.json"
    if not path.exists():
        raise UnknownEntry(f"Unknown catalog entry {name!r}; known entries: {', '.join(list_entries())}")
    document = load_document(CatalogDocument, path)
    if document.name != name:
        raise DocumentError(f"{path}: document is named {document.name!r}")
    return document


def _scaled(entry: EndoEntry, factor) -> EndoEntry:
    return EndoEntry(
        parity=entry.parity,
        entries=[(t, s, format_rational(parse_rational(v) * factor)) for t, s, v in entry.entries],
    )


def _scaled_lam(lam: Optional[str], factor) -> Optional[str]:
    return None if lam is None else format_rational(parse_rational(lam) * factor)


def _scaled_base(base: AlgebraDocument, lam) -> AlgebraDocument:
    if base.rho is None:
        return base
    endos = dict(base.endos)
    endos[base.rho] = _scaled(endos[base.rho], lam)
    return base.model_copy(update={"endos": endos})


def _build_recipe(document: CatalogDocument, a, lam) -> QQFStructure:
    """Rebuild a recipe entry with xi scaled by ``a`` and rho_b, lambda scaled by ``lam``."""
    source = f"catalog entry {document.name}"
    base = bundle_from_document(_scaled_base(document.base, lam), source).qqf()
    if document.extension is not None:
        recipe = document.extension
        with document_errors(source):
            kind = get_kind(recipe.kind, base.omega.parity)
        scaled = recipe.model_copy(update={"xi": _scaled(recipe.xi, a), "lam": _scaled_lam(recipe.lam, lam)})
        data = extension_data_from_document(scaled, base.space, source)
        return qqf_double_extend(kind, base, data, document.name)
    recipe = document.planar
    scaled = recipe.model_copy(
        update={"xi0": _scaled(recipe.xi0, a), "xi1": _scaled(recipe.xi1, a), "lam": _scaled_lam(recipe.lam, lam)}
    )
    data = planar_data_from_document(scaled, base.space, source)
    return planar_qqf_extend(recipe.flavor, base, data, document.name)


def build_example(name: str, a=1, lam=1) -> QQFStructure:
    """A member of a stored extension family at rational parameters a, lambda (both nonzero)."""
    a, lam = to_rational(a), to_rational(lam)
    if a == 0 or lam == 0:
        raise ValueError("a and lambda must be nonzero")
    document = load_entry_document(name)
    if document.algebra is not None:
        raise UnknownEntry(f"{name} is stored as an algebra, not as an extension family")
    return _build_recipe(document, a, lam)


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------


def _reduction_facts(qqf: QQFStructure, steps: int) -> ValidationReport:
    """One reduction step must land on an abelian base of the expected size."""
    subject = f"{qqf.name}: reduction"
    try:
        result = planar_reduce(qqf) if qqf.rho.parity == 1 else central_reduce(qqf)
    except FlatQQFError as exc:
        return ValidationReport(subject, (Failure("reduction", (), str(exc).splitlines()[0]),))
    base = result.base
    failures = list(result.report.failures)
    if base.space.dim != qqf.space.dim - steps:
        failures.append(Failure("reduction-dimension", (), f"base has dimension {base.space.dim}"))
    if not base.alg.is_abelian():
        failures.append(Failure("reduction-abelian", (), f"{base.name} is not abelian"))
    note = f"reduces by {result.kind} to an abelian base of dimension {base.space.dim}"
    return ValidationReport(subject, tuple(failures), (note,))


def _quasi_frobenius_facts(document: CatalogDocument, qf: QuasiFrobeniusStructure) -> ValidationReport:
    subject = f"{qf.alg.name}: claims"
    failures, notes = [], []
    flat = is_flat(qf)
    notes.append("flat: yes" if flat else f"flat: no, {flat.detail}")
    if bool(flat) != document.flat:
        failures.append(Failure("claim-flat", flat.witness, f"entry claims flat = {document.flat}"))
    if document.admits_quadratic is not None:
        for parity in (0, 1):
            existence = quadratic_existence(qf.alg, qf, parity)
            label = "odd" if parity else "even"
            detail = f" ({existence.witness})" if existence.witness else ""
            notes.append(f"quadratic structure ({label} rho): {existence.verdict}{detail}")
            if existence.verdict == "inconclusive" or (existence.verdict == "yes") != document.admits_quadratic:
                failures.append(Failure("claim-quadratic", (label,), f"verdict {existence.verdict}"))
    return ValidationReport(subject, tuple(failures), tuple(notes))


def entry_from_document(document: CatalogDocument) -> CatalogEntry:
    """Build an entry and run its full suite; failures are kept in the report, not raised."""
    subject = f"catalog {document.name}"
    if document.algebra is None:
        structure: Structure = _build_recipe(document, ONE, ONE)
        steps = 2 if document.extension is not None else 4
        reports = [validate_qqf(structure), _reduction_facts(structure, steps)]
    else:
        bundle = bundle_from_document(document.algebra, subject)
        if bundle.rho or bundle.quadratic:
            structure = bundle.qqf()
            reports = [validate_qqf(structure)]
            if not document.flat:
                reports.append(ValidationReport(subject, (Failure("claim-flat", (), "a QQF entry is always flat"),)))
        else:
            structure = bundle.quasi_frobenius()
            reports = [validate_quasi_frobenius(structure)]
            if reports[0].ok:
                reports.append(_quasi_frobenius_facts(document, structure))
    report = ValidationReport.combine(subject, reports)
    logger.debug(f"catalog {document.name}: {'certified' if report.ok else f'{len(report.failures)} failure(s)'}")
    return CatalogEntry(document.name, document.title, structure, tuple(document.notes), report)


def build_entry(name: str) -> CatalogEntry:
    return entry_from_document(load_entry_document(name))


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    return build_entry(name)


def export(name: str) -> AlgebraDocument:
    entry = get(name)
    return document_from_structure(entry.structure, entry.notes)


def certify_all() -> ValidationReport:
    """Rebuild every entry from its document and run its suite, one entry after another."""
    reports = []
    for name in list_entries():
        try:
            reports.append(build_entry(name).report)
        except FlatQQFError as exc:
            reports.append(ValidationReport(f"catalog {name}", (Failure("build", (name,), str(exc).splitlines()[0]),)))
    combined = ValidationReport.combine("catalog", reports)
    logger.info(f"certify_all: {len(reports)} entries, {len(combined.failures)} failure(s)")
    return combined


# ---------------------------------------------------------------------------
# Frobenius superalgebras and the tensor construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrobeniusAlgebra:
    """Associative supercommutative algebra with an even symmetric invariant nondegenerate form."""
    table: ProductTable
    form: BilinearForm
    name: str = "A"

    @property
    def space(self) -> SuperSpace:
        return self.table.space

    def product(self, a: SuperVector, b: SuperVector) -> SuperVector:
        return self.table.product(a, b)

    @classmethod
    def from_document(cls, document: FrobeniusDocument, source: str = "frobenius document") -> "FrobeniusAlgebra":
        with document_errors(source):
            space = space_from_basis(document.basis)
            n = space.dim
            rows = [[(ZERO,) * n for _ in range(n)] for _ in range(n)]
            seen = set()
            for entry in document.products:
                i, j = space.index(entry.left), space.index(entry.right)
                if (i, j) in seen:
                    raise DocumentError(f"{source}: product {entry.left} * {entry.right} is given twice")
                seen.add((i, j))
                rows[i][j] = vector_from_table(space, entry.value).coefficients
            form = form_from_entry(space, document.form)
        return cls(ProductTable(space, tuple(tuple(r) for r in rows)), form, document.name)


def get_frobenius(name: str) -> FrobeniusAlgebra:
    path = FROBENIUS_DIR / f"{name}.json"
    if not path.exists():
        known = ", ".join(sorted(p.stem for p in FROBENIUS_DIR.glob("*.json")))
        raise UnknownEntry(f"Unknown Frobenius algebra {name!r}; known: {known}")
    return FrobeniusAlgebra.from_document(load_document(FrobeniusDocument, path), str(path))


def validate_frobenius(A: FrobeniusAlgebra) -> ValidationReport:
    space, form = A.space, A.form
    basis = space.basis()
    labels = space.labels
    failures = list(A.table.parity_failures())
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            ab = A.product(a, b)
            if ab != A.product(b, a) * koszul(a.parity, b.parity):
                failures.append(Failure("supercommutative", (labels[i], labels[j])))
            for k, c in enumerate(basis):
                triple = (labels[i], labels[j], labels[k])
                if A.product(ab, c) != A.product(a, A.product(b, c)):
                    failures.append(Failure("associative", triple))
                if form(ab, c) != form(a, A.product(b, c)):
                    failures.append(Failure("frobenius-invariant", triple))
    failures.extend(form.validate("Omega").failures)
    if form.parity != 0:
        failures.append(Failure("frobenius-form-parity", (), "Omega must be even"))
    if form.symmetry != "symmetric":
        failures.append(Failure("frobenius-form-flag", (), f"Omega is flagged {form.symmetry}"))
    if not form.is_nondegenerate():
        failures.append(Failure("frobenius-nondegenerate", (), "Omega is degenerate"))
    return ValidationReport(f"{A.name}: Frobenius superalgebra", tuple(failures))


class _TensorSpace:
    """Basis u_i (x) a_k of h (x) A, labelled "u.a" and reordered evens first."""

    def __init__(self, h: SuperSpace, A: SuperSpace):
        self.h, self.A = h, A
        items = [
            (f"{u}.{a}", (p + q) % 2)
            for u, p in zip(h.labels, h.parities)
            for a, q in zip(A.labels, A.parities)
        ]
        self.space, perm = SuperSpace.from_basis(items)
        self.factors = [divmod(old, A.dim) for old in perm]
        self._position = {old: new for new, old in enumerate(perm)}

    def pure(self, i: int, k: int) -> SuperVector:
        return self.space.basis_vector(self._position[i * self.A.dim + k])

    def tensor(self, u: SuperVector, a: SuperVector) -> SuperVector:
        total = self.space.zero()
        for i, x in enumerate(u.coefficients):
            if x == 0:
                continue
            for k, y in enumerate(a.coefficients):
                if y != 0:
                    total = total + self.pure(i, k) * (x * y)
        return total


def _tensor_form(ts: _TensorSpace, B: BilinearForm, Omega: BilinearForm, symmetry: str) -> BilinearForm:
    """(u (x) a, v (x) b) -> (-1)^{|a||v|} B(u, v) Omega(a, b)."""
    hp, ap = ts.h.parities, ts.A.parities
    rows = [
        [koszul(ap[k], hp[j]) * B.values[i][j] * Omega.values[k][l] for j, l in ts.factors]
        for i, k in ts.factors
    ]
    return BilinearForm(ts.space, tuple(tuple(r) for r in rows), B.parity, symmetry)


def _factorisation_failures(ts: _TensorSpace, g: QQFStructure, h: QQFStructure, A: FrobeniusAlgebra) -> List[Failure]:
    """(u (x) a) * (v (x) b) = (-1)^{|a||v|} (u * v) (x) (a . b) on basis pairs."""
    star_g = natural_product(g.alg, g.qf)
    star_h = natural_product(h.alg, h.qf)
    hp, ap = ts.h.parities, ts.A.parities
    labels = ts.space.labels
    failures = []
    for x, (i, k) in enumerate(ts.factors):
        for y, (j, l) in enumerate(ts.factors):
            expected = ts.tensor(star_h.entry(i, j), A.table.entry(k, l)) * koszul(ap[k], hp[j])
            if star_g.entry(x, y) != expected:
                failures.append(Failure("tensor-product-factorisation", (labels[x], labels[y])))
    return failures


def tensor_qqf(h: QQFStructure, A: FrobeniusAlgebra, name: Optional[str] = None) -> QQFStructure:
    """The flat QQF structure on h (x) A with bracket (-1)^{|a||v|} [u, v] (x) a.b and omega, B, rho transported."""
    frobenius = validate_frobenius(A)
    if not frobenius.ok:
        raise HypothesisError(f"{A.name} is not a Frobenius superalgebra", frobenius)
    base = validate_qqf(h)
    if not base.ok:
        raise HypothesisError(f"{h.name} is not a flat QQF-superalgebra", base)
    ts = _TensorSpace(h.space, A.space)
    hp, ap = h.space.parities, A.space.parities
    entries = []
    for x, y in itertools.combinations_with_replacement(range(ts.space.dim), 2):
        (i, k), (j, l) = ts.factors[x], ts.factors[y]
        value = ts.tensor(h.alg.structure_vector(i, j), A.table.entry(k, l)) * koszul(ap[k], hp[j])
        entries.append((ts.space.labels[x], ts.space.labels[y], value))
    name = name or f"{h.name}.{A.name}"
    alg = LieSuperalgebra.from_brackets(ts.space, entries, name)
    omega = _tensor_form(ts, h.omega, A.form, "antisymmetric")
    images: Dict[str, SuperVector] = {
        ts.space.labels[x]: ts.tensor(h.rho(h.space.basis_vector(i)), A.space.basis_vector(k))
        for x, (i, k) in enumerate(ts.factors)
    }
    rho = Endomorphism.from_images(ts.space, images, h.rho.parity)
    g = QQFStructure.from_rho(alg, omega, rho, name)
    report = validate_qqf(g)
    failures = list(report.failures)
    b_form = _tensor_form(ts, h.b_form, A.form, "symmetric")
    if b_form.values != g.b_form.values:
        failures.append(Failure("tensor-b-form", (), "B from rho differs from the transported B"))
    if report.ok:
        failures += _factorisation_failures(ts, g, h, A)
    if failures:
        raise HypothesisError(f"{name} fails its postconditions", ValidationReport(f"{name}: tensor", tuple(failures)))
    logger.info(f"tensor_qqf: {h.name} (x) {A.name} -> {name} (dim {ts.space.dim})")
    return g
