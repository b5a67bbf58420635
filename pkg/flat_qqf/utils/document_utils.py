"""Reading, writing and converting the JSON documents the CLI and catalog exchange."""
import json
import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from flat_qqf.errors import DocumentError, FlatQQFError
from flat_qqf.extensions import ExtensionData, PlanarExtensionData, ReductionResult
from flat_qqf.liesuper import LieSuperalgebra
from flat_qqf.models.document_models import (
    AlgebraDocument,
    BasisEntry,
    BracketEntry,
    EndoEntry,
    ExtensionDataDocument,
    FormEntry,
    PlanarDataDocument,
    ReductionDocument,
)
from flat_qqf.structures import QQFStructure, QuasiFrobeniusStructure
from flat_qqf.superlinalg import BilinearForm, Endomorphism, LinearMap, SuperSpace, SuperVector
from flat_qqf.utils.rational_utils import ZERO, format_rational, parse_rational

logger = logging.getLogger(__name__)

Model = TypeVar("Model", bound=BaseModel)


def read_json(path: Union[str, Path]) -> dict:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc


def parse_model(model: Type[Model], data: dict, source: str = "document") -> Model:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors())
        raise DocumentError(f"{source}: {problems}") from exc


def load_document(model: Type[Model], path: Union[str, Path]) -> Model:
    document = parse_model(model, read_json(path), str(path))
    logger.debug(f"Loaded {model.__name__} from {path}")
    return document


def dump_document(document: BaseModel) -> str:
    """Canonical text: field order of the model, two-space indent, trailing newline."""
    data = document.model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Documents -> objects
# ---------------------------------------------------------------------------


@contextmanager
def document_errors(source: str) -> Iterator[None]:
    """Library errors raised while converting a parsed document become DocumentError."""
    try:
        yield
    except DocumentError:
        raise
    except (FlatQQFError, ValueError) as exc:
        raise DocumentError(f"{source}: {exc}") from exc


def space_from_basis(basis: List[BasisEntry]) -> SuperSpace:
    space, _ = SuperSpace.from_basis((entry.name, entry.parity) for entry in basis)
    return space


def vector_from_table(space: SuperSpace, table: Optional[Dict[str, str]]) -> SuperVector:
    if not table:
        return space.zero()
    return space.vector({label: parse_rational(value) for label, value in table.items()})


def endo_from_entry(space: SuperSpace, entry: EndoEntry) -> Endomorphism:
    return Endomorphism.from_units(space, [(t, s, parse_rational(v)) for t, s, v in entry.entries], entry.parity)


def form_from_entry(space: SuperSpace, entry: FormEntry) -> BilinearForm:
    values = [(left, right, parse_rational(v)) for left, right, v in entry.values]
    return BilinearForm.from_entries(space, values, entry.parity, entry.kind)


def _bracket_entries(space: SuperSpace, brackets: List[BracketEntry], source: str) -> List[Tuple[str, str, SuperVector]]:
    seen: Dict[Tuple[int, int], Tuple[str, str]] = {}
    entries = []
    for bracket in brackets:
        i, j = sorted((space.index(bracket.left), space.index(bracket.right)))
        if (i, j) in seen:
            first = seen[(i, j)]
            raise DocumentError(
                f"{source}: bracket [{bracket.left}, {bracket.right}] duplicates [{first[0]}, {first[1]}]"
            )
        seen[(i, j)] = (bracket.left, bracket.right)
        entries.append((bracket.left, bracket.right, vector_from_table(space, bracket.value)))
    return entries


def _form_entries_unique(name: str, entry: FormEntry, source: str) -> None:
    seen = set()
    for left, right, _ in entry.values:
        if (left, right) in seen:
            raise DocumentError(f"{source}: form {name!r} gives ({left}, {right}) twice")
        seen.add((left, right))


@dataclass(frozen=True)
class AlgebraBundle:
    """An algebra with the forms and endomorphisms a document attaches to it."""
    alg: LieSuperalgebra
    forms: Dict[str, BilinearForm] = field(default_factory=dict)
    endos: Dict[str, Endomorphism] = field(default_factory=dict)
    omega: Optional[str] = None
    quadratic: Optional[str] = None
    rho: Optional[str] = None
    notes: Tuple[str, ...] = ()

    @property
    def space(self) -> SuperSpace:
        return self.alg.space

    def omega_form(self) -> Optional[BilinearForm]:
        return self.forms.get(self.omega) if self.omega else None

    def quasi_frobenius(self) -> QuasiFrobeniusStructure:
        omega = self.omega_form()
        if omega is None:
            raise DocumentError(f"{self.alg.name}: the document designates no omega")
        return QuasiFrobeniusStructure(self.alg, omega)

    def qqf(self) -> QQFStructure:
        """The QQF structure from omega with rho, or with the quadratic form when no rho is named."""
        omega = self.omega_form()
        if omega is None:
            raise DocumentError(f"{self.alg.name}: the document designates no omega")
        if self.rho:
            return QQFStructure.from_rho(self.alg, omega, self.endos[self.rho], self.alg.name)
        if self.quadratic:
            return QQFStructure.from_forms(self.alg, omega, self.forms[self.quadratic], self.alg.name)
        raise DocumentError(f"{self.alg.name}: the document designates neither rho nor a quadratic form")


def bundle_from_document(document: AlgebraDocument, source: str = "document") -> AlgebraBundle:
    with document_errors(source):
        space = space_from_basis(document.basis)
        alg = LieSuperalgebra.from_brackets(space, _bracket_entries(space, document.brackets, source), document.name)
        forms = {}
        for name, entry in document.forms.items():
            _form_entries_unique(name, entry, source)
            forms[name] = form_from_entry(space, entry)
        endos = {name: endo_from_entry(space, entry) for name, entry in document.endos.items()}
    return AlgebraBundle(alg, forms, endos, document.omega, document.quadratic, document.rho, tuple(document.notes))


def extension_data_from_document(document: ExtensionDataDocument, space: SuperSpace, source: str = "data") -> ExtensionData:
    with document_errors(source):
        return ExtensionData(
            endo_from_entry(space, document.xi),
            vector_from_table(space, document.b0),
            vector_from_table(space, document.a) if document.a is not None else None,
            parse_rational(document.lam) if document.lam is not None else None,
            parse_rational(document.t),
        )


def planar_data_from_document(document: PlanarDataDocument, space: SuperSpace, source: str = "data") -> PlanarExtensionData:
    with document_errors(source):
        return PlanarExtensionData(
            document.flavor,
            endo_from_entry(space, document.xi0),
            endo_from_entry(space, document.xi1),
            vector_from_table(space, document.b0),
            vector_from_table(space, document.b1),
            vector_from_table(space, document.c0),
            vector_from_table(space, document.c1),
            parse_rational(document.T),
            vector_from_table(space, document.a0) if document.a0 is not None else None,
            vector_from_table(space, document.a1) if document.a1 is not None else None,
            parse_rational(document.lam) if document.lam is not None else None,
            parse_rational(document.t),
        )


# ---------------------------------------------------------------------------
# Objects -> documents
# ---------------------------------------------------------------------------


def basis_entries(space: SuperSpace) -> List[BasisEntry]:
    return [BasisEntry(name=label, parity=parity) for label, parity in zip(space.labels, space.parities)]


def table_from_vector(v: SuperVector) -> Dict[str, str]:
    return {label: format_rational(c) for label, c in zip(v.space.labels, v.coefficients) if c != 0}


def entry_from_endo(f: Endomorphism) -> EndoEntry:
    return EndoEntry(parity=f.parity, entries=[(t, s, format_rational(x)) for t, s, x in f.as_entries()])


def entry_from_form(B: BilinearForm) -> FormEntry:
    kind = B.symmetry if B.symmetry in ("symmetric", "antisymmetric") else "antisymmetric"
    return FormEntry(parity=B.parity, kind=kind, values=[(l, r, format_rational(x)) for l, r, x in B.entries()])


def document_from_algebra(
    alg: LieSuperalgebra,
    forms: Optional[Dict[str, BilinearForm]] = None,
    endos: Optional[Dict[str, Endomorphism]] = None,
    omega: Optional[str] = None,
    quadratic: Optional[str] = None,
    rho: Optional[str] = None,
    notes: Tuple[str, ...] = (),
) -> AlgebraDocument:
    brackets = [
        BracketEntry(left=left, right=right, value=table_from_vector(value))
        for left, right, value in alg.bracket_entries()
    ]
    return AlgebraDocument(
        name=alg.name,
        basis=basis_entries(alg.space),
        brackets=brackets,
        forms={name: entry_from_form(B) for name, B in (forms or {}).items()},
        endos={name: entry_from_endo(f) for name, f in (endos or {}).items()},
        omega=omega,
        quadratic=quadratic,
        rho=rho,
        notes=list(notes),
    )


def document_from_structure(structure: Union[QQFStructure, QuasiFrobeniusStructure], notes: Tuple[str, ...] = ()) -> AlgebraDocument:
    """omega always; for a QQF structure also B, rho and delta."""
    if isinstance(structure, QQFStructure):
        alg = LieSuperalgebra(structure.alg.space, structure.alg.brackets, structure.name)
        return document_from_algebra(
            alg,
            {"omega": structure.omega, "B": structure.b_form},
            {"rho": structure.rho, "delta": structure.delta},
            omega="omega",
            quadratic="B",
            rho="rho",
            notes=notes,
        )
    return document_from_algebra(structure.alg, {"omega": structure.omega}, omega="omega", notes=notes)


def document_from_extension_data(kind: str, data: ExtensionData) -> ExtensionDataDocument:
    return ExtensionDataDocument(
        kind=kind,
        xi=entry_from_endo(data.xi),
        b0=table_from_vector(data.b0),
        a=table_from_vector(data.a) if data.a is not None else None,
        lam=format_rational(data.lam) if data.lam is not None else None,
        t=format_rational(data.t),
    )


def document_from_planar_data(data: PlanarExtensionData) -> PlanarDataDocument:
    return PlanarDataDocument(
        flavor=data.flavor,
        xi0=entry_from_endo(data.xi0),
        xi1=entry_from_endo(data.xi1),
        b0=table_from_vector(data.b0),
        b1=table_from_vector(data.b1),
        c0=table_from_vector(data.c0),
        c1=table_from_vector(data.c1),
        T=format_rational(data.T),
        a0=table_from_vector(data.a0) if data.a0 is not None else None,
        a1=table_from_vector(data.a1) if data.a1 is not None else None,
        lam=format_rational(data.lam) if data.lam is not None else None,
        t=format_rational(data.t),
    )


def witness_entries(witness: LinearMap) -> List[Tuple[str, str, str]]:
    targets, sources = witness.target.labels, witness.source.labels
    return [
        (targets[i], sources[j], format_rational(x))
        for i, row in enumerate(witness.matrix)
        for j, x in enumerate(row)
        if x != 0
    ]


def witness_from_entries(source: SuperSpace, target: SuperSpace, entries: List[Tuple[str, str, str]]) -> LinearMap:
    rows = [[ZERO] * source.dim for _ in range(target.dim)]
    with document_errors("witness"):
        for t, s, value in entries:
            rows[target.index(t)][source.index(s)] = parse_rational(value)
    return LinearMap(source, target, tuple(tuple(r) for r in rows))


def document_from_reduction(result: ReductionResult) -> ReductionDocument:
    data = result.data
    planar = isinstance(data, PlanarExtensionData)
    return ReductionDocument(
        kind=result.kind,
        base=document_from_structure(result.base),
        extension=None if planar else document_from_extension_data(result.kind, data),
        planar=document_from_planar_data(data) if planar else None,
        witness=witness_entries(result.witness),
    )
