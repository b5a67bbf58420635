from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from flat_qqf.utils.rational_utils import parse_rational

RationalText = str
VectorTable = Dict[str, RationalText]
Triple = Tuple[str, str, RationalText]


def _check_rational(value: str) -> str:
    parse_rational(value)
    return value


def _check_table(table: Dict[str, str]) -> Dict[str, str]:
    for value in table.values():
        parse_rational(value)
    return table


def _check_triples(triples: List[Tuple[str, str, str]]) -> List[Tuple[str, str, str]]:
    for _, _, value in triples:
        parse_rational(value)
    return triples


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class BasisEntry(StrictModel):
    name: str
    parity: Literal[0, 1]


class BracketEntry(StrictModel):
    left: str
    right: str
    value: VectorTable

    @field_validator("value")
    @classmethod
    def rational_values(cls, value):
        return _check_table(value)


class FormEntry(StrictModel):
    parity: Literal[0, 1]
    kind: Literal["symmetric", "antisymmetric"]
    values: List[Triple]

    @field_validator("values")
    @classmethod
    def rational_values(cls, value):
        return _check_triples(value)


class EndoEntry(StrictModel):
    parity: Literal[0, 1]
    entries: List[Triple] = []

    @field_validator("entries")
    @classmethod
    def rational_entries(cls, value):
        return _check_triples(value)


class AlgebraDocument(StrictModel):
    """A Lie superalgebra with named forms and endomorphisms; ``omega``/``quadratic``/``rho`` pick the roles."""
    name: str
    basis: List[BasisEntry]
    brackets: List[BracketEntry] = []
    forms: Dict[str, FormEntry] = {}
    endos: Dict[str, EndoEntry] = {}
    omega: Optional[str] = None
    quadratic: Optional[str] = None
    rho: Optional[str] = None
    notes: List[str] = []

    @model_validator(mode="after")
    def roles_exist(self) -> "AlgebraDocument":
        for role, table in (("omega", self.forms), ("quadratic", self.forms), ("rho", self.endos)):
            key = getattr(self, role)
            if key is not None and key not in table:
                raise ValueError(f"{role} names {key!r}, which is not defined")
        return self


class ExtensionDataDocument(StrictModel):
    kind: str
    xi: EndoEntry
    b0: VectorTable = {}
    a: Optional[VectorTable] = None
    lam: Optional[RationalText] = None
    t: RationalText = "0"

    @field_validator("b0")
    @classmethod
    def rational_table(cls, value):
        return _check_table(value)

    @field_validator("t")
    @classmethod
    def rational_scalar(cls, value):
        return _check_rational(value)

    @field_validator("a")
    @classmethod
    def optional_table(cls, value):
        return None if value is None else _check_table(value)

    @field_validator("lam")
    @classmethod
    def optional_scalar(cls, value):
        return None if value is None else _check_rational(value)


class PlanarDataDocument(StrictModel):
    flavor: Literal["orthosymplectic", "periplectic"]
    xi0: EndoEntry
    xi1: EndoEntry
    b0: VectorTable = {}
    b1: VectorTable = {}
    c0: VectorTable = {}
    c1: VectorTable = {}
    T: RationalText = "0"
    a0: Optional[VectorTable] = None
    a1: Optional[VectorTable] = None
    lam: Optional[RationalText] = None
    t: RationalText = "0"

    @field_validator("b0", "b1", "c0", "c1")
    @classmethod
    def rational_tables(cls, value):
        return _check_table(value)

    @field_validator("T", "t")
    @classmethod
    def rational_scalars(cls, value):
        return _check_rational(value)

    @field_validator("a0", "a1")
    @classmethod
    def optional_table(cls, value):
        return None if value is None else _check_table(value)

    @field_validator("lam")
    @classmethod
    def optional_scalar(cls, value):
        return None if value is None else _check_rational(value)


class FrobeniusDocument(StrictModel):
    """Associative supercommutative algebra with an even symmetric invariant form."""
    name: str
    basis: List[BasisEntry]
    products: List[BracketEntry] = []
    form: FormEntry


class CatalogDocument(StrictModel):
    """A catalog entry: either a stored algebra or a base plus extension data."""
    name: str
    title: str
    notes: List[str] = []
    flat: bool = True
    admits_quadratic: Optional[bool] = None
    algebra: Optional[AlgebraDocument] = None
    base: Optional[AlgebraDocument] = None
    extension: Optional[ExtensionDataDocument] = None
    planar: Optional[PlanarDataDocument] = None

    @model_validator(mode="after")
    def one_source(self) -> "CatalogDocument":
        recipes = [x for x in (self.extension, self.planar) if x is not None]
        if self.algebra is not None and (self.base is not None or recipes):
            raise ValueError("give either an algebra or a base with extension data, not both")
        if self.algebra is None and (self.base is None or len(recipes) != 1):
            raise ValueError("a recipe entry needs a base and exactly one of extension/planar")
        return self


class ReductionDocument(StrictModel):
    """Output of a reduction: the base, the extracted data and the witness (target, source, value)."""
    kind: str
    base: AlgebraDocument
    extension: Optional[ExtensionDataDocument] = None
    planar: Optional[PlanarDataDocument] = None
    witness: List[Triple] = []

    @field_validator("witness")
    @classmethod
    def rational_entries(cls, value):
        return _check_triples(value)
