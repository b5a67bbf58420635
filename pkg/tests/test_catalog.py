import pytest
from sympy import Rational

from flat_qqf import catalog
from flat_qqf.errors import HypothesisError, UnknownEntry
from flat_qqf.liesuper import check_isomorphism, form_pullback_failures, intertwining_failures
from flat_qqf.models.document_models import BasisEntry, BracketEntry, FormEntry, FrobeniusDocument
from flat_qqf.structures import QQFStructure, validate_qqf
from flat_qqf.superlinalg import LinearMap
from flat_qqf.utils.document_utils import bundle_from_document

ENTRIES = ["K+h3", "aff1", "dim6-1", "dim6-2", "dim6-3", "dim6-4", "dim8", "g2", "g3", "g4"]


def test_list_entries():
    assert catalog.list_entries() == ENTRIES


@pytest.mark.parametrize("name", ENTRIES)
def test_every_entry_is_certified(name):
    entry = catalog.get(name)
    assert entry.report.ok, entry.report.lines()
    assert len(entry.certification) == 64


def test_certify_all_is_clean_and_stable():
    first = catalog.certify_all()
    assert first.ok, first.lines()
    assert catalog.certify_all().digest() == first.digest()


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        catalog.get("g7")


def test_entry_kinds():
    assert catalog.get("g2").is_qqf
    assert catalog.get("dim8").is_qqf
    assert not catalog.get("g3").is_qqf
    assert not catalog.get("aff1").is_qqf


def test_negative_entries_record_their_facts():
    facts = catalog.get("g3").facts
    assert "flat: yes" in facts
    assert any(f.startswith("quadratic structure (even rho): no") for f in facts)
    aff1 = catalog.get("aff1").facts
    assert any(f.startswith("flat: no") for f in aff1)


def test_recipe_entries_note_their_reduction():
    assert "reduces by even-ortho to an abelian base of dimension 4" in catalog.get("dim6-1").facts
    assert "reduces by planar-periplectic to an abelian base of dimension 4" in catalog.get("dim8").facts


@pytest.mark.parametrize("a, lam", [(1, 1), (2, -1), (Rational(1, 2), 2), (-1, Rational(1, 2))])
def test_dim8_family(a, lam):
    qqf = catalog.build_example("dim8", a, lam)
    assert validate_qqf(qqf).ok
    assert qqf.space.dim == 8


@pytest.mark.parametrize("name", ["dim6-1", "dim6-2", "dim6-3", "dim6-4"])
def test_dim6_family(name):
    qqf = catalog.build_example(name, -2, 3)
    assert validate_qqf(qqf).ok


def test_build_example_arguments():
    with pytest.raises(ValueError):
        catalog.build_example("dim6-1", 0, 1)
    with pytest.raises(UnknownEntry):
        catalog.build_example("g2")


def test_frobenius_algebras_validate():
    for name in ("K", "dual"):
        assert catalog.validate_frobenius(catalog.get_frobenius(name)).ok


def test_tensor_with_dual_numbers(g2):
    result = catalog.tensor_qqf(g2, catalog.get_frobenius("dual"))
    assert result.space.dim == 8
    assert result.name == "g2.dual"
    assert validate_qqf(result).ok


def test_tensor_with_the_ground_field(g2):
    result = catalog.tensor_qqf(g2, catalog.get_frobenius("K"))
    assert result.space.labels == tuple(f"{label}.1" for label in g2.space.labels)
    phi = LinearMap.from_images(g2.space, result.space, result.space.basis())
    assert check_isomorphism(phi, g2.alg, result.alg).ok
    assert form_pullback_failures(phi, g2.omega, result.omega, "omega") == []
    assert intertwining_failures(phi, g2.rho, result.rho, "rho") == []


def test_tensor_refuses_a_degenerate_algebra(g2):
    grassmann = FrobeniusDocument(
        name="grassmann",
        basis=[BasisEntry(name="1", parity=0), BasisEntry(name="t", parity=1)],
        products=[
            BracketEntry(left="1", right="1", value={"1": "1"}),
            BracketEntry(left="1", right="t", value={"t": "1"}),
            BracketEntry(left="t", right="1", value={"t": "1"}),
        ],
        form=FormEntry(parity=0, kind="symmetric", values=[("1", "1", "1")]),
    )
    A = catalog.FrobeniusAlgebra.from_document(grassmann)
    assert catalog.validate_frobenius(A).has_failure("frobenius-nondegenerate")
    with pytest.raises(HypothesisError):
        catalog.tensor_qqf(g2, A)


def test_export_rebuilds_the_same_structure():
    for name in ("g2", "dim6-3", "dim8"):
        original = catalog.get(name).structure
        rebuilt = bundle_from_document(catalog.export(name)).qqf()
        assert isinstance(rebuilt, QQFStructure)
        assert rebuilt.alg.brackets == original.alg.brackets
        assert rebuilt.omega.values == original.omega.values
        assert rebuilt.rho == original.rho
