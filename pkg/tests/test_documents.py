import json

import pytest

from flat_qqf import catalog
from flat_qqf.errors import DocumentError
from flat_qqf.extensions import central_reduce
from flat_qqf.models.document_models import AlgebraDocument, CatalogDocument, ReductionDocument
from flat_qqf.utils.document_utils import (
    bundle_from_document,
    dump_document,
    load_document,
    parse_model,
    read_json,
    witness_from_entries,
    document_from_reduction,
)

G2 = {
    "name": "g2",
    "basis": [
        {"name": "y1", "parity": 1},
        {"name": "x1", "parity": 0},
        {"name": "y2", "parity": 1},
        {"name": "x2", "parity": 0},
    ],
    "brackets": [
        {"left": "x1", "right": "y1", "value": {"y2": "1"}},
        {"left": "y1", "right": "y1", "value": {"x2": "1"}},
    ],
    "forms": {
        "omega": {
            "parity": 0,
            "kind": "antisymmetric",
            "values": [["x1", "x2", "2"], ["x2", "x1", "-2"], ["y1", "y2", "1"], ["y2", "y1", "1"]],
        }
    },
    "omega": "omega",
}


def test_basis_is_canonicalised():
    bundle = bundle_from_document(parse_model(AlgebraDocument, G2))
    assert bundle.space.labels == ("x1", "x2", "y1", "y2")
    assert bundle.quasi_frobenius().omega.value("x1", "x2") == 2


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError, match="File not found"):
        read_json(tmp_path / "absent.json")


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(DocumentError):
        read_json(path)


def test_unknown_fields_are_rejected():
    with pytest.raises(DocumentError):
        parse_model(AlgebraDocument, {**G2, "colour": "red"})


def test_malformed_rational_is_rejected():
    broken = json.loads(json.dumps(G2))
    broken["brackets"][0]["value"] = {"y2": "0.5"}
    with pytest.raises(DocumentError):
        parse_model(AlgebraDocument, broken)


def test_role_must_name_a_form():
    with pytest.raises(DocumentError, match="omega names"):
        parse_model(AlgebraDocument, {**G2, "omega": "sigma"})


def test_duplicate_bracket_names_both_pairs():
    broken = json.loads(json.dumps(G2))
    broken["brackets"].append({"left": "y1", "right": "x1", "value": {"y2": "-1"}})
    with pytest.raises(DocumentError, match=r"bracket \[y1, x1\] duplicates \[x1, y1\]"):
        bundle_from_document(parse_model(AlgebraDocument, broken), "g2.json")


def test_duplicate_form_value():
    broken = json.loads(json.dumps(G2))
    broken["forms"]["omega"]["values"].append(["x1", "x2", "2"])
    with pytest.raises(DocumentError, match="twice"):
        bundle_from_document(parse_model(AlgebraDocument, broken))


def test_homogeneity_error_becomes_a_document_error():
    broken = json.loads(json.dumps(G2))
    broken["endos"] = {"rho": {"parity": 0, "entries": [["y1", "x1", "1"]]}}
    with pytest.raises(DocumentError):
        bundle_from_document(parse_model(AlgebraDocument, broken))


def test_no_omega_designated():
    bundle = bundle_from_document(parse_model(AlgebraDocument, {**G2, "omega": None}))
    with pytest.raises(DocumentError):
        bundle.quasi_frobenius()


def test_catalog_document_needs_one_source():
    document = catalog.load_entry_document("g2").model_dump()
    document["base"] = document["algebra"]
    with pytest.raises(DocumentError):
        parse_model(CatalogDocument, document)


def test_dump_is_canonical(tmp_path):
    document = catalog.export("g2")
    text = dump_document(document)
    assert text.endswith("}\n")
    assert text == dump_document(parse_model(AlgebraDocument, json.loads(text)))
    path = tmp_path / "g2.json"
    path.write_text(text, encoding="utf-8")
    assert load_document(AlgebraDocument, path) == document


def test_reduction_document_carries_the_witness():
    result = central_reduce(catalog.get("dim6-1").structure)
    document = document_from_reduction(result)
    assert isinstance(document, ReductionDocument)
    assert document.kind == "even-ortho"
    assert document.extension is not None and document.planar is None
    assert len(document.base.basis) == 4
    witness = witness_from_entries(result.witness.source, result.witness.target, document.witness)
    assert witness == result.witness
