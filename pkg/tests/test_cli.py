import json

import pytest

from flat_qqf import catalog
from flat_qqf.cli import main

ODD_PLANE = {
    "name": "b",
    "basis": [{"name": "y1", "parity": 1}, {"name": "y2", "parity": 1}],
    "forms": {
        "omega": {"parity": 0, "kind": "antisymmetric", "values": [["y1", "y2", "1"], ["y2", "y1", "1"]]}
    },
    "endos": {"rho": {"parity": 0, "entries": [["y1", "y1", "1"], ["y2", "y2", "-1"]]}},
    "omega": "omega",
    "rho": "rho",
}

BROKEN = {
    "name": "broken",
    "basis": [{"name": "x1", "parity": 0}, {"name": "x2", "parity": 0}, {"name": "x3", "parity": 0}],
    "brackets": [
        {"left": "x1", "right": "x2", "value": {"x3": "1"}},
        {"left": "x1", "right": "x3", "value": {"x1": "1"}},
    ],
}


@pytest.fixture
def exported(tmp_path):
    def export(name):
        path = tmp_path / f"{name}.json"
        assert main(["catalog", "export", name, "--out", str(path)]) == 0
        return str(path)

    return export


def test_validate_clean_document(exported, capsys):
    path = exported("g2")
    capsys.readouterr()
    assert main(["validate", path]) == 0
    assert "report g2: ok" in capsys.readouterr().out


def test_validate_reports_jacobi(write_json, capsys):
    path = write_json("broken.json", BROKEN)
    assert main(["validate", path]) == 1
    assert "FAIL jacobi at (x1, x2, x3)" in capsys.readouterr().out


def test_duplicate_bracket_is_malformed(write_json, capsys):
    document = dict(BROKEN, brackets=BROKEN["brackets"] + [{"left": "x2", "right": "x1", "value": {"x3": "-1"}}])
    path = write_json("dup.json", document)
    assert main(["validate", path]) == 2
    assert "duplicates" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "nowhere.json")]) == 2
    assert "File not found" in capsys.readouterr().err


def test_unknown_command():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_analyze_is_deterministic(exported, capsys):
    path = exported("g2")
    capsys.readouterr()
    assert main(["analyze", path]) == 0
    first = capsys.readouterr().out
    assert main(["analyze", path]) == 0
    assert capsys.readouterr().out == first
    assert first.startswith("algebra g2: dimension 2|2, omega orthosymplectic")
    assert "flat: yes" in first
    assert "quadratic structure (even rho): yes, 2-parameter family" in first


def test_analyze_non_flat(exported, capsys):
    path = exported("aff1")
    capsys.readouterr()
    assert main(["analyze", path]) == 0
    assert "flat: no, K(x1,x2)(x1) = -2/9*x2" in capsys.readouterr().out


def test_extend_odd_plane(write_json, capsys):
    base = write_json("b.json", ODD_PLANE)
    data = write_json(
        "data.json",
        {"kind": "even-ortho", "xi": {"parity": 0, "entries": [["y2", "y1", "1/2"]]}, "lam": "1/2"},
    )
    assert main(["extend", base, "--data", data, "--name", "g2x"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["name"] == "g2x"
    assert [entry["name"] for entry in document["basis"]] == ["d", "e", "y1", "y2"]
    assert document["rho"] == "rho"


def test_extend_refuses_the_wrong_flavor(write_json, capsys):
    base = write_json("b.json", ODD_PLANE)
    data = write_json("data.json", {"kind": "even-ortho", "xi": {"parity": 0}, "lam": "1"})
    assert main(["extend", base, "--data", data, "--kind", "even-peri"]) == 1
    assert "FAIL base-flavor" in capsys.readouterr().out


def test_reduce(exported, tmp_path, capsys):
    path = exported("dim6-1")
    out = tmp_path / "reduced.json"
    assert main(["reduce", path, "--out", str(out)]) == 0
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["kind"] == "even-ortho"
    assert len(document["base"]["basis"]) == 4
    assert document["witness"]


def test_peel(exported, capsys):
    path = exported("g2")
    capsys.readouterr()
    assert main(["peel", path]) == 0
    out = capsys.readouterr().out
    assert "round trip FAILED" not in out
    assert out.rstrip().endswith("g2: 2 step(s) to zero")


def test_tensor_with_dual_numbers(exported, capsys):
    path = exported("g2")
    capsys.readouterr()
    assert main(["tensor", path, str(catalog.FROBENIUS_DIR / "dual.json")]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["name"] == "g2.dual"
    assert len(document["basis"]) == 8


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [line.split(":")[0] for line in lines] == catalog.list_entries()


def test_catalog_show(capsys):
    assert main(["catalog", "show", "dim8"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("dim8: ")
    assert "report " in out
    assert f"certification {catalog.get('dim8').certification}" in out


def test_catalog_show_unknown(capsys):
    assert main(["catalog", "show", "g7"]) == 2
    assert "Unknown catalog entry" in capsys.readouterr().err


def test_catalog_export_to_stdout(capsys):
    assert main(["catalog", "export", "g4"]) == 0
    assert json.loads(capsys.readouterr().out)["name"] == "g4"


def test_certify(capsys):
    assert main(["certify"]) == 0
    assert "failure(s)" not in capsys.readouterr().out
