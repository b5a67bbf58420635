import json

import pytest

from flat_qqf import catalog
from flat_qqf.liesuper import LieSuperalgebra
from flat_qqf.structures import QQFStructure
from flat_qqf.superlinalg import BilinearForm, Endomorphism, SuperSpace


@pytest.fixture
def g2():
    return catalog.get("g2").structure


@pytest.fixture
def g4():
    return catalog.get("g4").structure


@pytest.fixture
def dim8():
    return catalog.get("dim8").structure


@pytest.fixture
def odd_plane():
    """Abelian 0|2 base with omega(y1, y2) = omega(y2, y1) = 1 and rho = diag(1, -1)."""
    space = SuperSpace(("y1", "y2"), (1, 1))
    omega = BilinearForm.from_entries(space, [("y1", "y2", 1), ("y2", "y1", 1)], 0, "antisymmetric")
    rho = Endomorphism.from_units(space, [("y1", "y1", 1), ("y2", "y2", -1)], 0)
    return QQFStructure.from_rho(LieSuperalgebra.abelian(space, "b"), omega, rho, "b")


@pytest.fixture
def write_json(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
        return str(path)

    return write
