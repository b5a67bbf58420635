from dataclasses import replace

import pytest
from sympy import Rational

from flat_qqf import catalog
from flat_qqf.errors import FlatQQFError, HypothesisError, NoCenterError, NoRationalEigenvalueError
from flat_qqf.extensions import (
    ExtensionData,
    PlanarExtensionData,
    central_reduce,
    double_extend,
    get_kind,
    peel,
    planar_qqf_extend,
    planar_reduce,
    qqf_double_extend,
    validate_de,
    validate_planar,
    validate_planar_qqf,
    validate_qqf_de,
    zero_extension_data,
    zero_planar_data,
)
from flat_qqf.liesuper import (
    LieSuperalgebra,
    check_isomorphism,
    form_pullback_failures,
    intertwining_failures,
)
from flat_qqf.structures import QQFStructure, QuasiFrobeniusStructure, validate_qqf
from flat_qqf.superlinalg import BilinearForm, Endomorphism, LinearMap, SuperSpace
from flat_qqf.utils.document_utils import bundle_from_document

HALF = Rational(1, 2)


@pytest.fixture
def g2_data(odd_plane):
    xi = Endomorphism.from_units(odd_plane.space, [("y2", "y1", HALF)], 0)
    return ExtensionData(xi, odd_plane.space.zero(), lam=HALF)


def test_kind_lookup():
    assert get_kind("even-ortho").omega_parity == 0
    assert get_kind("odd", 1).label == "odd-peri"
    with pytest.raises(ValueError):
        get_kind("sideways")


def test_extension_of_odd_plane_is_g2(odd_plane, g2_data, g2):
    assert validate_de("even-ortho", odd_plane.qf, g2_data).ok
    assert validate_qqf_de("even-ortho", odd_plane, g2_data).ok
    ext = qqf_double_extend("even-ortho", odd_plane, g2_data, "g2x")
    assert ext.space.labels == ("d", "e", "y1", "y2")
    assert validate_qqf(ext).ok
    target = g2.space
    phi = LinearMap.from_images(
        ext.space,
        target,
        [
            target.vector({"x1": -HALF}),
            target.basis_vector("x2"),
            target.basis_vector("y1"),
            target.basis_vector("y2"),
        ],
    )
    assert check_isomorphism(phi, ext.alg, g2.alg).ok
    assert form_pullback_failures(phi, ext.omega, g2.omega, "omega") == []
    assert intertwining_failures(phi, ext.rho, g2.rho * HALF, "rho") == []


def test_plain_double_extension_keeps_omega_on_the_base(odd_plane, g2_data):
    ext = double_extend("even-ortho", odd_plane.qf, g2_data)
    assert isinstance(ext, QuasiFrobeniusStructure)
    assert ext.omega.value("e", "d") == 1
    assert ext.omega.value("d", "e") == -1
    assert ext.omega.value("y1", "y2") == 1


def test_wrong_flavor_is_rejected(odd_plane, g2_data):
    report = validate_de("even-peri", odd_plane.qf, g2_data)
    assert report.has_failure("base-flavor")
    with pytest.raises(HypothesisError):
        double_extend("even-peri", odd_plane.qf, g2_data)


def test_lambda_must_be_nonzero(odd_plane, g2_data):
    data = ExtensionData(g2_data.xi, g2_data.b0, lam=0)
    with pytest.raises(HypothesisError) as info:
        qqf_double_extend("even-ortho", odd_plane, data)
    assert info.value.report.has_failure("lambda-nonzero")


def test_zero_data_gives_a_direct_sum(odd_plane):
    ext = qqf_double_extend("even-ortho", odd_plane, zero_extension_data("even-ortho", odd_plane.space, 1))
    assert ext.alg.is_abelian()
    assert ext.space.dim == 4


@pytest.fixture
def odd_zero():
    zero = SuperSpace.trivial()
    return QQFStructure.from_rho(
        LieSuperalgebra.abelian(zero, "0"),
        BilinearForm.zero(zero, 1, "antisymmetric"),
        Endomorphism.zero(zero, 1),
        "0",
    )


def test_planar_extension_of_zero_is_abelian(odd_zero):
    ext = planar_qqf_extend("periplectic", odd_zero, zero_planar_data("periplectic", odd_zero.space, 1))
    assert ext.alg.is_abelian()
    assert ext.space.dim == 4
    assert ext.rho.parity == 1
    assert validate_qqf(ext).ok


def test_planar_rho_data_on_zero(odd_zero):
    zero = odd_zero.space
    assert validate_planar_qqf("periplectic", odd_zero, zero_planar_data("periplectic", zero, 1)).ok
    report = validate_planar_qqf("periplectic", odd_zero, zero_planar_data("periplectic", zero, 0))
    assert report.has_failure("lambda-nonzero")


def _dim8_base_and_data(xi0, xi1):
    entry = catalog.load_entry_document("dim8")
    base = bundle_from_document(entry.base).qqf()
    space = base.space
    data = PlanarExtensionData(
        "periplectic",
        Endomorphism.from_units(space, xi0, 0),
        Endomorphism.from_units(space, xi1, 1),
        space.zero(),
        space.zero(),
        space.zero(),
        space.zero(),
        lam=1,
    )
    return base, data


def test_stored_planar_data_passes():
    base, data = _dim8_base_and_data(
        [("f2", "f1", 1), ("f3", "f4", 2)], [("f2", "f4", Rational(3, 2)), ("f3", "f1", 1)]
    )
    assert validate_planar("periplectic", base.qf, data).ok
    ext = planar_qqf_extend("periplectic", base, data)
    assert ext.space.dim == 8


def test_published_planar_data_is_refused():
    base, data = _dim8_base_and_data(
        [("f2", "f1", 2), ("f3", "f4", 1)], [("f2", "f4", Rational(3, 2)), ("f3", "f1", -1)]
    )
    with pytest.raises(FlatQQFError):
        planar_qqf_extend("periplectic", base, data)


@pytest.mark.parametrize("name", ["dim6-1", "dim6-2", "dim6-3", "dim6-4", "g2", "g4"])
def test_central_reduction_round_trip(name):
    qqf = catalog.get(name).structure
    result = central_reduce(qqf)
    assert result.report.ok
    assert result.base.space.dim == qqf.space.dim - 2
    assert check_isomorphism(result.witness, result.extension.alg, qqf.alg).ok


def test_planar_reduction_round_trip(dim8):
    result = planar_reduce(dim8)
    assert result.kind == "planar-periplectic"
    assert result.report.ok
    assert result.base.space.dim == 4
    assert result.base.alg.is_abelian()


def test_reductions_refuse_the_wrong_parity(g2, dim8):
    with pytest.raises(FlatQQFError):
        planar_reduce(g2)
    with pytest.raises(FlatQQFError):
        central_reduce(dim8)


def test_zero_algebra_has_no_center():
    zero = SuperSpace.trivial()
    qqf = QQFStructure.from_rho(
        LieSuperalgebra.abelian(zero, "0"), BilinearForm.zero(zero, 0, "antisymmetric"), Endomorphism.zero(zero), "0"
    )
    with pytest.raises(NoCenterError):
        central_reduce(qqf)


@pytest.mark.parametrize("name, steps", [("g2", 2), ("dim6-1", 3), ("dim6-4", 3)])
def test_peeling_reaches_zero(name, steps):
    chain = peel(catalog.get(name).structure)
    assert len(chain) == steps
    assert chain[-1].base.space.dim == 0
    assert all(step.report.ok for step in chain)


def test_planar_peeling_stops_over_the_rationals(dim8):
    step = planar_reduce(dim8)
    assert step.report.ok
    assert step.base.space.dim == 4
    # rho_b^2 has eigenvalues 2 lambda^2 and -2 lambda^2 on the base, neither a rational square
    with pytest.raises(NoRationalEigenvalueError, match="positive rational square"):
        planar_reduce(step.base)
    with pytest.raises(NoRationalEigenvalueError):
        peel(dim8)


def test_central_reduce_on_g2(g2):
    result = central_reduce(g2)
    assert result.kind == "even-ortho"
    assert result.base.space.dim == 2
    assert result.report.ok


def test_rotation_on_the_center_has_no_rational_eigenvalue():
    space = SuperSpace(("x1", "x2"), (0, 0))
    omega = BilinearForm.from_entries(space, [("x1", "x2", 1), ("x2", "x1", -1)], 0, "antisymmetric")
    rho = Endomorphism.from_units(space, [("x2", "x1", 1), ("x1", "x2", -1)], 0)
    qqf = QQFStructure.from_rho(LieSuperalgebra.abelian(space, "r"), omega, rho, "r")
    with pytest.raises(NoRationalEigenvalueError):
        central_reduce(qqf)


def test_rho_relations_refuse_the_wrong_lambda(odd_plane, g2_data):
    data = ExtensionData(g2_data.xi, g2_data.b0, lam=1)
    assert validate_de("even-ortho", odd_plane.qf, data).ok
    assert validate_qqf_de("even-ortho", odd_plane, data).has_failure("rho-xi-compatibility")
    with pytest.raises(HypothesisError) as info:
        qqf_double_extend("even-ortho", odd_plane, data)
    assert info.value.report.has_failure("rho-xi-compatibility")
    assert "rho-xi-compatibility" in info.value.args[0]


@pytest.fixture
def even_zero():
    zero = SuperSpace.trivial()
    return QQFStructure.from_rho(
        LieSuperalgebra.abelian(zero, "0"),
        BilinearForm.zero(zero, 0, "antisymmetric"),
        Endomorphism.zero(zero, 1),
        "0",
    )


def test_planar_rho_pairing_must_match_t(even_zero):
    data = replace(zero_planar_data("orthosymplectic", even_zero.space, 1), T=Rational(1))
    assert validate_planar("orthosymplectic", even_zero.qf, data).ok
    report = validate_planar_qqf("orthosymplectic", even_zero, data)
    assert report.has_failure("rho-pairing-c1")
    with pytest.raises(HypothesisError) as info:
        planar_qqf_extend("orthosymplectic", even_zero, data)
    assert info.value.report.has_failure("rho-pairing-c1")
    assert "rho-pairing-c1" in info.value.args[0]
