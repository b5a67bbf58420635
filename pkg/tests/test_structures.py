import pytest
from sympy import Rational

from flat_qqf import catalog
from flat_qqf.errors import HypothesisError
from flat_qqf.liesuper import LieSuperalgebra
from flat_qqf.structures import (
    QQFStructure,
    QuasiFrobeniusStructure,
    check_closed,
    curvature,
    dimension_checks,
    is_flat,
    natural_product,
    npl_product,
    product_postconditions,
    quadratic_existence,
    quasi_frobenius_from_delta,
    validate_qqf,
    validate_quasi_frobenius,
)
from flat_qqf.superlinalg import Endomorphism


def test_g2_and_g4_are_flat_qqf(g2, g4):
    for qqf in (g2, g4):
        report = validate_qqf(qqf)
        assert report.ok, report.lines()


def test_dictionary_between_forms(g2):
    rebuilt = QQFStructure.from_forms(g2.alg, g2.omega, g2.b_form)
    assert rebuilt.rho == g2.rho
    assert rebuilt.delta == g2.delta
    space = g2.space
    for u in space.basis():
        for v in space.basis():
            assert g2.b_form(u, v) == g2.omega(g2.rho(u), v)


def test_g4_has_odd_omega_and_odd_b(g4):
    assert g4.omega.parity == 1
    assert g4.b_form.parity == 1
    assert g4.rho.parity == 0


def test_singular_rho_is_refused(g2):
    with pytest.raises(HypothesisError):
        QQFStructure.from_rho(g2.alg, g2.omega, Endomorphism.zero(g2.space))


def test_omega_from_delta(g2):
    qf = quasi_frobenius_from_delta(g2.alg, g2.b_form, g2.delta)
    assert qf.omega.values == g2.omega.values


def test_natural_product_postconditions(g2, g4, dim8):
    for qqf in (g2, g4, dim8):
        star = natural_product(qqf.alg, qqf.qf)
        assert product_postconditions(star, qqf.alg, qqf.omega).ok
        assert star.differences(npl_product(qqf.alg, qqf.delta)) == []


def test_natural_product_commutator_is_the_bracket(g2):
    star = natural_product(g2.alg, g2.qf)
    for u in g2.space.basis():
        for v in g2.space.basis():
            assert star.commutator(u, v) == g2.alg.bracket(u, v)


def test_aff1_is_not_flat():
    qf = catalog.get("aff1").structure
    assert validate_quasi_frobenius(qf).ok
    verdict = is_flat(qf)
    assert not verdict
    assert verdict.witness == ("x1", "x2", "x1")
    assert verdict.detail == "K(x1,x2)(x1) = -2/9*x2"


def test_closedness_failure_after_perturbation(g2):
    space = g2.space
    alg = LieSuperalgebra.from_brackets(
        space, [("x1", "y1", {"y2": 1}), ("y1", "y1", {"x2": 2})], "g2-perturbed"
    )
    report = validate_quasi_frobenius(QuasiFrobeniusStructure(alg, g2.omega))
    assert report.has_failure("closed")
    assert not report.has_failure("jacobi")
    assert not check_closed(alg, g2.omega).ok


@pytest.mark.parametrize("name", ["g3", "K+h3"])
def test_no_quadratic_structure(name):
    qf = catalog.get(name).structure
    for parity in (0, 1):
        existence = quadratic_existence(qf.alg, qf, parity)
        assert existence.verdict == "no"
        assert "differs from center" in existence.witness


def test_rho_family_of_g2(g2):
    existence = quadratic_existence(g2.alg, g2.qf, 0)
    assert existence.verdict == "yes"
    assert existence.dimension == 2
    assert existence.contains(g2.rho)
    assert existence.contains(g2.rho * Rational(-3, 2))
    assert existence.sample.is_invertible()
    assert existence.contains(existence.sample)


def test_rho_family_of_g4(g4):
    existence = quadratic_existence(g4.alg, g4.qf, 0)
    assert existence.verdict == "yes"
    assert existence.contains(g4.rho)


def test_dimension_checks(g2, g4, dim8):
    for qqf in (g2, g4, dim8):
        assert dimension_checks(qqf).ok
    assert dim8.rho.parity == 1
    assert dim8.space.dim % 4 == 0
    assert dim8.space.even_dim == dim8.space.odd_dim


def test_flat_product_is_left_symmetric(g2):
    star = natural_product(g2.alg, g2.qf)
    basis = g2.space.basis()
    for u in basis:
        assert star.left(u)(basis[0]) == star.product(u, basis[0])
        for v in basis:
            sign = -1 if u.parity and v.parity else 1
            for w in basis:
                assert star.associator(u, v, w) == star.associator(v, u, w) * sign


def test_curvature_of_aff1():
    qf = catalog.get("aff1").structure
    star = natural_product(qf.alg, qf)
    x1, x2 = qf.space.basis_vector("x1"), qf.space.basis_vector("x2")
    assert curvature(star, x1, x2)(x1) == qf.space.vector({"x2": Rational(-2, 9)})
    assert curvature(star, x1, x1).is_zero()
