import random

import pytest
from sympy import Rational

from flat_qqf.errors import BasisError, DimensionMismatch, DuplicateEntryError, HomogeneityError
from flat_qqf.superlinalg import (
    BilinearForm,
    Endomorphism,
    SuperSpace,
    adjoint,
    odot,
    pair_dual,
    solve_against_form,
    upsetting,
    wedge,
)
from flat_qqf.utils import exact_linalg as xl
from flat_qqf.utils.rational_utils import format_rational, koszul, parse_rational


@pytest.fixture
def mixed():
    return SuperSpace(("x1", "x2", "y1", "y2"), (0, 0, 1, 1))


def test_space_rejects_bad_bases():
    with pytest.raises(BasisError):
        SuperSpace(("a", "a"), (0, 0))
    with pytest.raises(BasisError):
        SuperSpace(("y", "x"), (1, 0))
    with pytest.raises(BasisError):
        SuperSpace(("x",), (2,))


def test_from_basis_puts_evens_first():
    space, perm = SuperSpace.from_basis([("y", 1), ("x", 0), ("z", 0)])
    assert space.labels == ("x", "z", "y")
    assert perm == (1, 2, 0)
    assert (space.even_dim, space.odd_dim) == (2, 1)


def test_mixed_vector_has_no_parity(mixed):
    v = mixed.vector({"x1": 1, "y1": 1})
    assert not v.is_homogeneous()
    with pytest.raises(HomogeneityError):
        _ = v.parity
    assert mixed.zero().parity == 0
    assert str(mixed.vector({"x1": Rational(1, 2), "y2": -1})) == "1/2*x1 - y2"


def test_vectors_on_different_spaces_do_not_mix(mixed):
    other = SuperSpace(("x1",), (0,))
    with pytest.raises(DimensionMismatch):
        mixed.basis_vector("x1") + other.basis_vector("x1")


def test_endomorphism_homogeneity_is_enforced(mixed):
    with pytest.raises(HomogeneityError):
        Endomorphism.from_units(mixed, [("y1", "x1", 1)], 0)
    f = Endomorphism.from_units(mixed, [("y1", "x1", 1)])
    assert f.parity == 1
    assert f(mixed.basis_vector("x1")) == mixed.basis_vector("y1")


def test_conflicting_units_are_rejected(mixed):
    with pytest.raises(DuplicateEntryError):
        Endomorphism.from_units(mixed, [("x1", "x1", 1), ("x1", "x1", 2)])


def test_composition_and_supercommutator(mixed):
    f = Endomorphism.from_units(mixed, [("y1", "x1", 1)], 1)
    g = Endomorphism.from_units(mixed, [("x1", "y1", 1)], 1)
    assert (f @ g).parity == 0
    # [f, g] = fg + gf for two odd maps
    bracket = f.supercommutator(g)
    assert bracket.entry("x1", "x1") == 1
    assert bracket.entry("y1", "y1") == 1


def test_pair_dual_sign(mixed):
    y1, y2 = mixed.basis_vector("y1"), mixed.basis_vector("y2")
    assert pair_dual((mixed.dual("y1"), mixed.dual("y2")), (y1, y2)) == -1
    x1 = mixed.basis_vector("x1")
    assert pair_dual((mixed.dual("x1"), mixed.dual("y2")), (x1, y2)) == 1


def test_wedge_values(mixed):
    even = wedge(mixed.dual("x1"), mixed.dual("x2"))
    assert even.value("x1", "x2") == 1 and even.value("x2", "x1") == -1
    odd = wedge(mixed.dual("y1"), mixed.dual("y2"))
    assert odd.value("y1", "y2") == -1 and odd.value("y2", "y1") == -1
    cross = wedge(mixed.dual("x1"), mixed.dual("y1"))
    assert cross.value("x1", "y1") == 1 and cross.value("y1", "x1") == -1
    assert cross.parity == 1
    for form in (even, odd, cross):
        assert form.validate().ok
        assert form.symmetry == "antisymmetric"


def test_odot_is_symmetric(mixed):
    form = odot(mixed.dual("x1"), mixed.dual("x2"))
    assert form.value("x1", "x2") == 1 and form.value("x2", "x1") == 1
    assert form.validate().ok


def test_upsetting_flips_antisymmetric_forms(mixed):
    omega = wedge(mixed.dual("x1"), mixed.dual("x2")) + wedge(mixed.dual("y1"), mixed.dual("y2"))
    assert upsetting(omega).values == (-omega).values
    B = odot(mixed.dual("x1"), mixed.dual("y2"))
    assert upsetting(B).values == B.values


def test_form_validation_reports_witnesses(mixed):
    bad = BilinearForm.from_entries(mixed, [("x1", "y1", 1), ("x1", "x2", 1), ("x2", "x1", 1)], 0, "antisymmetric")
    report = bad.validate("omega")
    assert report.has_failure("form-homogeneity")
    assert ("x1", "y1") in report.witnesses("form-homogeneity")
    assert ("x1", "x2") in report.witnesses("form-antisymmetric")


def test_adjoint_identity(g2):
    omega = g2.omega
    space = omega.space
    f = Endomorphism.from_units(space, [("y1", "x1", 1), ("x2", "y2", 3)], 1)
    fs = adjoint(f, omega)
    for v in space.basis():
        for w in space.basis():
            assert omega(f(v), w) == koszul(1, v.parity) * omega(v, fs(w))


def test_solve_against_form(g2):
    omega = g2.omega
    space = omega.space
    rhs = space.covector({"x1": 4, "y2": 1})
    x = solve_against_form(omega, rhs)
    for b in space.basis():
        assert omega(x, b) == rhs(b)


@pytest.mark.parametrize("text, value", [("3", Rational(3)), ("-2/6", Rational(-1, 3)), (" 7/1 ", Rational(7))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1.5", "1/0", "1/2/3", "a"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Rational(-4, 6)) == "-2/3"
    assert format_rational(5) == "5"


def _random_rationals(seed, count):
    rng = random.Random(seed)
    return [Rational(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(count)]


@pytest.mark.parametrize("seed", range(5))
def test_rational_field_axioms(seed):
    a, b, c = _random_rationals(seed, 3)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a and a * 1 == a and a + (-a) == 0
    if a != 0:
        assert a * (1 / a) == 1
    assert parse_rational(format_rational(a / 7 + b)) == a / 7 + b


def test_exact_matrix_operations():
    a = [[Rational(1, 2), Rational(1)], [Rational(0), Rational(-3)]]
    b = [[Rational(2), Rational(0)], [Rational(1, 3), Rational(1)]]
    assert xl.matmul(a, b, 2, 2) == [[Rational(4, 3), Rational(1)], [Rational(-1), Rational(-3)]]
    assert xl.matvec(a, [Rational(2), Rational(1, 3)]) == [Rational(4, 3), Rational(-1)]
    assert xl.matmul(a, xl.inverse(a), 2, 2) == xl.identity(2)
    assert xl.matmul([], [], 0, 3) == []
    assert xl.matvec([[], []], []) == [0, 0]
    with pytest.raises(ValueError, match="singular"):
        xl.inverse([[Rational(1), Rational(2)], [Rational(2), Rational(4)]])
