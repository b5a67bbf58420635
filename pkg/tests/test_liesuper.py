import random

import pytest

from flat_qqf import catalog
from flat_qqf.errors import DuplicateEntryError
from flat_qqf.liesuper import (
    LieSuperalgebra,
    Subspace,
    center,
    check_isomorphism,
    derived,
    is_derivation,
    perp,
    validate_lie,
)
from flat_qqf.superlinalg import Endomorphism, LinearMap, SuperSpace
from flat_qqf.utils.document_utils import bundle_from_document


@pytest.fixture
def broken():
    """[x1, x2] = x3, [x1, x3] = x1 violates Jacobi on (x1, x2, x3)."""
    space = SuperSpace(("x1", "x2", "x3"), (0, 0, 0))
    return LieSuperalgebra.from_brackets(space, [("x1", "x2", {"x3": 1}), ("x1", "x3", {"x1": 1})], "broken")


def test_bracket_is_graded_antisymmetric(g2):
    space = g2.space
    x1, y1, y2 = (space.basis_vector(l) for l in ("x1", "y1", "y2"))
    assert g2.alg.bracket(x1, y1) == y2
    assert g2.alg.bracket(y1, x1) == -y2
    assert g2.alg.bracket(y1, y1) == space.basis_vector("x2")


def test_reversed_pair_is_flipped():
    space = SuperSpace(("x1", "x2"), (0, 0))
    alg = LieSuperalgebra.from_brackets(space, [("x2", "x1", {"x2": -1})])
    assert alg.bracket(space.basis_vector("x1"), space.basis_vector("x2")) == space.basis_vector("x2")


def test_conflicting_brackets_are_rejected():
    space = SuperSpace(("x1", "x2"), (0, 0))
    with pytest.raises(DuplicateEntryError):
        LieSuperalgebra.from_brackets(space, [("x1", "x2", {"x2": 1}), ("x2", "x1", {"x2": 1})])


def test_catalog_algebras_satisfy_jacobi(g2, g4, dim8):
    for qqf in (g2, g4, dim8):
        assert validate_lie(qqf.alg).ok


def test_jacobi_failure_is_witnessed(broken):
    report = validate_lie(broken)
    assert not report.ok
    assert ("x1", "x2", "x3") in report.witnesses("jacobi")


def test_even_square_must_vanish():
    space = SuperSpace(("x1", "x2"), (0, 0))
    alg = LieSuperalgebra.from_brackets(space, [("x1", "x1", {"x2": 1})])
    assert validate_lie(alg).has_failure("antisymmetry")


def test_bracket_parity_is_checked():
    space = SuperSpace(("x1", "y1"), (0, 1))
    alg = LieSuperalgebra.from_brackets(space, [("y1", "y1", {"y1": 1})])
    assert validate_lie(alg).has_failure("bracket-parity")


def test_center_and_derived_of_g2(g2):
    space = g2.space
    expected = Subspace.span(space, [space.basis_vector("x2"), space.basis_vector("y2")])
    assert center(g2.alg) == expected
    assert derived(g2.alg) == expected
    assert perp(derived(g2.alg), g2.omega) == expected


def test_center_of_abelian_is_everything(odd_plane):
    assert center(odd_plane.alg) == Subspace.whole(odd_plane.space)
    assert derived(odd_plane.alg).dim == 0


def test_derivations(g2):
    assert is_derivation(g2.delta, g2.alg)
    assert is_derivation(Endomorphism.zero(g2.space), g2.alg)
    verdict = is_derivation(Endomorphism.identity(g2.space), g2.alg)
    assert not verdict
    assert verdict.witness


def test_identity_is_an_isomorphism(g2):
    space = g2.space
    phi = LinearMap.from_images(space, space, space.basis())
    assert check_isomorphism(phi, g2.alg, g2.alg).ok


def test_parity_breaking_map_is_not_an_isomorphism(g2):
    space = g2.space
    x1, x2, y1, y2 = space.basis()
    phi = LinearMap.from_images(space, space, [y1, x2, x1, y2])
    report = check_isomorphism(phi, g2.alg, g2.alg)
    assert report.has_failure("witness-parity")


def test_adjoint_action_respects_brackets(g2, g4, dim8):
    for qqf in (g2, g4, dim8):
        alg = qqf.alg
        basis = alg.space.basis()
        for u in basis:
            ad_u = alg.ad(u)
            assert ad_u.parity == u.parity
            for v in basis:
                expected = ad_u.supercommutator(alg.ad(v))
                assert alg.ad(alg.bracket(u, v)).matrix == expected.matrix, (qqf.name, u, v)


def _relabelled(subspace, space):
    return [space.vector(dict(zip(subspace.space.labels, v.coefficients))) for v in subspace.basis()]


@pytest.mark.parametrize("name, seed", [("g2", 0), ("g4", 1), ("dim6-3", 2), ("dim8", 3)])
def test_center_and_derived_ignore_basis_order(name, seed):
    document = catalog.export(name)
    shuffled = list(document.basis)
    random.Random(seed).shuffle(shuffled)
    original = bundle_from_document(document).alg
    permuted = bundle_from_document(document.model_copy(update={"basis": shuffled})).alg
    for compute in (center, derived):
        before, after = compute(original), compute(permuted)
        assert before.dim == after.dim
        assert all(after.contains(v) for v in _relabelled(before, permuted.space))
