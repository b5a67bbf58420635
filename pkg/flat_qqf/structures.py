"""Quasi-Frobenius and quadratic structures, the natural symplectic product and flatness."""
import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from sympy import Rational

from flat_qqf.config import get_executor, get_settings
from flat_qqf.errors import FlatQQFError, HypothesisError, IncompatibleProduct, SingularEndomorphism
from flat_qqf.liesuper import LieSuperalgebra, Subspace, center, derived, is_derivation, perp, validate_lie
from flat_qqf.report import Failure, ValidationReport, Verdict
from flat_qqf.superlinalg import (
    BilinearForm,
    Covector,
    Endomorphism,
    SuperSpace,
    SuperVector,
    parity_sum,
    solve_against_form,
)
from flat_qqf.utils import exact_linalg as xl
from flat_qqf.utils.rational_utils import ZERO, format_rational, koszul

logger = logging.getLogger(__name__)

ORTHOSYMPLECTIC = "orthosymplectic"
PERIPLECTIC = "periplectic"


def flavor_of(omega: BilinearForm) -> str:
    return PERIPLECTIC if omega.parity else ORTHOSYMPLECTIC


@dataclass(frozen=True)
class QuasiFrobeniusStructure:
    alg: LieSuperalgebra
    omega: BilinearForm

    @property
    def space(self) -> SuperSpace:
        return self.alg.space

    @property
    def flavor(self) -> str:
        return flavor_of(self.omega)


@dataclass(frozen=True)
class QuadraticStructure:
    alg: LieSuperalgebra
    b_form: BilinearForm


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductTable:
    """A bilinear product on ``space``; ``products[i][j]`` holds b_i * b_j for every ordered pair."""
    space: SuperSpace
    products: Tuple[Tuple[Tuple[Rational, ...], ...], ...]

    def entry(self, i: int, j: int) -> SuperVector:
        return SuperVector(self.space, self.products[i][j])

    def product(self, u: SuperVector, v: SuperVector) -> SuperVector:
        n = self.space.dim
        out = [ZERO] * n
        for i, a in enumerate(u.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(v.coefficients):
                if b == 0:
                    continue
                for m, c in enumerate(self.products[i][j]):
                    if c != 0:
                        out[m] += a * b * c
        return SuperVector(self.space, tuple(out))

    def left(self, u: SuperVector) -> Endomorphism:
        """L_u(v) = u * v."""
        return Endomorphism.from_function(self.space, lambda v: self.product(u, v), u.parity)

    def right(self, u: SuperVector) -> Endomorphism:
        """R_u(v) = v * u."""
        return Endomorphism.from_function(self.space, lambda v: self.product(v, u), u.parity)

    def commutator(self, u: SuperVector, v: SuperVector) -> SuperVector:
        return self.product(u, v) - self.product(v, u) * koszul(u.parity, v.parity)

    def associator(self, u: SuperVector, v: SuperVector, w: SuperVector) -> SuperVector:
        return self.product(self.product(u, v), w) - self.product(u, self.product(v, w))

    def parity_failures(self) -> List[Failure]:
        labels, p = self.space.labels, self.space.parities
        failures = []
        for i in range(self.space.dim):
            for j in range(self.space.dim):
                expected = (p[i] + p[j]) % 2
                if any(c != 0 and p[m] != expected for m, c in enumerate(self.products[i][j])):
                    failures.append(Failure("product-parity", (labels[i], labels[j])))
        return failures

    def differences(self, other: "ProductTable") -> List[Tuple[str, str]]:
        labels = self.space.labels
        return [
            (labels[i], labels[j])
            for i in range(self.space.dim)
            for j in range(self.space.dim)
            if self.products[i][j] != other.products[i][j]
        ]


# ---------------------------------------------------------------------------
# Closedness, invariance and the natural product
# ---------------------------------------------------------------------------


def _omega_of_brackets(alg: LieSuperalgebra, omega: BilinearForm) -> List[List[List[Rational]]]:
    """W[i][j][k] = omega([b_i, b_j], b_k)."""
    n = alg.dim
    basis = alg.space.basis()
    W = []
    for i in range(n):
        row = []
        for j in range(n):
            v = alg.structure_vector(i, j)
            row.append([omega(v, basis[k]) for k in range(n)] if not v.is_zero() else [ZERO] * n)
        W.append(row)
    return W


def check_closed(alg: LieSuperalgebra, omega: BilinearForm) -> ValidationReport:
    """Cyclic cocycle condition on every basis triple; each failing triple is reported once."""
    n = alg.dim
    p = alg.space.parities
    labels = alg.space.labels
    W = _omega_of_brackets(alg, omega)
    failing = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        total = (
            koszul(p[i], p[k]) * W[i][j][k]
            + koszul(p[j], p[i]) * W[j][k][i]
            + koszul(p[k], p[j]) * W[k][i][j]
        )
        if total != 0:
            key = tuple(sorted((i, j, k)))
            failing.setdefault(key, ((i, j, k), total))
    failures = tuple(
        Failure("closed", tuple(labels[x] for x in triple), f"cyclic sum {format_rational(total)}")
        for _, (triple, total) in sorted(failing.items())
    )
    return ValidationReport(f"{alg.name}: closedness", failures)


def check_invariant(alg: LieSuperalgebra, b_form: BilinearForm) -> ValidationReport:
    """B([u,v],w) = B(u,[v,w]) on basis triples."""
    basis = alg.space.basis()
    labels = alg.space.labels
    failures = []
    for i, j, k in itertools.product(range(alg.dim), repeat=3):
        left = b_form(alg.structure_vector(i, j), basis[k])
        right = b_form(basis[i], alg.structure_vector(j, k))
        if left != right:
            failures.append(
                Failure("invariant", (labels[i], labels[j], labels[k]),
                        f"B([u,v],w) = {format_rational(left)}, B(u,[v,w]) = {format_rational(right)}")
            )
    return ValidationReport(f"{alg.name}: invariance", tuple(failures))


def validate_quasi_frobenius(qf: QuasiFrobeniusStructure) -> ValidationReport:
    omega = qf.omega
    failures = list(omega.homogeneity_failures())
    if omega.symmetry != "antisymmetric":
        failures.append(Failure("omega-flag", (), f"omega is flagged {omega.symmetry}"))
    failures.extend(omega.symmetry_failures() if omega.symmetry == "antisymmetric" else [])
    if not omega.is_nondegenerate():
        failures.append(Failure("omega-nondegenerate", (), "omega is degenerate"))
    report = ValidationReport(f"{qf.alg.name}: omega", tuple(failures))
    return ValidationReport.combine(
        f"{qf.alg.name}: quasi-Frobenius",
        [validate_lie(qf.alg), report, check_closed(qf.alg, omega), flavor_facts(qf.space, omega)],
    )


def flavor_facts(space: SuperSpace, omega: BilinearForm) -> ValidationReport:
    failures = []
    if omega.parity == 1 and space.even_dim != space.odd_dim:
        failures.append(Failure("periplectic-dimensions", (), f"even {space.even_dim} != odd {space.odd_dim}"))
    if omega.parity == 0 and space.even_dim % 2:
        failures.append(Failure("orthosymplectic-dimensions", (), f"even dimension {space.even_dim} is odd"))
    return ValidationReport("flavor", tuple(failures))


def _solve_pair(args) -> Tuple[Rational, ...]:
    alg, omega, W, i, j = args
    p = alg.space.parities
    n = alg.dim
    third = Rational(1, 3)
    rhs = [third * (W[i][j][k] + koszul(p[j], p[k]) * W[i][k][j]) for k in range(n)]
    return solve_against_form(omega, Covector(alg.space, tuple(rhs))).coefficients


def product_postconditions(star: ProductTable, alg: LieSuperalgebra, omega: BilinearForm) -> ValidationReport:
    """Compatibility with the bracket and omega-skewness in the first slot."""
    basis = alg.space.basis()
    labels = alg.space.labels
    failures = list(star.parity_failures())
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            if star.commutator(u, v) != alg.structure_vector(i, j):
                failures.append(Failure("product-compatible", (labels[i], labels[j])))
            for k, w in enumerate(basis):
                value = omega(star.product(u, v), w) + koszul(u.parity, v.parity) * omega(v, star.product(u, w))
                if value != 0:
                    failures.append(Failure("product-skew", (labels[i], labels[j], labels[k])))
    return ValidationReport(f"{alg.name}: natural product", tuple(failures))


def natural_product(alg: LieSuperalgebra, qf: QuasiFrobeniusStructure) -> ProductTable:
    """The unique product with omega(u*v, w) = 1/3 (omega([u,v],w) + (-1)^{|v||w|} omega([u,w],v))."""
    omega = qf.omega
    omega.require_nondegenerate("omega")
    closed = check_closed(alg, omega)
    if not closed.ok:
        raise HypothesisError(f"omega is not closed on {alg.name}", closed)
    W = _omega_of_brackets(alg, omega)
    n = alg.dim
    pairs = [(alg, omega, W, i, j) for i in range(n) for j in range(n)]
    solved = list(get_executor().map(_solve_pair, pairs))
    star = ProductTable(alg.space, tuple(tuple(solved[i * n:(i + 1) * n]) for i in range(n)))
    post = product_postconditions(star, alg, omega)
    if not post.ok:
        raise HypothesisError(f"natural product on {alg.name} fails its defining identities", post)
    logger.debug(f"natural product of {alg.name} computed on {n * n} pairs")
    return star


def curvature(star: ProductTable, u: SuperVector, v: SuperVector) -> Endomorphism:
    """K(u,v) = L_[u,v] - [L_u, L_v], with [u,v] the graded commutator of the product."""
    bracket = star.commutator(u, v)
    left_u, left_v = star.left(u), star.left(v)
    return star.left(bracket) - left_u.supercommutator(left_v)


def check_flat(star: ProductTable, alg: LieSuperalgebra) -> Verdict:
    """Vanishing curvature on basis pairs, cross-checked against left-symmetry of the product."""
    basis = alg.space.basis()
    labels = alg.space.labels
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            if star.commutator(u, v) != alg.structure_vector(i, j):
                raise IncompatibleProduct(f"product commutator differs from the bracket at ({labels[i]}, {labels[j]})")
    witness: Optional[Tuple[Tuple[str, ...], SuperVector]] = None
    left_symmetric = True
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            K = curvature(star, u, v)
            for k, w in enumerate(basis):
                value = K(w)
                if witness is None and not value.is_zero():
                    witness = ((labels[i], labels[j], labels[k]), value)
                defect = star.associator(u, v, w) - star.associator(v, u, w) * koszul(u.parity, v.parity)
                if not defect.is_zero():
                    left_symmetric = False
    if left_symmetric != (witness is None):
        raise FlatQQFError("curvature and left-symmetry disagree")
    if witness is None:
        return Verdict(True)
    triple, value = witness
    return Verdict(False, triple, f"K({triple[0]},{triple[1]})({triple[2]}) = {value}")


def is_flat(qf: QuasiFrobeniusStructure) -> Verdict:
    return check_flat(natural_product(qf.alg, qf), qf.alg)


# ---------------------------------------------------------------------------
# The delta / rho dictionary
# ---------------------------------------------------------------------------


def _dictionary_map(first: BilinearForm, second: BilinearForm) -> Endomorphism:
    """The map X with second(u, v) = first(X u, v)."""
    n = first.space.dim
    first.require_nondegenerate()
    second.require_nondegenerate()
    inv = xl.inverse(first.values)
    rows = xl.transpose(xl.matmul(second.values, inv, n, n), n)
    return Endomorphism(first.space, tuple(tuple(r) for r in rows), parity_sum(first.parity, second.parity))


def delta_from(quad: QuadraticStructure, qf: QuasiFrobeniusStructure) -> Endomorphism:
    """delta with omega(u, v) = B(delta u, v)."""
    delta = _dictionary_map(quad.b_form, qf.omega)
    rho = _dictionary_map(qf.omega, quad.b_form)
    if delta @ rho != Endomorphism.identity(qf.space):
        raise FlatQQFError("delta and rho are not mutually inverse")
    return delta


def rho_from(quad: QuadraticStructure, qf: QuasiFrobeniusStructure) -> Endomorphism:
    """rho with B(u, v) = omega(rho u, v)."""
    rho = _dictionary_map(qf.omega, quad.b_form)
    if rho @ _dictionary_map(quad.b_form, qf.omega) != Endomorphism.identity(qf.space):
        raise FlatQQFError("delta and rho are not mutually inverse")
    return rho


def form_from_rho(omega: BilinearForm, rho: Endomorphism) -> BilinearForm:
    basis = omega.space.basis()
    rows = [[omega(rho(u), v) for v in basis] for u in basis]
    return BilinearForm(omega.space, tuple(tuple(r) for r in rows), parity_sum(omega.parity, rho.parity), "symmetric")


def npl_product(alg: LieSuperalgebra, delta: Endomorphism) -> ProductTable:
    """u * v = 1/3 ([u,v] + (-1)^{|u||delta|} delta^{-1} [u, delta v])."""
    inv = delta.inverse()
    basis = alg.space.basis()
    third = Rational(1, 3)
    rows = []
    for u in basis:
        row = []
        for v in basis:
            twisted = inv(alg.bracket(u, delta(v))) * koszul(u.parity, delta.parity)
            row.append(((alg.bracket(u, v) + twisted) * third).coefficients)
        rows.append(tuple(row))
    return ProductTable(alg.space, tuple(rows))


@dataclass(frozen=True)
class QQFStructure:
    alg: LieSuperalgebra
    qf: QuasiFrobeniusStructure
    quad: QuadraticStructure
    rho: Endomorphism
    delta: Endomorphism
    name: str = field(default="g", compare=False)

    @property
    def space(self) -> SuperSpace:
        return self.alg.space

    @property
    def omega(self) -> BilinearForm:
        return self.qf.omega

    @property
    def b_form(self) -> BilinearForm:
        return self.quad.b_form

    @classmethod
    def from_forms(cls, alg: LieSuperalgebra, omega: BilinearForm, b_form: BilinearForm, name: Optional[str] = None) -> "QQFStructure":
        qf = QuasiFrobeniusStructure(alg, omega)
        quad = QuadraticStructure(alg, b_form)
        return cls(alg, qf, quad, rho_from(quad, qf), delta_from(quad, qf), name or alg.name)

    @classmethod
    def from_rho(cls, alg: LieSuperalgebra, omega: BilinearForm, rho: Endomorphism, name: Optional[str] = None) -> "QQFStructure":
        try:
            delta = rho.inverse()
        except SingularEndomorphism:
            raise HypothesisError("rho must be invertible") from None
        b_form = form_from_rho(omega, rho)
        return cls(alg, QuasiFrobeniusStructure(alg, omega), QuadraticStructure(alg, b_form), rho, delta, name or alg.name)


def rho_criterion_failures(alg: LieSuperalgebra, omega: BilinearForm, rho: Endomorphism) -> List[Failure]:
    """rho omega-antisymmetric and every rho o ad_u omega-symmetric (basis level)."""
    basis = alg.space.basis()
    labels = alg.space.labels
    failures = []
    for j, v in enumerate(basis):
        for k, w in enumerate(basis):
            if omega(rho(v), w) + koszul(rho.parity, v.parity) * omega(v, rho(w)) != 0:
                failures.append(Failure("rho-antisymmetric", (labels[j], labels[k])))
    for i, u in enumerate(basis):
        ad_u = alg.ad(u)
        f = rho @ ad_u
        for j, v in enumerate(basis):
            fv = f(v)
            for k, w in enumerate(basis):
                if omega(fv, w) - koszul(f.parity, v.parity) * omega(v, f(w)) != 0:
                    failures.append(Failure("rho-ad-symmetric", (labels[i], labels[j], labels[k])))
    return failures


def delta_symmetry_report(qqf: QQFStructure) -> ValidationReport:
    """omega(delta u, v) = -(-1)^{|delta| + |delta||u|} omega(u, delta v)."""
    delta, omega = qqf.delta, qqf.omega
    basis = qqf.space.basis()
    labels = qqf.space.labels
    failures = []
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            expected = -koszul(1, delta.parity) * koszul(delta.parity, u.parity) * omega(u, delta(v))
            if omega(delta(u), v) != expected:
                failures.append(Failure("delta-symmetry", (labels[i], labels[j])))
    return ValidationReport(f"{qqf.name}: delta symmetry", tuple(failures))


def dimension_checks(qqf: QQFStructure) -> ValidationReport:
    space = qqf.space
    failures = []
    if space.dim % 2:
        failures.append(Failure("even-dimension", (), f"total dimension {space.dim} is odd"))
    if qqf.rho.parity == 1 and space.dim % 4:
        failures.append(Failure("dimension-mod-4", (), f"odd rho on total dimension {space.dim}"))
    facts = flavor_facts(space, qqf.omega)
    return ValidationReport(f"{qqf.name}: dimensions", tuple(failures) + facts.failures)


def dictionary_failures(qqf: QQFStructure) -> List[Failure]:
    omega, b_form, rho, delta = qqf.omega, qqf.b_form, qqf.rho, qqf.delta
    basis = qqf.space.basis()
    labels = qqf.space.labels
    failures = []
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            if b_form(u, v) != omega(rho(u), v):
                failures.append(Failure("dictionary-rho", (labels[i], labels[j])))
            if omega(u, v) != b_form(delta(u), v):
                failures.append(Failure("dictionary-delta", (labels[i], labels[j])))
    if delta @ rho != Endomorphism.identity(qqf.space):
        failures.append(Failure("delta-inverse", (), "delta o rho is not the identity"))
    if rho.parity != parity_sum(b_form.parity, omega.parity):
        failures.append(Failure("rho-parity", (), f"|rho| = {rho.parity}, |B| + |omega| = {b_form.parity + omega.parity}"))
    return failures


def validate_qqf(qqf: QQFStructure) -> ValidationReport:
    """Every structural check a flat QQF-superalgebra must pass."""
    alg, omega, b_form = qqf.alg, qqf.omega, qqf.b_form
    reports = [validate_quasi_frobenius(qqf.qf)]
    quad_failures = list(b_form.validate("B").failures)
    if b_form.symmetry != "symmetric":
        quad_failures.append(Failure("b-flag", (), f"B is flagged {b_form.symmetry}"))
    if not b_form.is_nondegenerate():
        quad_failures.append(Failure("b-nondegenerate", (), "B is degenerate"))
    reports.append(ValidationReport(f"{qqf.name}: B", tuple(quad_failures)))
    reports.append(check_invariant(alg, b_form))
    extra = dictionary_failures(qqf)
    extra.extend(rho_criterion_failures(alg, omega, qqf.rho))
    derivation = is_derivation(qqf.delta, alg)
    if not derivation:
        extra.append(Failure("delta-derivation", derivation.witness, derivation.detail))
    reports.append(ValidationReport(f"{qqf.name}: dictionary", tuple(extra)))
    reports.append(delta_symmetry_report(qqf))
    reports.append(dimension_checks(qqf))
    if reports[0].ok and omega.is_nondegenerate():
        reports.append(flatness_report(qqf))
    return ValidationReport.combine(f"{qqf.name}: flat QQF", reports)


def flatness_report(qqf: QQFStructure) -> ValidationReport:
    """Flatness, the product cross-check against delta, and the center identities."""
    alg, omega = qqf.alg, qqf.omega
    failures = []
    star = natural_product(alg, qqf.qf)
    flat = check_flat(star, alg)
    if not flat:
        failures.append(Failure("flat", flat.witness, flat.detail))
    if qqf.delta.is_invertible():
        for pair in star.differences(npl_product(alg, qqf.delta)):
            failures.append(Failure("npl-product", pair))
    z = center(alg)
    d = derived(alg)
    if perp(d, omega) != z:
        failures.append(Failure("center-omega-perp", (), f"center {z} vs perp {perp(d, omega)}"))
    if qqf.b_form.is_nondegenerate() and perp(d, qqf.b_form) != z:
        failures.append(Failure("center-b-perp", (), f"center {z} vs perp {perp(d, qqf.b_form)}"))
    if Subspace.span(alg.space, [qqf.rho(v) for v in z.basis()]) != z:
        failures.append(Failure("rho-center", (), "rho does not preserve the center"))
    return ValidationReport(f"{qqf.name}: flatness", tuple(failures))


def quasi_frobenius_from_delta(alg: LieSuperalgebra, b_form: BilinearForm, delta: Endomorphism) -> QuasiFrobeniusStructure:
    """omega(u, v) := B(delta u, v); closed exactly when delta is a derivation."""
    basis = alg.space.basis()
    rows = [[b_form(delta(u), v) for v in basis] for u in basis]
    omega = BilinearForm(alg.space, tuple(tuple(r) for r in rows), parity_sum(b_form.parity, delta.parity), "antisymmetric")
    qf = QuasiFrobeniusStructure(alg, omega)
    report = validate_quasi_frobenius(qf)
    derivation = is_derivation(delta, alg)
    if bool(derivation) != check_closed(alg, omega).ok:
        logger.warning(f"derivation test and closedness disagree on {alg.name}")
    if not report.ok:
        raise HypothesisError(f"delta does not define a quasi-Frobenius structure on {alg.name}", report)
    return qf


# ---------------------------------------------------------------------------
# Existence of a quadratic structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticExistence:
    verdict: str
    basis: Tuple[Endomorphism, ...] = ()
    sample: Optional[Endomorphism] = None
    witness: str = ""

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, rho: Endomorphism) -> bool:
        rows = [[x for row in f.matrix for x in row] for f in self.basis]
        flat = [x for row in rho.matrix for x in row]
        n = len(flat)
        return xl.rank(rows + [flat], n) == len(self.basis) if rows else rho.is_zero()


def _sample_values(limit: int) -> Tuple[int, ...]:
    values = []
    for k in range(1, limit + 1):
        values.extend((k, -k))
    return tuple(values) + (0,)


def quadratic_existence(alg: LieSuperalgebra, qf: QuasiFrobeniusStructure, rho_parity: int) -> QuadraticExistence:
    """Solve for rho (omega-antisymmetric, rho o ad_u omega-symmetric) and look for an invertible member."""
    omega = qf.omega
    z = center(alg)
    d_perp = perp(derived(alg), omega)
    if z != d_perp:
        detail = f"perp(derived) = {d_perp} differs from center = {z}"
        logger.info(f"quadratic_existence({alg.name}): no, {detail}")
        return QuadraticExistence("no", witness=detail)
    space = alg.space
    n = space.dim
    p = space.parities
    unknowns = [(a, c) for a in range(n) for c in range(n) if p[a] == (p[c] + rho_parity) % 2]
    if not unknowns:
        return QuadraticExistence("no", witness="no entries of that parity")
    basis = space.basis()
    omega_rows = omega.values
    rows = []
    for j in range(n):
        for k in range(n):
            s = koszul(rho_parity, p[j])
            # omega(rho b_j, b_k) + s omega(b_j, rho b_k)
            row = []
            for a, c in unknowns:
                value = ZERO
                if c == j:
                    value += omega_rows[a][k]
                if c == k:
                    value += s * omega_rows[j][a]
                row.append(value)
            rows.append(row)
    for i in range(n):
        ad = alg._ad_rows(i)
        f_parity = (rho_parity + p[i]) % 2
        for j in range(n):
            for k in range(n):
                s = koszul(f_parity, p[j])
                # omega(rho ad_i b_j, b_k) - s omega(b_j, rho ad_i b_k)
                row = []
                for a, c in unknowns:
                    value = ad[c][j] * omega_rows[a][k] - s * ad[c][k] * omega_rows[j][a]
                    row.append(value)
                rows.append(row)
    kernel = xl.nullspace(rows, len(unknowns))
    family = []
    for vector in kernel:
        matrix = xl.zeros(n, n)
        for (a, c), value in zip(unknowns, vector):
            matrix[a][c] = value
        family.append(Endomorphism(space, tuple(tuple(r) for r in matrix), rho_parity))
    if not family:
        return QuadraticExistence("no", witness="the linear system has only the zero solution")
    settings = get_settings()
    values = _sample_values(settings.sample_range)
    tried = 0
    for coefficients in itertools.product(values, repeat=len(family)):
        if tried >= settings.sample_cap:
            break
        tried += 1
        if all(c == 0 for c in coefficients):
            continue
        candidate = Endomorphism.zero(space, rho_parity)
        for c, f in zip(coefficients, family):
            if c:
                candidate = candidate + f * c
        if candidate.is_invertible():
            logger.info(f"quadratic_existence({alg.name}): yes, {len(family)}-dimensional family")
            return QuadraticExistence("yes", tuple(family), candidate)
    logger.info(f"quadratic_existence({alg.name}): inconclusive after {tried} samples")
    return QuadraticExistence("inconclusive", tuple(family), witness=f"no invertible member among {tried} samples")
