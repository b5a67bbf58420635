"""Lie superalgebras given by structure constants, with the usual subspaces."""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from sympy import Rational

from flat_qqf.errors import DimensionMismatch, DuplicateEntryError
from flat_qqf.report import Failure, ValidationReport, Verdict
from flat_qqf.superlinalg import (
    BilinearForm,
    Endomorphism,
    LinearMap,
    SuperSpace,
    SuperVector,
)
from flat_qqf.utils import exact_linalg as xl
from flat_qqf.utils.rational_utils import ZERO, koszul

logger = logging.getLogger(__name__)

VectorLike = Union[SuperVector, Mapping[str, Any]]


@dataclass(frozen=True)
class Subspace:
    """Subspace kept as the nonzero rows of its reduced echelon form."""
    space: SuperSpace
    rows: Tuple[Tuple[Rational, ...], ...]
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, space: SuperSpace, vectors: Iterable[SuperVector]) -> "Subspace":
        rows = [list(v.coefficients) for v in vectors]
        reduced, pivots = xl.rref(rows, space.dim)
        return cls(space, tuple(tuple(r) for r in reduced), tuple(pivots))

    @classmethod
    def from_rows(cls, space: SuperSpace, rows: Sequence[Sequence[Rational]]) -> "Subspace":
        reduced, pivots = xl.rref(rows, space.dim)
        return cls(space, tuple(tuple(r) for r in reduced), tuple(pivots))

    @classmethod
    def whole(cls, space: SuperSpace) -> "Subspace":
        return cls.span(space, space.basis())

    @classmethod
    def zero(cls, space: SuperSpace) -> "Subspace":
        return cls(space, (), ())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> List[SuperVector]:
        return [SuperVector(self.space, row) for row in self.rows]

    def contains(self, v: SuperVector) -> bool:
        if v.space != self.space:
            raise DimensionMismatch("vector and subspace live on different spaces")
        return xl.rank([list(r) for r in self.rows] + [list(v.coefficients)], self.space.dim) == self.dim

    def __str__(self) -> str:
        return "span{" + ", ".join(str(v) for v in self.basis()) + "}"


@dataclass(frozen=True)
class LieSuperalgebra:
    """Structure constants for pairs i <= j; the other half follows by graded antisymmetry."""
    space: SuperSpace
    brackets: Tuple[Tuple[Tuple[int, int], Tuple[Rational, ...]], ...]
    name: str = field(default="g", compare=False)

    @classmethod
    def abelian(cls, space: SuperSpace, name: str = "abelian") -> "LieSuperalgebra":
        return cls(space, (), name)

    @classmethod
    def from_brackets(
        cls,
        space: SuperSpace,
        entries: Iterable[Tuple[str, str, VectorLike]],
        name: str = "g",
    ) -> "LieSuperalgebra":
        """Entries are (left, right, value); a pair given out of order is flipped with its sign."""
        table: Dict[Tuple[int, int], Tuple[Rational, ...]] = {}
        for left, right, value in entries:
            vector = value if isinstance(value, SuperVector) else space.vector(value)
            i, j = space.index(left), space.index(right)
            if i > j:
                i, j = j, i
                vector = vector * (-koszul(space.parities[i], space.parities[j]))
            if (i, j) in table and table[(i, j)] != vector.coefficients:
                raise DuplicateEntryError(f"conflicting brackets given for [{left}, {right}]")
            table[(i, j)] = vector.coefficients
        return cls._from_table(space, table, name)

    @classmethod
    def from_function(
        cls, space: SuperSpace, fn: Callable[[SuperVector, SuperVector], SuperVector], name: str = "g"
    ) -> "LieSuperalgebra":
        basis = space.basis()
        table = {}
        for i in range(space.dim):
            for j in range(i, space.dim):
                table[(i, j)] = fn(basis[i], basis[j]).coefficients
        return cls._from_table(space, table, name)

    @classmethod
    def _from_table(cls, space, table, name) -> "LieSuperalgebra":
        stored = tuple(
            (key, tuple(coeffs)) for key, coeffs in sorted(table.items()) if any(c != 0 for c in coeffs)
        )
        return cls(space, stored, name)

    @cached_property
    def _table(self) -> List[List[Tuple[Rational, ...]]]:
        n = self.space.dim
        p = self.space.parities
        zero = (ZERO,) * n
        table = [[zero] * n for _ in range(n)]
        for (i, j), coeffs in self.brackets:
            table[i][j] = coeffs
            if i != j:
                s = -koszul(p[i], p[j])
                table[j][i] = tuple(s * c for c in coeffs)
        return table

    @property
    def dim(self) -> int:
        return self.space.dim

    def structure_vector(self, i: int, j: int) -> SuperVector:
        return SuperVector(self.space, self._table[i][j])

    def bracket_entries(self) -> List[Tuple[str, str, SuperVector]]:
        labels = self.space.labels
        return [(labels[i], labels[j], SuperVector(self.space, c)) for (i, j), c in self.brackets]

    def is_abelian(self) -> bool:
        return not self.brackets

    def bracket(self, u: SuperVector, v: SuperVector) -> SuperVector:
        if u.space != self.space or v.space != self.space:
            raise DimensionMismatch(f"bracket arguments do not live in {self.name}")
        n = self.space.dim
        out = [ZERO] * n
        for i, a in enumerate(u.coefficients):
            if a == 0:
                continue
            row = self._table[i]
            for j, b in enumerate(v.coefficients):
                if b == 0:
                    continue
                coeffs = row[j]
                ab = a * b
                for m in range(n):
                    if coeffs[m] != 0:
                        out[m] += ab * coeffs[m]
        return SuperVector(self.space, tuple(out))

    def _ad_rows(self, i: int) -> List[List[Rational]]:
        n = self.space.dim
        return [[self._table[i][j][m] for j in range(n)] for m in range(n)]

    def ad(self, u: SuperVector) -> Endomorphism:
        """ad_u, of parity |u|."""
        parity = u.parity
        return Endomorphism.from_function(self.space, lambda v: self.bracket(u, v), parity)


def validate_lie(alg: LieSuperalgebra) -> ValidationReport:
    """Parity of every structure vector, vanishing even squares, and super-Jacobi on basis triples."""
    space = alg.space
    labels, p = space.labels, space.parities
    n = space.dim
    failures: List[Failure] = []
    for (i, j), coeffs in alg.brackets:
        expected = (p[i] + p[j]) % 2
        bad = [labels[m] for m, c in enumerate(coeffs) if c != 0 and p[m] != expected]
        if bad:
            failures.append(Failure("bracket-parity", (labels[i], labels[j]), f"components on {', '.join(bad)}"))
        if i == j and p[i] == 0:
            failures.append(Failure("antisymmetry", (labels[i], labels[i]), "even square is nonzero"))
    ads = [alg._ad_rows(i) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            s = koszul(p[i], p[j])
            lhs = [[ZERO] * n for _ in range(n)]
            for m, c in enumerate(alg._table[i][j]):
                if c != 0:
                    for r in range(n):
                        for k in range(n):
                            lhs[r][k] += c * ads[m][r][k]
            ij = xl.matmul(ads[i], ads[j], n, n)
            ji = xl.matmul(ads[j], ads[i], n, n)
            for k in range(n):
                column = [lhs[r][k] - ij[r][k] + s * ji[r][k] for r in range(n)]
                if any(x != 0 for x in column):
                    residue = SuperVector(space, tuple(column))
                    failures.append(Failure("jacobi", (labels[i], labels[j], labels[k]), f"defect {residue}"))
    report = ValidationReport(alg.name, tuple(failures))
    logger.debug(f"validate_lie({alg.name}): {len(failures)} failure(s)")
    return report


def center(alg: LieSuperalgebra) -> Subspace:
    """Kernel of u -> ([u, b_j])_j."""
    n = alg.dim
    rows = []
    for j in range(n):
        for m in range(n):
            rows.append([alg._table[i][j][m] for i in range(n)])
    return Subspace.from_rows(alg.space, xl.nullspace(rows, n))


def derived(alg: LieSuperalgebra) -> Subspace:
    return Subspace.span(alg.space, [SuperVector(alg.space, c) for _, c in alg.brackets])


def perp(sub: Subspace, B: BilinearForm) -> Subspace:
    """{u : B(u, s) = 0 for every s in sub}."""
    B.require_nondegenerate("form used for an orthogonal complement")
    rows = [[B(b, s) for b in B.space.basis()] for s in sub.basis()]
    return Subspace.from_rows(B.space, xl.nullspace(rows, B.space.dim) if rows else xl.identity(B.space.dim))


def is_derivation(f: Endomorphism, alg: LieSuperalgebra) -> Verdict:
    """Graded Leibniz rule f[u,v] = [f u, v] + (-1)^{|f||u|} [u, f v] on basis pairs."""
    basis = alg.space.basis()
    labels = alg.space.labels
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            left = f(alg.bracket(u, v))
            right = alg.bracket(f(u), v) + alg.bracket(u, f(v)) * koszul(f.parity, u.parity)
            if left != right:
                return Verdict(False, (labels[i], labels[j]), f"f[u,v] = {left} but Leibniz gives {right}")
    return Verdict(True)


def restrict_to(alg: LieSuperalgebra, vectors: Sequence[SuperVector], space: SuperSpace, project, name: str) -> LieSuperalgebra:
    """Bracket of ``vectors`` followed by ``project`` into coordinates on ``space``."""
    return LieSuperalgebra.from_function(
        space, lambda u, v: project(alg.bracket(_combine(vectors, u), _combine(vectors, v))), name
    )


def _combine(vectors: Sequence[SuperVector], coords: SuperVector) -> SuperVector:
    total = vectors[0].space.zero() if vectors else None
    for c, v in zip(coords.coefficients, vectors):
        if c != 0:
            total = total + v * c
    return total


def homomorphism_failures(phi: LinearMap, source: LieSuperalgebra, target: LieSuperalgebra) -> List[Failure]:
    """Basis pairs where phi[u, v] differs from [phi u, phi v]."""
    failures = []
    labels = source.space.labels
    basis = source.space.basis()
    for i, u in enumerate(basis):
        for j in range(i, len(basis)):
            v = basis[j]
            if phi(source.bracket(u, v)) != target.bracket(phi(u), phi(v)):
                failures.append(Failure("witness-bracket", (labels[i], labels[j])))
    return failures


def form_pullback_failures(phi: LinearMap, source_form: BilinearForm, target_form: BilinearForm, check: str) -> List[Failure]:
    failures = []
    labels = source_form.space.labels
    basis = source_form.space.basis()
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            if source_form(u, v) != target_form(phi(u), phi(v)):
                failures.append(Failure(check, (labels[i], labels[j])))
    return failures


def intertwining_failures(phi: LinearMap, source_map: Endomorphism, target_map: Endomorphism, check: str) -> List[Failure]:
    failures = []
    for label, u in zip(source_map.space.labels, source_map.space.basis()):
        if phi(source_map(u)) != target_map(phi(u)):
            failures.append(Failure(check, (label,)))
    return failures


def check_isomorphism(phi: LinearMap, source: LieSuperalgebra, target: LieSuperalgebra) -> ValidationReport:
    failures = []
    if not phi.is_invertible():
        failures.append(Failure("witness-invertible", (), "witness is singular"))
    if not phi.is_even():
        failures.append(Failure("witness-parity", (), "witness does not preserve parity"))
    failures.extend(homomorphism_failures(phi, source, target))
    return ValidationReport(f"{source.name} -> {target.name}", tuple(failures))
