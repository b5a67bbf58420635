"""Graded linear algebra over the rationals.

Parities are the ints 0 (even) and 1 (odd). Endomorphism matrices are indexed
``matrix[target][source]`` so the matrix unit E_{i,j} sends b_j to b_i. Bilinear
forms store raw values B(b_i, b_j); the parity-prefactored Gram matrix is a
derived view.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Rational

from flat_qqf.errors import (
    BasisError,
    DimensionMismatch,
    DuplicateEntryError,
    FlatQQFError,
    HomogeneityError,
    SingularEndomorphism,
    SingularFormError,
)
from flat_qqf.report import Failure, ValidationReport
from flat_qqf.utils import exact_linalg as xl
from flat_qqf.utils.rational_utils import ONE, ZERO, format_rational, koszul, sign, to_rational

logger = logging.getLogger(__name__)

SYMMETRIES = ("symmetric", "antisymmetric", "none")


def parity_sum(*parities: int) -> int:
    return sum(parities) % 2


# ---------------------------------------------------------------------------
# Spaces and vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuperSpace:
    """Ordered homogeneous basis, even vectors first."""
    labels: Tuple[str, ...]
    parities: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "parities", tuple(int(p) for p in self.parities))
        if len(self.labels) != len(self.parities):
            raise BasisError("labels and parities differ in length")
        if any(p not in (0, 1) for p in self.parities):
            raise BasisError(f"parities must be 0 or 1, got {self.parities}")
        if len(set(self.labels)) != len(self.labels):
            raise BasisError(f"duplicate basis labels in {self.labels}")
        if list(self.parities) != sorted(self.parities):
            raise BasisError("even basis vectors must precede odd ones")

    @classmethod
    def from_basis(cls, basis: Iterable[Tuple[str, int]]) -> Tuple["SuperSpace", Tuple[int, ...]]:
        """Canonicalise an arbitrary basis; ``perm[new_index]`` is the old index."""
        items = list(basis)
        perm = tuple(sorted(range(len(items)), key=lambda i: (int(items[i][1]), i)))
        space = cls(tuple(items[i][0] for i in perm), tuple(int(items[i][1]) for i in perm))
        return space, perm

    @classmethod
    def trivial(cls) -> "SuperSpace":
        return cls((), ())

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def even_dim(self) -> int:
        return self.parities.count(0)

    @property
    def odd_dim(self) -> int:
        return self.parities.count(1)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise BasisError(f"unknown basis label {label!r}") from None

    def basis_vector(self, key) -> "SuperVector":
        i = key if isinstance(key, int) else self.index(key)
        coefficients = [ZERO] * self.dim
        coefficients[i] = ONE
        return SuperVector(self, tuple(coefficients))

    def basis(self) -> List["SuperVector"]:
        return [self.basis_vector(i) for i in range(self.dim)]

    def zero(self) -> "SuperVector":
        return SuperVector(self, (ZERO,) * self.dim)

    def vector(self, values: Mapping[str, Any]) -> "SuperVector":
        coefficients = [ZERO] * self.dim
        for label, value in values.items():
            coefficients[self.index(label)] += to_rational(value)
        return SuperVector(self, tuple(coefficients))

    def covector(self, values: Mapping[str, Any]) -> "Covector":
        return Covector.from_vector(self.vector(values))

    def dual(self, label: str) -> "Covector":
        return Covector.from_vector(self.basis_vector(label))


def _same_space(a, b) -> None:
    if a.space != b.space:
        raise DimensionMismatch(f"objects live on different spaces ({a.space.labels} vs {b.space.labels})")


@dataclass(frozen=True)
class SuperVector:
    space: SuperSpace
    coefficients: Tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(to_rational(c) for c in self.coefficients))
        if len(self.coefficients) != self.space.dim:
            raise DimensionMismatch(f"{len(self.coefficients)} coefficients for a {self.space.dim}-dim space")

    def _new(self, coefficients) -> "SuperVector":
        return type(self)(self.space, tuple(coefficients))

    def __add__(self, other: "SuperVector") -> "SuperVector":
        _same_space(self, other)
        return self._new(a + b for a, b in zip(self.coefficients, other.coefficients))

    def __sub__(self, other: "SuperVector") -> "SuperVector":
        _same_space(self, other)
        return self._new(a - b for a, b in zip(self.coefficients, other.coefficients))

    def __neg__(self) -> "SuperVector":
        return self._new(-a for a in self.coefficients)

    def __mul__(self, scalar) -> "SuperVector":
        scalar = to_rational(scalar)
        return self._new(scalar * a for a in self.coefficients)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "SuperVector":
        return self * (ONE / to_rational(scalar))

    def __getitem__(self, key) -> Rational:
        i = key if isinstance(key, int) else self.space.index(key)
        return self.coefficients[i]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def support_parities(self) -> set:
        return {self.space.parities[i] for i, c in enumerate(self.coefficients) if c != 0}

    def is_homogeneous(self) -> bool:
        return len(self.support_parities()) <= 1

    @property
    def parity(self) -> int:
        """Parity of a homogeneous vector; the zero vector counts as even."""
        support = self.support_parities()
        if len(support) > 1:
            raise HomogeneityError(f"vector {self} is not homogeneous")
        return support.pop() if support else 0

    def even_part(self) -> "SuperVector":
        return self._new(c if p == 0 else ZERO for c, p in zip(self.coefficients, self.space.parities))

    def odd_part(self) -> "SuperVector":
        return self._new(c if p == 1 else ZERO for c, p in zip(self.coefficients, self.space.parities))

    def as_dict(self) -> Dict[str, Rational]:
        return {label: c for label, c in zip(self.space.labels, self.coefficients) if c != 0}

    def __str__(self) -> str:
        terms = []
        for label, c in self.as_dict().items():
            if c == 1:
                terms.append(label)
            elif c == -1:
                terms.append(f"-{label}")
            else:
                terms.append(f"{format_rational(c)}*{label}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


@dataclass(frozen=True)
class Covector(SuperVector):
    """Linear functional in the dual basis; b_i* has the parity of b_i."""

    @classmethod
    def from_vector(cls, vector: SuperVector) -> "Covector":
        return cls(vector.space, vector.coefficients)

    def __call__(self, v: SuperVector) -> Rational:
        _same_space(self, v)
        return sum((a * b for a, b in zip(self.coefficients, v.coefficients) if a != 0 and b != 0), ZERO)


# ---------------------------------------------------------------------------
# Linear maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Endomorphism:
    space: SuperSpace
    matrix: Tuple[Tuple[Rational, ...], ...]
    parity: int = 0

    def __post_init__(self):
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "parity", int(self.parity) % 2)
        n = self.space.dim
        if len(rows) != n or any(len(row) != n for row in rows):
            raise DimensionMismatch(f"endomorphism matrix is not {n}x{n}")
        p = self.space.parities
        for i in range(n):
            for j in range(n):
                if rows[i][j] != 0 and p[i] != (p[j] + self.parity) % 2:
                    raise HomogeneityError(
                        f"entry ({self.space.labels[i]}, {self.space.labels[j]}) breaks parity {self.parity}"
                    )

    @classmethod
    def zero(cls, space: SuperSpace, parity: int = 0) -> "Endomorphism":
        return cls(space, tuple(tuple(r) for r in xl.zeros(space.dim, space.dim)), parity)

    @classmethod
    def identity(cls, space: SuperSpace) -> "Endomorphism":
        return cls(space, tuple(tuple(r) for r in xl.identity(space.dim)), 0)

    @classmethod
    def parity_operator(cls, space: SuperSpace) -> "Endomorphism":
        """The even map u -> (-1)^|u| u."""
        rows = xl.zeros(space.dim, space.dim)
        for i, p in enumerate(space.parities):
            rows[i][i] = sign(p)
        return cls(space, tuple(tuple(r) for r in rows), 0)

    @classmethod
    def from_units(cls, space: SuperSpace, entries: Iterable[Tuple[str, str, Any]], parity: Optional[int] = None) -> "Endomorphism":
        """Build from (target, source, value) triples; E_{t,s} maps s to t."""
        rows = xl.zeros(space.dim, space.dim)
        seen = {}
        for target, source, value in entries:
            i, j = space.index(target), space.index(source)
            value = to_rational(value)
            if (i, j) in seen and seen[(i, j)] != value:
                raise DuplicateEntryError(f"conflicting values for matrix entry ({target}, {source})")
            seen[(i, j)] = value
            rows[i][j] = value
        if parity is None:
            parity = next(
                ((space.parities[i] + space.parities[j]) % 2 for (i, j), v in seen.items() if v != 0),
                0,
            )
        return cls(space, tuple(tuple(r) for r in rows), parity)

    @classmethod
    def from_images(cls, space: SuperSpace, images: Mapping[str, SuperVector], parity: int) -> "Endomorphism":
        rows = xl.zeros(space.dim, space.dim)
        for label, image in images.items():
            j = space.index(label)
            for i, c in enumerate(image.coefficients):
                rows[i][j] = c
        return cls(space, tuple(tuple(r) for r in rows), parity)

    @classmethod
    def from_function(cls, space: SuperSpace, fn: Callable[[SuperVector], SuperVector], parity: int) -> "Endomorphism":
        return cls.from_images(space, {label: fn(space.basis_vector(label)) for label in space.labels}, parity)

    def __call__(self, v: SuperVector) -> SuperVector:
        _same_space(self, v)
        return SuperVector(self.space, tuple(xl.matvec(self.matrix, v.coefficients)))

    def column(self, key) -> SuperVector:
        j = key if isinstance(key, int) else self.space.index(key)
        return SuperVector(self.space, tuple(row[j] for row in self.matrix))

    def entry(self, target: str, source: str) -> Rational:
        return self.matrix[self.space.index(target)][self.space.index(source)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def _combined_parity(self, other: "Endomorphism") -> int:
        if self.is_zero():
            return other.parity
        if other.is_zero() or self.parity == other.parity:
            return self.parity
        raise HomogeneityError("cannot add endomorphisms of different parity")

    def __add__(self, other: "Endomorphism") -> "Endomorphism":
        _same_space(self, other)
        rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)]
        return Endomorphism(self.space, tuple(tuple(r) for r in rows), self._combined_parity(other))

    def __sub__(self, other: "Endomorphism") -> "Endomorphism":
        return self + (-other)

    def __neg__(self) -> "Endomorphism":
        return Endomorphism(self.space, tuple(tuple(-x for x in r) for r in self.matrix), self.parity)

    def __mul__(self, scalar) -> "Endomorphism":
        scalar = to_rational(scalar)
        return Endomorphism(self.space, tuple(tuple(scalar * x for x in r) for r in self.matrix), self.parity)

    __rmul__ = __mul__

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """self after other; parities add."""
        _same_space(self, other)
        n = self.space.dim
        rows = xl.matmul(self.matrix, other.matrix, n, n)
        return Endomorphism(self.space, tuple(tuple(r) for r in rows), parity_sum(self.parity, other.parity))

    __matmul__ = compose

    def supercommutator(self, other: "Endomorphism") -> "Endomorphism":
        """[f, g] = f g - (-1)^{|f||g|} g f."""
        return self @ other - (other @ self) * koszul(self.parity, other.parity)

    def is_invertible(self) -> bool:
        return xl.rank(self.matrix, self.space.dim) == self.space.dim

    def inverse(self) -> "Endomorphism":
        try:
            rows = xl.inverse(self.matrix)
        except ValueError:
            raise SingularEndomorphism("endomorphism is not invertible") from None
        return Endomorphism(self.space, tuple(tuple(r) for r in rows), self.parity)

    def as_entries(self) -> List[Tuple[str, str, Rational]]:
        labels = self.space.labels
        return [
            (labels[i], labels[j], x)
            for i, row in enumerate(self.matrix)
            for j, x in enumerate(row)
            if x != 0
        ]

    def __str__(self) -> str:
        terms = [f"{format_rational(x)}*E({t},{s})" for t, s, x in self.as_entries()]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class LinearMap:
    """Map between two superspaces; used as the basis-change witness of reductions."""
    source: SuperSpace
    target: SuperSpace
    matrix: Tuple[Tuple[Rational, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        if len(rows) != self.target.dim or any(len(row) != self.source.dim for row in rows):
            raise DimensionMismatch(f"linear map matrix is not {self.target.dim}x{self.source.dim}")

    @classmethod
    def from_images(cls, source: SuperSpace, target: SuperSpace, images: Sequence[SuperVector]) -> "LinearMap":
        rows = xl.zeros(target.dim, source.dim)
        for j, image in enumerate(images):
            if image.space != target:
                raise DimensionMismatch("image does not live in the target space")
            for i, c in enumerate(image.coefficients):
                rows[i][j] = c
        return cls(source, target, tuple(tuple(r) for r in rows))

    def __call__(self, v: SuperVector) -> SuperVector:
        if v.space != self.source:
            raise DimensionMismatch("vector does not live in the source space")
        return SuperVector(self.target, tuple(xl.matvec(self.matrix, v.coefficients)))

    def compose(self, other: "LinearMap") -> "LinearMap":
        if other.target != self.source:
            raise DimensionMismatch("maps are not composable")
        rows = xl.matmul(self.matrix, other.matrix, self.source.dim, other.source.dim)
        return LinearMap(other.source, self.target, tuple(tuple(r) for r in rows))

    def is_even(self) -> bool:
        sp, tp = self.source.parities, self.target.parities
        return all(x == 0 or tp[i] == sp[j] for i, row in enumerate(self.matrix) for j, x in enumerate(row))

    def is_invertible(self) -> bool:
        return self.source.dim == self.target.dim and xl.rank(self.matrix, self.source.dim) == self.source.dim

    def inverse(self) -> "LinearMap":
        try:
            rows = xl.inverse(self.matrix) if self.source.dim == self.target.dim else None
        except ValueError:
            rows = None
        if rows is None:
            raise SingularEndomorphism("linear map is not invertible")
        return LinearMap(self.target, self.source, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# Bilinear forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BilinearForm:
    """Homogeneous bilinear form stored by its raw values B(b_i, b_j).

    Construction is lenient; use ``validate`` to list homogeneity and symmetry
    violations.
    """
    space: SuperSpace
    values: Tuple[Tuple[Rational, ...], ...]
    parity: int = 0
    symmetry: str = "none"

    def __post_init__(self):
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.values)
        object.__setattr__(self, "values", rows)
        object.__setattr__(self, "parity", int(self.parity) % 2)
        n = self.space.dim
        if len(rows) != n or any(len(row) != n for row in rows):
            raise DimensionMismatch(f"form table is not {n}x{n}")
        if self.symmetry not in SYMMETRIES:
            raise ValueError(f"symmetry must be one of {SYMMETRIES}, got {self.symmetry!r}")

    @classmethod
    def zero(cls, space: SuperSpace, parity: int = 0, symmetry: str = "none") -> "BilinearForm":
        return cls(space, tuple(tuple(r) for r in xl.zeros(space.dim, space.dim)), parity, symmetry)

    @classmethod
    def from_entries(
        cls,
        space: SuperSpace,
        entries: Iterable[Tuple[str, str, Any]],
        parity: int,
        symmetry: str = "none",
    ) -> "BilinearForm":
        rows = xl.zeros(space.dim, space.dim)
        seen = {}
        for left, right, value in entries:
            i, j = space.index(left), space.index(right)
            value = to_rational(value)
            if (i, j) in seen and seen[(i, j)] != value:
                raise DuplicateEntryError(f"conflicting values for form entry ({left}, {right})")
            seen[(i, j)] = value
            rows[i][j] = value
        return cls(space, tuple(tuple(r) for r in rows), parity, symmetry)

    def __call__(self, u: SuperVector, v: SuperVector) -> Rational:
        _same_space(self, u)
        _same_space(self, v)
        total = ZERO
        for i, a in enumerate(u.coefficients):
            if a == 0:
                continue
            row = self.values[i]
            for j, b in enumerate(v.coefficients):
                if b != 0 and row[j] != 0:
                    total += a * row[j] * b
        return total

    def value(self, left: str, right: str) -> Rational:
        return self.values[self.space.index(left)][self.space.index(right)]

    def entries(self) -> List[Tuple[str, str, Rational]]:
        labels = self.space.labels
        return [(labels[i], labels[j], x) for i, row in enumerate(self.values) for j, x in enumerate(row) if x != 0]

    def gram(self) -> List[List[Rational]]:
        """Gram matrix with the prefactor (-1)^{p(B) p(b_i)} on row i."""
        p = self.space.parities
        return [[sign(self.parity * p[i]) * x for x in row] for i, row in enumerate(self.values)]

    def covector(self, u: SuperVector) -> Covector:
        """The functional w -> B(u, w)."""
        return Covector(self.space, tuple(self(u, b) for b in self.space.basis()))

    def is_nondegenerate(self) -> bool:
        return xl.rank(self.values, self.space.dim) == self.space.dim

    def require_nondegenerate(self, what: str = "form") -> None:
        if not self.is_nondegenerate():
            raise SingularFormError(f"{what} is degenerate")

    def homogeneity_failures(self) -> List[Failure]:
        labels, p = self.space.labels, self.space.parities
        return [
            Failure("form-homogeneity", (labels[i], labels[j]), f"value {format_rational(x)} on a pair of parity {(p[i] + p[j]) % 2}")
            for i, row in enumerate(self.values)
            for j, x in enumerate(row)
            if x != 0 and (p[i] + p[j]) % 2 != self.parity
        ]

    def symmetry_failures(self) -> List[Failure]:
        if self.symmetry == "none":
            return []
        factor = 1 if self.symmetry == "symmetric" else -1
        labels, p = self.space.labels, self.space.parities
        failures = []
        for i in range(self.space.dim):
            for j in range(i, self.space.dim):
                expected = factor * koszul(p[i], p[j]) * self.values[j][i]
                if self.values[i][j] != expected:
                    failures.append(
                        Failure(f"form-{self.symmetry}", (labels[i], labels[j]),
                                f"B = {format_rational(self.values[i][j])}, transposed gives {format_rational(expected)}")
                    )
        return failures

    def validate(self, name: str = "form") -> ValidationReport:
        return ValidationReport(name, tuple(self.homogeneity_failures() + self.symmetry_failures()))

    def _with(self, rows, parity=None, symmetry=None) -> "BilinearForm":
        return BilinearForm(
            self.space,
            tuple(tuple(r) for r in rows),
            self.parity if parity is None else parity,
            self.symmetry if symmetry is None else symmetry,
        )

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        _same_space(self, other)
        symmetry = self.symmetry if self.symmetry == other.symmetry else "none"
        return self._with([[a + b for a, b in zip(r, s)] for r, s in zip(self.values, other.values)], symmetry=symmetry)

    def __neg__(self) -> "BilinearForm":
        return self._with([[-x for x in r] for r in self.values])

    def __sub__(self, other: "BilinearForm") -> "BilinearForm":
        return self + (-other)

    def __mul__(self, scalar) -> "BilinearForm":
        scalar = to_rational(scalar)
        return self._with([[scalar * x for x in r] for r in self.values])

    __rmul__ = __mul__

    def restrict(self, vectors: Sequence[SuperVector], space: SuperSpace) -> "BilinearForm":
        """The form on ``space`` whose basis vector k stands for ``vectors[k]``."""
        rows = [[self(u, v) for v in vectors] for u in vectors]
        return BilinearForm(space, tuple(tuple(r) for r in rows), self.parity, self.symmetry)


def pair_dual(dual: Tuple[Covector, Covector], tensor: Tuple[SuperVector, SuperVector]) -> Rational:
    """<x*(x)y*, u(x)v> = (-1)^{|y||u|} x*(u) y*(v)."""
    x_star, y_star = dual
    u, v = tensor
    for item in (x_star, y_star, u, v):
        if not item.is_homogeneous():
            raise HomogeneityError(f"pair_dual needs homogeneous factors, got {item}")
    return koszul(y_star.parity, u.parity) * x_star(u) * y_star(v)


def _graded_product(f: Covector, g: Covector, plus: bool) -> BilinearForm:
    _same_space(f, g)
    space = f.space
    twist = koszul(f.parity, g.parity)
    basis = space.basis()
    rows = []
    for bi in basis:
        row = []
        for bj in basis:
            first = pair_dual((f, g), (bi, bj))
            second = pair_dual((g, f), (bi, bj))
            row.append(first + twist * second if plus else first - twist * second)
        rows.append(row)
    symmetry = "symmetric" if plus else "antisymmetric"
    return BilinearForm(space, tuple(tuple(r) for r in rows), parity_sum(f.parity, g.parity), symmetry)


def wedge(f: Covector, g: Covector) -> BilinearForm:
    return _graded_product(f, g, plus=False)


def odot(f: Covector, g: Covector) -> BilinearForm:
    return _graded_product(f, g, plus=True)


def _upsetting_gram_blocks(B: BilinearForm) -> List[List[Rational]]:
    """Gram matrix of u(B) assembled from the blocks of gram(B)."""
    G = B.gram()
    p = B.space.parities
    s = sign(B.parity)
    n = B.space.dim
    out = xl.zeros(n, n)
    for i in range(n):
        for j in range(n):
            if p[i] == 0 and p[j] == 0:
                out[i][j] = G[j][i]
            elif p[i] == 1 and p[j] == 1:
                out[i][j] = -G[j][i]
            else:
                out[i][j] = s * G[j][i]
    return out


def upsetting(B: BilinearForm) -> BilinearForm:
    """u(B)(b_i, b_j) = (-1)^{|b_i||b_j|} B(b_j, b_i), cross-checked against the Gram block formula."""
    p = B.space.parities
    n = B.space.dim
    rows = [[koszul(p[i], p[j]) * B.values[j][i] for j in range(n)] for i in range(n)]
    result = BilinearForm(B.space, tuple(tuple(r) for r in rows), B.parity, B.symmetry)
    if result.gram() != _upsetting_gram_blocks(B):
        raise FlatQQFError("upsetting disagrees with the Gram block formula")
    return result


def adjoint(f: Endomorphism, B: BilinearForm) -> Endomorphism:
    """f* with B(f v, w) = (-1)^{|f||v|} B(v, f* w) on all basis pairs."""
    _same_space(f, B)
    n = B.space.dim
    try:
        m_inv = xl.inverse(B.values)
    except ValueError:
        raise SingularFormError("adjoint needs a nondegenerate form") from None
    ft = xl.transpose(f.matrix, n)
    p = B.space.parities
    signed = [[sign(f.parity * p[j]) * x for x in ft[j]] for j in range(n)]
    rows = xl.matmul(m_inv, xl.matmul(signed, B.values, n, n), n, n)
    return Endomorphism(B.space, tuple(tuple(r) for r in rows), f.parity)


def solve_against_form(B: BilinearForm, rhs: Covector) -> SuperVector:
    """The unique x with B(x, b_k) = rhs(b_k) for every basis vector b_k."""
    _same_space(B, rhs)
    n = B.space.dim
    try:
        x = xl.solve(xl.transpose(B.values, n), rhs.coefficients)
    except ValueError:
        raise SingularFormError("cannot solve against a degenerate form") from None
    return SuperVector(B.space, tuple(x))
