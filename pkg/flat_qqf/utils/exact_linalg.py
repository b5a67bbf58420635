"""Dense linear algebra over QQ on top of sympy's DomainMatrix.

Matrices are plain row lists of sympy Rationals; empty shapes are handled here
because DomainMatrix does not accept zero-sized inputs everywhere.
"""
from typing import List, Sequence, Tuple

from sympy import Poly, Rational, Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from flat_qqf.utils.rational_utils import ONE, ZERO

Row = List[Rational]
Rows = List[Row]


def _domain(rows: Sequence[Sequence[Rational]], ncols: int) -> DomainMatrix:
    converted = [[QQ.from_sympy(Rational(x)) for x in row] for row in rows]
    return DomainMatrix(converted, (len(rows), ncols), QQ)


def _to_rows(matrix: DomainMatrix) -> Rows:
    return [[QQ.to_sympy(x) for x in row] for row in matrix.to_list()]


def identity(n: int) -> Rows:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(nrows: int, ncols: int) -> Rows:
    return [[ZERO] * ncols for _ in range(nrows)]


def transpose(rows: Sequence[Sequence[Rational]], ncols: int) -> Rows:
    return [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]


def matmul(a: Sequence[Sequence[Rational]], b: Sequence[Sequence[Rational]], inner: int, ncols: int) -> Rows:
    if not a or inner == 0 or ncols == 0:
        return zeros(len(a), ncols)
    return _to_rows(_domain(a, inner).matmul(_domain(b, ncols)))


def matvec(a: Sequence[Sequence[Rational]], x: Sequence[Rational]) -> Row:
    if not a or not x:
        return [ZERO] * len(a)
    column = _domain(a, len(x)).matmul(_domain([[v] for v in x], 1))
    return [row[0] for row in _to_rows(column)]


def rref(rows: Sequence[Sequence[Rational]], ncols: int) -> Tuple[Rows, Tuple[int, ...]]:
    """Reduced row echelon form; returns only the nonzero rows and the pivot columns."""
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _domain(rows, ncols).rref()
    return _to_rows(reduced)[: len(pivots)], tuple(pivots)


def rank(rows: Sequence[Sequence[Rational]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Rational]], ncols: int) -> Rows:
    """Basis of {x : A x = 0}, one vector per free column, in column order."""
    reduced, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis: Rows = []
    for f in free:
        vector = [ZERO] * ncols
        vector[f] = ONE
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r][f]
        basis.append(vector)
    return basis


def inverse(rows: Sequence[Sequence[Rational]]) -> Rows:
    """Inverse of a square matrix; raises ValueError when singular."""
    n = len(rows)
    if n == 0:
        return []
    try:
        return _to_rows(_domain(rows, n).inv())
    except DMNonInvertibleMatrixError as exc:
        raise ValueError("Matrix is singular") from exc


def solve(rows: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> Row:
    """Unique solution of a square system A x = rhs; ValueError when A is singular."""
    inv = inverse(rows)
    return matvec(inv, rhs)


def rational_roots(rows: Sequence[Sequence[Rational]]) -> List[Rational]:
    """Distinct rational eigenvalues of a square matrix, read off the linear factors of its characteristic polynomial."""
    if not rows:
        return []
    x = Symbol("x")
    coefficients = [QQ.to_sympy(c) for c in _domain(rows, len(rows)).charpoly()]
    _, factors = Poly(coefficients, x, domain=QQ).factor_list()
    roots = []
    for factor, _ in factors:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            roots.append(-b / a)
    return sorted(set(roots))
