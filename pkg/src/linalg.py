"""
Exact linear algebra over QQ on top of sympy's DomainMatrix.
"""

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple
import logging

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


def _qq(value) -> object:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def qq_matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    """Dense DomainMatrix over QQ from rows of ints/Fractions."""
    return DomainMatrix([[_qq(x) for x in row] for row in rows], (len(rows), ncols), QQ)


def identity(n: int) -> DomainMatrix:
    return qq_matrix([[1 if r == c else 0 for c in range(n)] for r in range(n)], n)


def zero_matrix(nrows: int, ncols: int) -> DomainMatrix:
    return qq_matrix([[0] * ncols for _ in range(nrows)], ncols)


def to_rows(matrix: DomainMatrix) -> List[List[Fraction]]:
    nrows, ncols = matrix.shape
    entries = matrix.to_Matrix()
    return [[Fraction(int(entries[r, c].p), int(entries[r, c].q)) for c in range(ncols)] for r in range(nrows)]


def is_zero(matrix: DomainMatrix) -> bool:
    nrows, ncols = matrix.shape
    return matrix == zero_matrix(nrows, ncols)


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return qq_matrix(rows, ncols).rank()


def row_basis(rows: Sequence[Sequence], ncols: int) -> Tuple[Vector, ...]:
    """Nonzero rows of the reduced row echelon form: a canonical basis of the row span."""
    if not rows or ncols == 0:
        return ()
    reduced, pivots = qq_matrix(rows, ncols).rref()
    out = to_rows(reduced)
    return tuple(tuple(out[r]) for r in range(len(pivots)))


def sparse_rank(rows: Iterable[Mapping[Hashable, Fraction]]) -> int:
    """Rank of vectors given as sparse maps over an arbitrary hashable index set."""
    rows = [row for row in rows if any(c != 0 for c in row.values())]
    if not rows:
        return 0
    columns: Dict[Hashable, int] = {}
    for row in rows:
        for key in row:
            columns.setdefault(key, len(columns))
    dense = [[0] * len(columns) for _ in rows]
    for r, row in enumerate(rows):
        for key, c in row.items():
            dense[r][columns[key]] = c
    logger.debug(f"Rank of a {len(dense)} x {len(columns)} matrix over QQ")
    return rank(dense, len(columns))
