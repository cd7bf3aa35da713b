"""
Datum Module
Borcherds-Cartan data: validation, the symmetric bilinear form and the graph orientation.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging

from src.errors import (
    BadOrientation,
    MalformedDatum,
    NotSymmetrizable,
    OddDiagonal,
    PositiveOffDiagonal,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndexClass:
    """Split of the index set into real (a_ii = 2) and imaginary (a_ii <= 0) labels."""

    i_plus: Tuple[str, ...]
    i_minus: Tuple[str, ...]


@dataclass(frozen=True)
class BorcherdsCartanDatum:
    """
    A validated Borcherds-Cartan datum.

    Labels are opaque strings; every lookup goes through the label position.
    Instances are immutable and hashable so they can key caches.
    """

    indices: Tuple[str, ...]
    A: Tuple[Tuple[int, ...], ...]
    D: Tuple[int, ...]
    orientation: FrozenSet[Tuple[str, str]] = field(default_factory=frozenset)

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {label: p for p, label in enumerate(self.indices)}

    @property
    def rank(self) -> int:
        return len(self.indices)

    def position(self, label: str) -> int:
        try:
            return self._positions[label]
        except KeyError:
            raise MalformedDatum(f"Unknown index label: {label!r}")

    def a(self, i: str, j: str) -> int:
        return self.A[self.position(i)][self.position(j)]

    def r(self, i: str) -> int:
        return self.D[self.position(i)]

    def bilinear(self, i: str, j: str) -> int:
        """i . j = r_i a_ij."""
        return self.D[self.position(i)] * self.A[self.position(i)][self.position(j)]

    def is_real(self, i: str) -> bool:
        return self.a(i, i) == 2

    @cached_property
    def index_class(self) -> IndexClass:
        return IndexClass(
            i_plus=tuple(i for i in self.indices if self.is_real(i)),
            i_minus=tuple(i for i in self.indices if not self.is_real(i)),
        )

    def has_arrow(self, i: str, j: str) -> bool:
        return (i, j) in self.orientation

    def to_dict(self) -> Dict:
        return {
            "indices": list(self.indices),
            "A": [list(row) for row in self.A],
            "D": list(self.D),
            "orientation": sorted([list(edge) for edge in self.orientation],
                                  key=lambda e: (self.position(e[0]), self.position(e[1]))),
        }


def bilinear(datum: BorcherdsCartanDatum, i: str, j: str) -> int:
    return datum.bilinear(i, j)


def find_symmetrizer(A: Sequence[Sequence[int]]) -> Optional[List[int]]:
    """
    Find the smallest positive D with DA symmetric.

    Ratios r_j / r_i = a_ij / a_ji are propagated along the connected components of the
    graph with an edge wherever a_ij != 0, then each component is scaled to coprime integers.

    Args:
        A: square integer matrix

    Returns:
        List of positive integers, or None when no symmetrizer exists
    """
    n = len(A)
    ratios: List[Optional[Fraction]] = [None] * n

    for start in range(n):
        if ratios[start] is not None:
            continue
        ratios[start] = Fraction(1)
        component = [start]
        stack = [start]
        while stack:
            p = stack.pop()
            for q in range(n):
                if q == p:
                    continue
                if (A[p][q] == 0) != (A[q][p] == 0):
                    logger.debug(f"Zero pattern of A is not symmetric at ({p}, {q})")
                    return None
                if A[p][q] == 0:
                    continue
                expected = ratios[p] * Fraction(A[p][q], A[q][p])
                if ratios[q] is None:
                    ratios[q] = expected
                    component.append(q)
                    stack.append(q)
                elif ratios[q] != expected:
                    logger.debug(f"Inconsistent ratio r_{q} / r_{start} around a cycle")
                    return None

        scale = lcm(*(ratios[p].denominator for p in component))
        for p in component:
            ratios[p] *= scale
        common = 0
        for p in component:
            common = gcd(common, ratios[p].numerator)
        for p in component:
            ratios[p] /= common

    return [int(r) for r in ratios]


def _default_orientation(indices: Tuple[str, ...], A) -> FrozenSet[Tuple[str, str]]:
    edges = set()
    for p in range(len(indices)):
        for q in range(p + 1, len(indices)):
            if A[p][q] != 0:
                edges.add((indices[p], indices[q]))
    return frozenset(edges)


def validate_datum(
    A: Sequence[Sequence[int]],
    D: Optional[Sequence[int]] = None,
    indices: Optional[Iterable[str]] = None,
    orientation: Optional[Iterable[Sequence[str]]] = None,
) -> BorcherdsCartanDatum:
    """
    Validate raw datum data and build a BorcherdsCartanDatum.

    Args:
        A: square integer matrix
        D: symmetrizer; derived with find_symmetrizer when omitted
        indices: labels, defaulting to "i0", "i1", ...
        orientation: edges as (source, target) label pairs; defaults to lower
            list position -> higher

    Returns:
        BorcherdsCartanDatum

    Raises:
        MalformedDatum, OddDiagonal, PositiveOffDiagonal, NotSymmetrizable, BadOrientation
    """
    n = len(A)
    try:
        matrix = tuple(tuple(int(x) for x in row) for row in A)
    except (TypeError, ValueError) as e:
        raise MalformedDatum(f"Matrix entries must be integers: {str(e)}")
    if any(len(row) != n for row in matrix):
        raise MalformedDatum(f"Matrix must be square, got rows of lengths {[len(r) for r in matrix]}")

    labels = tuple(str(x) for x in indices) if indices is not None else tuple(f"i{p}" for p in range(n))
    if len(labels) != n or len(set(labels)) != n:
        raise MalformedDatum(f"Need {n} distinct index labels, got {list(labels)}")

    for p in range(n):
        a_pp = matrix[p][p]
        if a_pp % 2 != 0 or a_pp > 2:
            raise OddDiagonal(f"Diagonal entry a_{labels[p]}{labels[p]} = {a_pp} is not in {{2, 0, -2, ...}}")
    for p in range(n):
        for q in range(n):
            if p != q and matrix[p][q] > 0:
                raise PositiveOffDiagonal(f"Off-diagonal entry a_{labels[p]}{labels[q]} = {matrix[p][q]} > 0")

    if D is None:
        found = find_symmetrizer(matrix)
        if found is None:
            raise NotSymmetrizable("No positive symmetrizer exists for this matrix")
        symmetrizer = tuple(found)
    else:
        symmetrizer = tuple(int(r) for r in D)
        if len(symmetrizer) != n:
            raise MalformedDatum(f"Symmetrizer has length {len(symmetrizer)}, expected {n}")
        if any(r <= 0 for r in symmetrizer):
            raise NotSymmetrizable(f"Symmetrizer entries must be positive: {list(symmetrizer)}")
        for p in range(n):
            for q in range(p + 1, n):
                if symmetrizer[p] * matrix[p][q] != symmetrizer[q] * matrix[q][p]:
                    raise NotSymmetrizable(
                        f"r_{labels[p]} a_{labels[p]}{labels[q]} = {symmetrizer[p] * matrix[p][q]} "
                        f"but r_{labels[q]} a_{labels[q]}{labels[p]} = {symmetrizer[q] * matrix[q][p]}"
                    )

    if orientation is None:
        edges = _default_orientation(labels, matrix)
        logger.debug(f"Default orientation {sorted(edges)}")
    else:
        edges = _check_orientation(labels, matrix, orientation)

    return BorcherdsCartanDatum(indices=labels, A=matrix, D=symmetrizer, orientation=edges)


def _check_orientation(labels, matrix, orientation) -> FrozenSet[Tuple[str, str]]:
    position = {label: p for p, label in enumerate(labels)}
    edges = set()
    for edge in orientation:
        if len(edge) != 2:
            raise BadOrientation(f"Edge must be a pair of labels, got {edge!r}")
        i, j = str(edge[0]), str(edge[1])
        if i not in position or j not in position:
            raise BadOrientation(f"Edge {i}->{j} uses an unknown label")
        if i == j or matrix[position[i]][position[j]] == 0:
            raise BadOrientation(f"Edge {i}->{j} is not an edge of the graph")
        if (i, j) in edges or (j, i) in edges:
            raise BadOrientation(f"Edge between {i} and {j} is given twice")
        edges.add((i, j))
    for p in range(len(labels)):
        for q in range(p + 1, len(labels)):
            if matrix[p][q] != 0 and (labels[p], labels[q]) not in edges and (labels[q], labels[p]) not in edges:
                raise BadOrientation(f"Edge between {labels[p]} and {labels[q]} has no orientation")
    return frozenset(edges)


def datum_from_dict(raw: Dict) -> BorcherdsCartanDatum:
    """Parse the JSON datum schema: {"indices", "A", "D", "orientation"} with D and orientation optional."""
    if not isinstance(raw, dict) or "A" not in raw:
        raise MalformedDatum("Datum must be an object with at least an \"A\" matrix")
    return validate_datum(
        raw["A"],
        D=raw.get("D"),
        indices=raw.get("indices"),
        orientation=raw.get("orientation"),
    )
