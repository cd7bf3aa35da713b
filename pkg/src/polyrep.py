"""
Polynomial Representation Module
The faithful representation on per-sequence polynomial rings in x_1..x_n, y_1..y_n,
and the relation-verification harness built on it.

The representation is ungraded; grading lives on the algebra side.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple, Union
import logging

from src.datum import BorcherdsCartanDatum
from src.errors import GuardExceeded, InternalDivisionFailure, PositionOutOfRange, WeightMismatch
from src.relations import RelationInstance, Word, relation_instances
from src.wordcomb import Permutation, Sequence, Weight, format_sequence, sequences_of_weight

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]
Scalar = Union[int, Fraction]

MAX_HT = 6


class MultiPoly:
    """
    Sparse polynomial in x_1..x_n, y_1..y_n with rational coefficients.

    A key is the exponent vector (x_1..x_n, y_1..y_n).
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[Key, Scalar]] = None):
        self.n = n
        self.terms: Dict[Key, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls, n: int) -> "MultiPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c: Scalar = 1) -> "MultiPoly":
        return cls(n, {(0,) * (2 * n): c})

    @classmethod
    def monomial(cls, xexp: Tuple[int, ...], yexp: Tuple[int, ...], c: Scalar = 1) -> "MultiPoly":
        return cls(len(xexp), {tuple(xexp) + tuple(yexp): c})

    @classmethod
    def x(cls, n: int, k: int, e: int = 1) -> "MultiPoly":
        key = [0] * (2 * n)
        key[k - 1] = e
        return cls(n, {tuple(key): 1})

    @classmethod
    def y(cls, n: int, k: int, e: int = 1) -> "MultiPoly":
        key = [0] * (2 * n)
        key[n + k - 1] = e
        return cls(n, {tuple(key): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return MultiPoly(self.n, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.n, {k: c * other for k, c in self.terms.items()})
        out: Dict[Key, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                out[key] = out.get(key, 0) + c1 * c2
        return MultiPoly(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def _permute(self, pairs: List[Tuple[int, int]]) -> "MultiPoly":
        out: Dict[Key, Fraction] = {}
        for key, c in self.terms.items():
            moved = list(key)
            for i, j in pairs:
                moved[i], moved[j] = moved[j], moved[i]
            out[tuple(moved)] = c
        return MultiPoly(self.n, out)

    def swap_x(self, k: int) -> "MultiPoly":
        """x_k <-> x_k+1, y fixed."""
        return self._permute([(k - 1, k)])

    def swap_xy(self, k: int) -> "MultiPoly":
        """x_k <-> x_k+1 and y_k <-> y_k+1."""
        return self._permute([(k - 1, k), (self.n + k - 1, self.n + k)])

    def divide_difference(self, k: int, block: str) -> "MultiPoly":
        """
        Exact quotient by (v_k - v_k+1) with v = x or y, by synthetic division in v_k.

        Raises InternalDivisionFailure when the remainder is nonzero.
        """
        offset = 0 if block == "x" else self.n
        i, j = offset + k - 1, offset + k

        groups: Dict[int, Dict[Key, Fraction]] = {}
        for key, c in self.terms.items():
            reduced = key[:i] + (0,) + key[i + 1:]
            groups.setdefault(key[i], {})[reduced] = c
        if not groups:
            return MultiPoly(self.n)

        quotient: Dict[Key, Fraction] = {}
        carry: Dict[Key, Fraction] = {}
        for d in range(max(groups), 0, -1):
            current = dict(groups.get(d, {}))
            for key, c in carry.items():
                bumped = key[:j] + (key[j] + 1,) + key[j + 1:]
                current[bumped] = current.get(bumped, 0) + c
            carry = {key: c for key, c in current.items() if c != 0}
            for key, c in carry.items():
                placed = key[:i] + (d - 1,) + key[i + 1:]
                quotient[placed] = quotient.get(placed, 0) + c

        remainder = dict(groups.get(0, {}))
        for key, c in carry.items():
            bumped = key[:j] + (key[j] + 1,) + key[j + 1:]
            remainder[bumped] = remainder.get(bumped, 0) + c
        if any(c != 0 for c in remainder.values()):
            raise InternalDivisionFailure(f"{self} is not divisible by {block}{k} - {block}{k + 1}")
        return MultiPoly(self.n, quotient)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            factors = [
                (f"{v}{p + 1}" if e == 1 else f"{v}{p + 1}^{e}")
                for v, offset in (("x", 0), ("y", self.n))
                for p in range(self.n)
                for e in [key[offset + p]]
                if e
            ]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


@dataclass
class PolyVector:
    """Finitely supported map Sequence -> MultiPoly; all components share one weight."""

    components: Dict[Sequence, MultiPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.components = {tuple(s): f for s, f in self.components.items() if not f.is_zero()}
        weights = {Weight.of(s) for s in self.components}
        if len(weights) > 1:
            raise WeightMismatch("PolyVector components have different weights")

    @classmethod
    def single(cls, seq: Sequence, poly: MultiPoly) -> "PolyVector":
        return cls({tuple(seq): poly})

    @property
    def weight(self) -> Optional[Weight]:
        for s in self.components:
            return Weight.of(s)
        return None

    def component(self, seq: Sequence) -> MultiPoly:
        return self.components.get(tuple(seq), MultiPoly.zero(len(seq)))

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "PolyVector") -> "PolyVector":
        out = dict(self.components)
        for s, f in other.components.items():
            out[s] = out[s] + f if s in out else f
        return PolyVector(out)

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return self + other * -1

    def __mul__(self, c: Scalar) -> "PolyVector":
        return PolyVector({s: f * c for s, f in self.components.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.components == other.components

    def to_dict(self) -> Dict[str, str]:
        return {format_sequence(s): str(f) for s, f in sorted(self.components.items())}


def _check_weight(seq: Sequence, v: PolyVector) -> None:
    if v.weight is not None and v.weight != Weight.of(seq):
        raise WeightMismatch(f"Sequence {format_sequence(seq)} does not match the vector weight {v.weight}")


def act_idempotent(seq: Sequence, v: PolyVector) -> PolyVector:
    seq = tuple(seq)
    _check_weight(seq, v)
    return PolyVector({seq: v.component(seq)})


def act_dot(k: int, seq: Sequence, v: PolyVector) -> PolyVector:
    seq = tuple(seq)
    if not 1 <= k <= len(seq):
        raise PositionOutOfRange(f"Dot position {k} outside 1..{len(seq)}")
    f = v.component(seq)
    return PolyVector({seq: f * MultiPoly.x(len(seq), k)})


def act_crossing(k: int, seq: Sequence, v: PolyVector, datum: BorcherdsCartanDatum) -> PolyVector:
    seq = tuple(seq)
    n = len(seq)
    if not 1 <= k < n:
        raise PositionOutOfRange(f"Crossing position {k} outside 1..{n - 1}")
    f = v.component(seq)
    if f.is_zero():
        return PolyVector()
    a, b = seq[k - 1], seq[k]

    if a == b:
        if datum.is_real(a):
            return PolyVector({seq: (f - f.swap_x(k)).divide_difference(k, "x")})
        return PolyVector({seq: (f.swap_x(k) - f.swap_xy(k)).divide_difference(k, "y")})

    target = Permutation.simple(k, n).act(seq)
    swapped = f.swap_xy(k)
    if datum.bilinear(a, b) == 0 or datum.has_arrow(b, a):
        return PolyVector({target: swapped})
    factor = MultiPoly.x(n, k, -datum.a(b, a)) + MultiPoly.x(n, k + 1, -datum.a(a, b))
    return PolyVector({target: factor * swapped})


def apply_word(word: Word, seq: Sequence, v: PolyVector, datum: BorcherdsCartanDatum) -> PolyVector:
    """Apply a generator word (rightmost token first) to v, starting on component seq."""
    current = tuple(seq)
    result = act_idempotent(current, v)
    for kind, k in reversed(word):
        if kind == "x":
            result = act_dot(k, current, result)
        else:
            result = act_crossing(k, current, result, datum)
            current = Permutation.simple(k, len(current)).act(current)
    return result


def monomials_up_to(nvars: int, degree: int) -> Iterator[Key]:
    """Exponent vectors of total degree <= degree, by degree."""
    def build(slots: int, total: int) -> Iterator[Key]:
        if slots == 0:
            if total == 0:
                yield ()
            return
        for e in range(total, -1, -1):
            for rest in build(slots - 1, total - e):
                yield (e,) + rest

    for d in range(degree + 1):
        yield from build(nvars, d)


@dataclass
class RelationCheck:
    relation: str
    sequence: str
    passed: bool
    monomials: int
    counterexample: Optional[str] = None

    def to_dict(self) -> Dict:
        return {
            "relation": self.relation,
            "sequence": self.sequence,
            "passed": self.passed,
            "monomials": self.monomials,
            "counterexample": self.counterexample,
        }


@dataclass
class RelationReport:
    weight: str
    test_degree: int
    checks: List[RelationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[RelationCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict:
        return {
            "weight": self.weight,
            "testDegree": self.test_degree,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def evaluate_terms(terms, seq: Sequence, v: PolyVector, datum: BorcherdsCartanDatum) -> PolyVector:
    total = PolyVector()
    for coefficient, word in terms:
        total = total + apply_word(word, seq, v, datum) * coefficient
    return total


def check_instance(instance: RelationInstance, datum: BorcherdsCartanDatum, test_degree: int) -> RelationCheck:
    n = len(instance.source)
    count = 0
    for key in monomials_up_to(2 * n, test_degree):
        count += 1
        v = PolyVector.single(instance.source, MultiPoly(n, {key: 1}))
        lhs = evaluate_terms(instance.lhs, instance.source, v, datum)
        rhs = evaluate_terms(instance.rhs, instance.source, v, datum)
        if lhs != rhs:
            return RelationCheck(instance.name, format_sequence(instance.source), False, count,
                                 counterexample=str(MultiPoly(n, {key: 1})))
    return RelationCheck(instance.name, format_sequence(instance.source), True, count)


def verify_relations(datum: BorcherdsCartanDatum, weight: Weight, test_degree: int = 4) -> RelationReport:
    """
    Check every relation instance on every monomial of degree <= test_degree.

    Args:
        datum: the Borcherds-Cartan datum
        weight: the weight nu; its height is guarded by MAX_HT
        test_degree: total degree bound over all 2n variables

    Returns:
        RelationReport with one check per (relation, sequence)
    """
    if weight.ht > MAX_HT:
        raise GuardExceeded(f"ht({weight}) = {weight.ht} exceeds the polynomial guard {MAX_HT}")
    report = RelationReport(weight=str(weight), test_degree=test_degree)
    for seq in sequences_of_weight(weight):
        for instance in relation_instances(datum, seq):
            report.checks.append(check_instance(instance, datum, test_degree))
    logger.info(f"Relations on weight {weight}: {len(report.checks)} instances, "
                f"{len(report.failures)} failures")
    for failure in report.failures:
        logger.warning(f"Relation '{failure.relation}' fails on {failure.sequence} at {failure.counterexample}")
    return report
