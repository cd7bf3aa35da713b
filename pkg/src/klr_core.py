"""
KLR Core Module
Normal-form arithmetic in the quiver Hecke algebra R(nu) of a Borcherds-Cartan datum.

A basis element tau_w x^r 1_src is stored as (source, w, dots): the dots sit at the
bottom of the diagram and are indexed by source positions, and tau_w is read through
the lex-min reduced word of w. Products are computed by multiplying a normal form on
the left by one generator at a time; each primitive step is memoized.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Tuple
import logging
import threading

import numpy as np

from src.datum import BorcherdsCartanDatum
from src.errors import InvalidArg, NotIdempotent, PositionOutOfRange, RealIndexRequired, WeightMismatch
from src.linalg import sparse_rank
from src.polyrep import PolyVector, act_crossing, act_dot, act_idempotent
from src.qarith import LaurentPoly, QSeries, exact_quotient, geom_product, series_div_exact
from src.relations import Word, braid_correction, double_crossing_rhs, relation_instances
from src.wordcomb import (
    DividedSequence,
    Permutation,
    Sequence,
    Weight,
    crossing_degree,
    format_sequence,
    lexmin_reduced_word,
    longest_element,
    sequences_of_weight,
    transport_set,
)

logger = logging.getLogger(__name__)

Combination = Dict["BasisElement", Fraction]


@dataclass(frozen=True)
class BasisElement:
    source: Sequence
    w: Permutation
    dots: Tuple[int, ...]

    @property
    def target(self) -> Sequence:
        return self.w.act(self.source)

    @property
    def word(self) -> Tuple[int, ...]:
        return lexmin_reduced_word(self.w)

    def degree(self, datum: BorcherdsCartanDatum) -> int:
        dotted = sum(2 * datum.r(label) * e for label, e in zip(self.source, self.dots))
        return crossing_degree(self.w, self.source, datum) + dotted

    def render(self) -> str:
        return f"τ[w={self.w}; word={list(self.word)}] x^{list(self.dots)}"


def _accumulate(out: Combination, comb: Mapping["BasisElement", Fraction], scale: Fraction) -> None:
    for basis, c in comb.items():
        value = out.get(basis, 0) + c * scale
        if value:
            out[basis] = value
        else:
            out.pop(basis, None)


class AlgebraElement:
    """A finite rational combination of basis elements in one corner 1_target R 1_source."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: Sequence, target: Sequence, terms: Optional[Mapping[BasisElement, Fraction]] = None):
        self.source = tuple(source)
        self.target = tuple(target)
        self.terms: Dict[BasisElement, Fraction] = {}
        for basis, c in (terms or {}).items():
            if c == 0:
                continue
            if basis.source != self.source or basis.target != self.target:
                raise InvalidArg(f"Basis element {basis.render()} does not live in the corner "
                                 f"{format_sequence(self.source)} -> {format_sequence(self.target)}")
            self.terms[basis] = Fraction(c)

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: "AlgebraElement", scale: int) -> "AlgebraElement":
        if other.is_zero():
            return self
        if self.is_zero():
            return other * scale
        if (self.source, self.target) != (other.source, other.target):
            raise InvalidArg("Cannot add elements from different corners")
        out = dict(self.terms)
        _accumulate(out, other.terms, Fraction(scale))
        return AlgebraElement(self.source, self.target, out)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self._combine(other, 1)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self._combine(other, -1)

    def __neg__(self) -> "AlgebraElement":
        return self * -1

    def __mul__(self, scalar) -> "AlgebraElement":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return AlgebraElement(self.source, self.target, {b: c * scalar for b, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self.source, self.target, self.terms) == (other.source, other.target, other.terms)

    __hash__ = None

    def degrees(self, datum: BorcherdsCartanDatum) -> List[int]:
        return sorted({b.degree(datum) for b in self.terms})

    def sorted_terms(self) -> List[Tuple[BasisElement, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: (item[0].w.length(), item[0].w.images, item[0].dots))

    def render(self) -> str:
        if self.is_zero():
            return "0"
        corner = f" : {format_sequence(self.source)}→{format_sequence(self.target)}"
        return " + ".join(f"{c} · {b.render()}{corner}" for b, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"AlgebraElement({self.render()})"

    def to_dict(self) -> Dict:
        return {
            "source": format_sequence(self.source),
            "target": format_sequence(self.target),
            "terms": [{"w": list(b.w.images), "word": list(b.word), "dots": list(b.dots), "coefficient": str(c)}
                      for b, c in self.sorted_terms()],
        }


class _Rewrite:
    """
    A reduced word being transformed by commutation and braid moves.

    Tracks tau_{original} x^r 1_source = tau_{current} x^r 1_source + corrections.
    """

    def __init__(self, algebra: "KLRAlgebra", word: Iterable[int], dots: Tuple[int, ...], source: Sequence):
        self.algebra = algebra
        self.word = list(word)
        self.dots = dots
        self.source = source
        self.corrections: Combination = {}

    def commute(self, p: int) -> None:
        self.word[p], self.word[p + 1] = self.word[p + 1], self.word[p]

    def braid(self, p: int) -> None:
        a, b = self.word[p], self.word[p + 1]
        k = min(a, b)
        suffix = tuple(self.word[p + 3:])
        n = len(self.source)
        below = Permutation.from_word(suffix, n).act(self.source)
        correction = braid_correction(self.algebra.datum, below[k - 1:k + 2], k)
        if correction:
            sign = Fraction(1 if a == k else -1)
            base = self.algebra._normalize_word(suffix, self.dots, self.source)
            prefix = self.word[:p]
            for c, dot_word in correction:
                comb: Mapping = base
                for _, position in dot_word:
                    comb = self.algebra._dot_comb(position, comb)
                for letter in reversed(prefix):
                    comb = self.algebra._crossing_comb(letter, comb)
                _accumulate(self.corrections, comb, sign * c)
        self.word[p:p + 3] = [b, a, b]

    def bring_to_front(self, o: int, s: int) -> None:
        """Make word[o] == s using moves inside word[o:]; s must be a left descent there."""
        t = self.word[o]
        if t == s:
            return
        if abs(s - t) > 1:
            self.bring_to_front(o + 1, s)
            self.commute(o)
        else:
            self.bring_to_front(o + 1, s)
            self.bring_to_front(o + 2, t)
            self.braid(o)

    def bring_to_back(self, end: int, s: int) -> None:
        """Make word[end-1] == s using moves inside word[:end]; s must be a right descent there."""
        t = self.word[end - 1]
        if t == s:
            return
        if abs(s - t) > 1:
            self.bring_to_back(end - 1, s)
            self.commute(end - 2)
        else:
            self.bring_to_back(end - 1, s)
            self.bring_to_back(end - 2, t)
            self.braid(end - 3)

    def convert(self, target: Tuple[int, ...], strategy: str) -> None:
        if strategy == "front":
            for o, s in enumerate(target):
                self.bring_to_front(o, s)
        else:
            for end in range(len(target), 0, -1):
                self.bring_to_back(end, target[end - 1])


class KLRAlgebra:
    """
    The algebras R(nu) of one datum, with memoized straightening.

    Args:
        datum: the Borcherds-Cartan datum
        strategy: "front" or "back", the order in which reduced words are matched letter
            by letter during conversion; both give the same normal forms
    """

    def __init__(self, datum: BorcherdsCartanDatum, strategy: str = "front"):
        if strategy not in ("front", "back"):
            raise InvalidArg(f"Unknown straightening strategy: {strategy}")
        self.datum = datum
        self.strategy = strategy
        self._lock = threading.Lock()
        self._dot_cache: Dict[Tuple[int, BasisElement], Combination] = {}
        self._crossing_cache: Dict[Tuple[int, BasisElement], Combination] = {}
        self._word_cache: Dict[Tuple, Combination] = {}

    # generators

    def basis_identity(self, seq: Sequence, dots: Optional[Tuple[int, ...]] = None) -> BasisElement:
        seq = tuple(seq)
        return BasisElement(seq, Permutation.identity(len(seq)), tuple(dots) if dots else (0,) * len(seq))

    def element(self, basis: BasisElement, coefficient=1) -> AlgebraElement:
        return AlgebraElement(basis.source, basis.target, {basis: Fraction(coefficient)})

    def idempotent(self, seq: Sequence) -> AlgebraElement:
        return self.element(self.basis_identity(seq))

    def dot(self, k: int, seq: Sequence) -> AlgebraElement:
        seq = tuple(seq)
        if not 1 <= k <= len(seq):
            raise PositionOutOfRange(f"Dot position {k} outside 1..{len(seq)}")
        dots = [0] * len(seq)
        dots[k - 1] = 1
        return self.element(self.basis_identity(seq, tuple(dots)))

    def crossing(self, k: int, seq: Sequence) -> AlgebraElement:
        seq = tuple(seq)
        if not 1 <= k < len(seq):
            raise PositionOutOfRange(f"Crossing position {k} outside 1..{len(seq) - 1}")
        return self.element(BasisElement(seq, Permutation.simple(k, len(seq)), (0,) * len(seq)))

    def generator(self, kind: str, seq: Sequence, k: Optional[int] = None) -> AlgebraElement:
        if kind == "idempotent":
            return self.idempotent(seq)
        if kind == "dot":
            return self.dot(k, seq)
        if kind == "crossing":
            return self.crossing(k, seq)
        raise InvalidArg(f"Unknown generator kind: {kind}")

    def word_element(self, word: Word, seq: Sequence) -> AlgebraElement:
        """The product of a generator word (rightmost token first) on 1_seq."""
        comb: Mapping = {self.basis_identity(seq): Fraction(1)}
        for kind, k in reversed(word):
            comb = self._dot_comb(k, comb) if kind == "x" else self._crossing_comb(k, comb)
        target = Permutation.from_word([k for kind, k in word if kind == "t"], len(seq)).act(tuple(seq))
        return AlgebraElement(seq, target, comb)

    # memo helpers

    def _cached(self, cache: Dict, key) -> Optional[Combination]:
        with self._lock:
            return cache.get(key)

    def _store(self, cache: Dict, key, value: Combination) -> Combination:
        with self._lock:
            return cache.setdefault(key, value)

    # primitive steps

    def _times_dot(self, k: int, b: BasisElement) -> Combination:
        """x_k (at the top of b) times b, in normal form."""
        key = (k, b)
        cached = self._cached(self._dot_cache, key)
        if cached is not None:
            return cached

        word = b.word
        n = len(b.source)
        below: List[Sequence] = [()] * len(word)
        current = b.source
        for t in range(len(word) - 1, -1, -1):
            below[t] = current
            current = Permutation.simple(word[t], n).act(current)

        result: Combination = {}
        p = k
        for t, j in enumerate(word):
            if p not in (j, j + 1):
                continue
            labels = below[t]
            if labels[j - 1] == labels[j] and self.datum.is_real(labels[j - 1]):
                sign = Fraction(1 if p == j else -1)
                rest = word[:t] + word[t + 1:]
                _accumulate(result, self._normalize_word(rest, b.dots, b.source), sign)
            p = j + 1 if p == j else j

        dots = list(b.dots)
        dots[p - 1] += 1
        _accumulate(result, {BasisElement(b.source, b.w, tuple(dots)): Fraction(1)}, Fraction(1))
        return self._store(self._dot_cache, key, result)

    def _times_crossing(self, k: int, b: BasisElement) -> Combination:
        """tau_k (at the top of b) times b, in normal form."""
        key = (k, b)
        cached = self._cached(self._crossing_cache, key)
        if cached is not None:
            return cached

        n = len(b.source)
        if not 1 <= k < n:
            raise PositionOutOfRange(f"Crossing position {k} outside 1..{n - 1}")
        sk = Permutation.simple(k, n)
        result: Combination = {}

        if not b.w.is_left_descent(k):
            # tau_k tau_w is a reduced product; only braid corrections appear
            longer = sk * b.w
            rewrite = _Rewrite(self, (k,) + b.word, b.dots, b.source)
            rewrite.convert(lexmin_reduced_word(longer), self.strategy)
            _accumulate(result, rewrite.corrections, Fraction(1))
            _accumulate(result, {BasisElement(b.source, longer, b.dots): Fraction(1)}, Fraction(1))
        else:
            shorter = sk * b.w
            rewrite = _Rewrite(self, b.word, b.dots, b.source)
            rewrite.convert((k,) + lexmin_reduced_word(shorter), self.strategy)
            middle = shorter.act(b.source)
            base = {BasisElement(b.source, shorter, b.dots): Fraction(1)}
            for c, dot_word in double_crossing_rhs(self.datum, middle[k - 1], middle[k], k):
                comb: Mapping = base
                for _, position in dot_word:
                    comb = self._dot_comb(position, comb)
                _accumulate(result, comb, c)
            for basis, c in rewrite.corrections.items():
                _accumulate(result, self._times_crossing(k, basis), c)

        return self._store(self._crossing_cache, key, result)

    def _dot_comb(self, k: int, comb: Mapping[BasisElement, Fraction]) -> Combination:
        out: Combination = {}
        for basis, c in comb.items():
            _accumulate(out, self._times_dot(k, basis), c)
        return out

    def _crossing_comb(self, k: int, comb: Mapping[BasisElement, Fraction]) -> Combination:
        out: Combination = {}
        for basis, c in comb.items():
            _accumulate(out, self._times_crossing(k, basis), c)
        return out

    def _normalize_word(self, word: Tuple[int, ...], dots: Tuple[int, ...], source: Sequence) -> Combination:
        """tau_{word} x^dots 1_source in normal form, for any (possibly non-reduced) word."""
        key = (tuple(word), dots, source)
        cached = self._cached(self._word_cache, key)
        if cached is not None:
            return cached
        comb: Mapping = {BasisElement(source, Permutation.identity(len(source)), dots): Fraction(1)}
        for letter in reversed(word):
            comb = self._crossing_comb(letter, comb)
        return self._store(self._word_cache, key, dict(comb))

    # products

    def mul(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        """The product a*b, acting as a after b; zero unless a.source == b.target."""
        if a.source != b.target or a.is_zero() or b.is_zero():
            return AlgebraElement(b.source, a.target)
        result: Combination = {}
        for top, c in a.terms.items():
            comb: Mapping = b.terms
            for position, e in enumerate(top.dots, start=1):
                for _ in range(e):
                    comb = self._dot_comb(position, comb)
            for letter in reversed(top.word):
                comb = self._crossing_comb(letter, comb)
            _accumulate(result, comb, c)
        return AlgebraElement(b.source, a.target, result)

    def psi(self, a: AlgebraElement) -> AlgebraElement:
        """The anti-involution flipping diagrams upside down."""
        result: Combination = {}
        for basis, c in a.terms.items():
            comb: Mapping = {self.basis_identity(basis.target): Fraction(1)}
            for letter in basis.word:
                comb = self._crossing_comb(letter, comb)
            for position, e in enumerate(basis.dots, start=1):
                for _ in range(e):
                    comb = self._dot_comb(position, comb)
            _accumulate(result, comb, c)
        return AlgebraElement(a.target, a.source, result)

    def act_on_polyrep(self, a: AlgebraElement, v: PolyVector) -> PolyVector:
        if v.weight is not None and v.weight != Weight.of(a.source):
            raise WeightMismatch(f"Element of weight {Weight.of(a.source)} cannot act on a vector of weight {v.weight}")
        total = PolyVector()
        for basis, c in a.terms.items():
            u = act_idempotent(basis.source, v)
            for position, e in enumerate(basis.dots, start=1):
                for _ in range(e):
                    u = act_dot(position, basis.source, u)
            current = basis.source
            for letter in reversed(basis.word):
                u = act_crossing(letter, current, u, self.datum)
                current = Permutation.simple(letter, len(current)).act(current)
            total = total + u * c
        return total

    def relation_failures(self, seq: Sequence) -> List[str]:
        """Relation instances on seq that do not hold between normal forms."""
        failures = []
        for instance in relation_instances(self.datum, seq):
            lhs = sum((self.word_element(word, seq) * c for c, word in instance.lhs), AlgebraElement(seq, seq))
            rhs = sum((self.word_element(word, seq) * c for c, word in instance.rhs), AlgebraElement(seq, seq))
            if lhs != rhs:
                failures.append(instance.describe())
        return failures

    def cache_sizes(self) -> Dict[str, int]:
        with self._lock:
            return {"dot": len(self._dot_cache), "crossing": len(self._crossing_cache), "word": len(self._word_cache)}


# AlgebraElement + 0 for sum()
def _radd(self, other):
    if other == 0:
        return self
    return self.__add__(other)


AlgebraElement.__radd__ = _radd


# graded dimensions

def corner_numerator(src: Sequence, dst: Sequence, datum: BorcherdsCartanDatum) -> Tuple[LaurentPoly, Tuple[int, ...]]:
    """
    Closed form of gdim(1_dst R 1_src) as numerator * prod (1 - q^c)^-1.

    Returns:
        (sum over transporting w of q^deg(w), sorted factor exponents 2 r_i per strand)
    """
    if Weight.of(src) != Weight.of(dst):
        raise WeightMismatch(f"{format_sequence(src)} and {format_sequence(dst)} have different weights")
    numerator = LaurentPoly()
    for w in transport_set(src, dst):
        numerator = numerator + LaurentPoly.monomial(crossing_degree(w, src, datum))
    return numerator, tuple(sorted(2 * datum.r(label) for label in src))


def gdim_corner(src: Sequence, dst: Sequence, datum: BorcherdsCartanDatum, cap: int) -> QSeries:
    """Graded dimension of 1_dst R(nu) 1_src, truncated at cap."""
    if Weight.of(src) != Weight.of(dst):
        raise WeightMismatch(f"{format_sequence(src)} and {format_sequence(dst)} have different weights")
    exponents = [2 * datum.r(label) for label in src]
    total = QSeries.zero(cap)
    for w in transport_set(src, dst):
        d = crossing_degree(w, src, datum)
        if d > cap:
            continue
        total = total + geom_product(exponents, cap - d).shift(d)
    return total


def _dot_vectors(step: List[int], budget: int) -> List[Tuple[int, ...]]:
    """All dot exponent vectors r with sum r_k * step_k <= budget."""
    if budget < 0:
        return []
    if not step:
        return [()]
    out = []
    for e in range(budget // step[0] + 1):
        for rest in _dot_vectors(step[1:], budget - e * step[0]):
            out.append((e,) + rest)
    return out


def graded_corner_basis(src: Sequence, dst: Sequence, datum: BorcherdsCartanDatum, cap: int) -> Dict[int, List[BasisElement]]:
    """Basis elements of 1_dst R 1_src of degree <= cap, grouped by degree."""
    src = tuple(src)
    step = [2 * datum.r(label) for label in src]
    out: Dict[int, List[BasisElement]] = {}
    for w in transport_set(src, dst):
        d0 = crossing_degree(w, src, datum)
        for dots in _dot_vectors(step, cap - d0):
            basis = BasisElement(src, w, dots)
            out.setdefault(basis.degree(datum), []).append(basis)
    return dict(sorted(out.items()))


# divided powers

@dataclass
class DividedIdempotent:
    shape: DividedSequence
    element: AlgebraElement


def divided_idempotent(shape: DividedSequence, algebra: KLRAlgebra) -> DividedIdempotent:
    """
    The idempotent 1_{shape}: e_{i,n} = x_1^{n-1} ... x_{n-1} tau_{w0} on each real block.

    Raises:
        ImaginaryDividedPower: a block n > 1 on an imaginary index
        NotIdempotent: e*e != e, which signals a straightening bug
    """
    shape.validate(algebra.datum)
    seq = shape.hat()
    comb: Mapping = {algebra.basis_identity(seq): Fraction(1)}
    offset = 0
    for label, size in shape.blocks:
        if size > 1:
            for letter in reversed(lexmin_reduced_word(longest_element(size))):
                comb = algebra._crossing_comb(letter + offset, comb)
            for p in range(1, size):
                for _ in range(size - p):
                    comb = algebra._dot_comb(offset + p, comb)
        offset += size
    element = AlgebraElement(seq, seq, comb)
    if algebra.mul(element, element) != element:
        raise NotIdempotent(f"The idempotent for {shape} fails e*e == e")
    return DividedIdempotent(shape, element)


def gdim_divided_corner(shape: DividedSequence, dst: Sequence, datum: BorcherdsCartanDatum, cap: int) -> QSeries:
    """gdim(1_shape R(nu) 1_dst) = q^<shape> gdim(1_hat R 1_dst) / shape!."""
    shape.validate(datum)
    hat = shape.hat()
    if Weight.of(hat) != Weight.of(dst):
        raise WeightMismatch(f"{shape} and {format_sequence(dst)} have different weights")
    factorial = shape.factorial(datum)
    numerator, _ = corner_numerator(dst, hat, datum)
    exact_quotient(numerator, factorial)
    return series_div_exact(gdim_corner(dst, hat, datum, cap), factorial).shift(shape.bracket(datum))


def rank_gdim_divided(shape: DividedSequence, dst: Sequence, algebra: KLRAlgebra, cap: int) -> QSeries:
    """gdim(e R 1_dst) computed as ranks of b -> e*b on each graded piece."""
    idempotent = divided_idempotent(shape, algebra)
    by_degree = graded_corner_basis(dst, shape.hat(), algebra.datum, cap)
    coefficients = {}
    for degree, basis in by_degree.items():
        images = [algebra.mul(idempotent.element, algebra.element(b)).terms for b in basis]
        coefficients[degree] = sparse_rank(images)
    floor = min(by_degree) if by_degree else 0
    return QSeries(coefficients, floor=min(floor, cap + 1), cap=cap)


def gdim_projective_divided(k_seq: Sequence, shape: DividedSequence, datum: BorcherdsCartanDatum, cap: int) -> QSeries:
    """gdim(1_k P_shape): gdim(1_hat R 1_k) / shape!, with no bracket shift."""
    shape.validate(datum)
    hat = shape.hat()
    if Weight.of(hat) != Weight.of(k_seq):
        raise WeightMismatch(f"{shape} and {format_sequence(k_seq)} have different weights")
    factorial = shape.factorial(datum)
    numerator, _ = corner_numerator(k_seq, hat, datum)
    exact_quotient(numerator, factorial)
    inner = cap + max(0, factorial.max_exponent)
    return series_div_exact(gdim_corner(k_seq, hat, datum, inner), factorial).truncate(cap)


def serre_shapes(i: str, j: str, datum: BorcherdsCartanDatum) -> Tuple[List[DividedSequence], List[DividedSequence]]:
    """
    The two sides of the divided-power Serre isomorphism for m = 1 - a_ij:
    i^(2c) j i^(m-2c) against i^(2c+1) j i^(m-2c-1). For a_ij = 0 the sides are ij and ji.
    """
    datum.position(j)
    if not datum.is_real(i):
        raise RealIndexRequired(f"Serre shapes need a real index, {i} is imaginary")
    if i == j:
        raise InvalidArg("Serre shapes need j != i")

    def shape(before: int, after: int) -> DividedSequence:
        blocks = [(i, before)] if before else []
        blocks.append((j, 1))
        if after:
            blocks.append((i, after))
        return DividedSequence(tuple(blocks))

    m = 1 - datum.a(i, j)
    if m == 1:
        return [shape(1, 0)], [shape(0, 1)]
    left = [shape(2 * c, m - 2 * c) for c in range(m // 2 + 1)]
    right = [shape(2 * c + 1, m - 2 * c - 1) for c in range((m - 1) // 2 + 1)]
    return left, right


def serre_character_failures(i: str, j: str, datum: BorcherdsCartanDatum, cap: int) -> List[str]:
    """Sequences k where the two Serre sums of gdim(1_k P_shape) differ up to cap."""
    left, right = serre_shapes(i, j, datum)
    failures = []
    for k_seq in sequences_of_weight(left[0].weight):
        lhs = QSeries.zero(cap)
        for shape in left:
            lhs = lhs + gdim_projective_divided(k_seq, shape, datum, cap)
        rhs = QSeries.zero(cap)
        for shape in right:
            rhs = rhs + gdim_projective_divided(k_seq, shape, datum, cap)
        if not lhs.compare(rhs).equal:
            failures.append(format_sequence(k_seq))
    return failures


def serre_character_check(i: str, j: str, datum: BorcherdsCartanDatum, cap: int) -> bool:
    failures = serre_character_failures(i, j, datum, cap)
    for k_seq in failures:
        logger.warning(f"Serre sums for ({i}, {j}) differ on {k_seq}")
    return not failures


# center

SymmetricPolynomial = Mapping[Tuple[int, ...], Fraction]


def elementary_symmetric(m: int, count: int) -> Dict[Tuple[int, ...], Fraction]:
    """e_m in count variables as exponent vector -> coefficient."""
    out = {}
    for chosen in product((0, 1), repeat=count):
        if sum(chosen) == m:
            out[chosen] = Fraction(1)
    return out


def central_candidate(sym: Mapping[str, SymmetricPolynomial], weight: Weight, algebra: KLRAlgebra) -> Dict[Sequence, AlgebraElement]:
    """
    Per sequence, the dot polynomial obtained by substituting the dots on the positions
    carrying each label into that label's polynomial. Labels without a polynomial get 1.
    """
    for label, poly in sym.items():
        for exponents in poly:
            if len(exponents) != weight[label]:
                raise InvalidArg(f"Polynomial for {label} has {len(exponents)} variables, weight needs {weight[label]}")
    out = {}
    for seq in sequences_of_weight(weight):
        positions = {label: [p for p, s in enumerate(seq) if s == label] for label in set(seq)}
        factors = [list(sym[label].items()) if label in sym else [((0,) * weight[label], Fraction(1))]
                   for label in sorted(positions)]
        terms: Combination = {}
        for choice in product(*factors):
            dots = [0] * len(seq)
            coefficient = Fraction(1)
            for label, (exponents, c) in zip(sorted(positions), choice):
                coefficient *= c
                for p, e in zip(positions[label], exponents):
                    dots[p] += e
            _accumulate(terms, {algebra.basis_identity(seq, tuple(dots)): Fraction(1)}, coefficient)
        out[seq] = AlgebraElement(seq, seq, terms)
    return out


def center_check(sym: Mapping[str, SymmetricPolynomial], weight: Weight, algebra: KLRAlgebra) -> bool:
    """True iff the diagonal element built from sym commutes with every generator."""
    z = central_candidate(sym, weight, algebra)
    for seq, element in z.items():
        n = len(seq)
        for k in range(1, n):
            tau = algebra.crossing(k, seq)
            if algebra.mul(z[tau.target], tau) != algebra.mul(tau, element):
                logger.info(f"Candidate fails to commute with t{k} on {format_sequence(seq)}")
                return False
        for k in range(1, n + 1):
            x = algebra.dot(k, seq)
            if algebra.mul(element, x) != algebra.mul(x, element):
                logger.info(f"Candidate fails to commute with x{k} on {format_sequence(seq)}")
                return False
    return True


def gdim_center(weight: Weight, datum: BorcherdsCartanDatum, cap: int) -> QSeries:
    exponents = [2 * c * datum.r(label) for label, m in weight.items for c in range(1, m + 1)]
    return geom_product(exponents, cap)


def centralizer_gdim(weight: Weight, algebra: KLRAlgebra, cap: int) -> QSeries:
    """
    Graded dimension of the center by linear algebra: on each degree, the nullity of
    z -> (z g - g z) over all generators g, with z ranging over the diagonal corners.
    """
    datum = algebra.datum
    seqs = sequences_of_weight(weight)
    bases = {seq: graded_corner_basis(seq, seq, datum, cap) for seq in seqs}
    generators = []
    for seq in seqs:
        generators += [algebra.crossing(k, seq) for k in range(1, len(seq))]
        generators += [algebra.dot(k, seq) for k in range(1, len(seq) + 1)]

    degrees = sorted({d for by_degree in bases.values() for d in by_degree})
    coefficients = {}
    for degree in degrees:
        unknowns = [(seq, b) for seq in seqs for b in bases[seq].get(degree, [])]
        images = []
        for seq, b in unknowns:
            z = algebra.element(b)
            image: Dict = {}
            for g_index, g in enumerate(generators):
                if g.target == seq:
                    for basis, c in algebra.mul(z, g).terms.items():
                        image[(g_index, basis)] = image.get((g_index, basis), 0) + c
                if g.source == seq:
                    for basis, c in algebra.mul(g, z).terms.items():
                        image[(g_index, basis)] = image.get((g_index, basis), 0) - c
            images.append(image)
        coefficients[degree] = len(unknowns) - sparse_rank(images)
    floor = min(degrees) if degrees else 0
    logger.info(f"Centralizer of R({weight}) computed to cap {cap}")
    return QSeries(coefficients, floor=min(floor, cap + 1), cap=cap)


# sampling

def random_element(algebra: KLRAlgebra, source: Sequence, target: Sequence, rng: np.random.Generator,
                   max_terms: int = 3, max_dots: int = 2) -> AlgebraElement:
    """A random element of 1_target R 1_source with small rational coefficients."""
    perms = transport_set(tuple(source), tuple(target))
    terms: Combination = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        w = perms[int(rng.integers(len(perms)))]
        dots = tuple(int(e) for e in rng.integers(0, max_dots + 1, size=len(source)))
        coefficient = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3)))
        _accumulate(terms, {BasisElement(tuple(source), w, dots): Fraction(1)}, coefficient)
    return AlgebraElement(source, target, terms)
