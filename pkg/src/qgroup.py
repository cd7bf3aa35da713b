"""
Quantum Group Module
Words in the free algebra on the f_i, the twisted coproduct, and the symmetric
bilinear form computed by peeling letters off one argument.

Every pairing of words is numerator / prod (1 - q^{2 r_i}) over the letters, so the
recursion runs on Laurent numerators only and series appear at the very end.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple
import logging
import threading

from src.datum import BorcherdsCartanDatum
from src.errors import BadPair, InvalidArg, RealIndexRequired, WeightMismatch
from src.klr_core import gdim_corner
from src.qarith import LaurentPoly, QSeries, geom_product, quantum_binomial, quantum_factorial, series_div_exact
from src.wordcomb import Sequence, Weight, format_sequence, sequences_of_weight, weights_up_to

logger = logging.getLogger(__name__)

PEEL_STRATEGIES = ("first", "last")


@dataclass(frozen=True)
class FreeQWord:
    letters: Tuple[str, ...] = ()

    @property
    def weight(self) -> Weight:
        return Weight.of(self.letters)

    def __mul__(self, other: "FreeQWord") -> "FreeQWord":
        return FreeQWord(self.letters + other.letters)

    def __str__(self) -> str:
        return " ".join(f"f_{label}" for label in self.letters) or "1"


class FreeQElement:
    """
    A combination of words with LaurentPoly coefficients over one LaurentPoly denominator.

    Divided powers keep their quantum factorials in the denominator, so coefficients
    stay in Z[q, q^-1].
    """

    def __init__(self, terms: Optional[Dict[FreeQWord, LaurentPoly]] = None,
                 denominator: Optional[LaurentPoly] = None):
        self.denominator = denominator if denominator is not None else LaurentPoly.one()
        if self.denominator.is_zero():
            raise InvalidArg("FreeQElement denominator must be nonzero")
        self.terms: Dict[FreeQWord, LaurentPoly] = {}
        for word, c in (terms or {}).items():
            c = LaurentPoly.coerce(c)
            if not c.is_zero():
                self.terms[word] = c

    @classmethod
    def word(cls, letters: Iterable[str]) -> "FreeQElement":
        return cls({FreeQWord(tuple(letters)): LaurentPoly.one()})

    @classmethod
    def f(cls, i: str, power: int = 1) -> "FreeQElement":
        return cls.word((i,) * power)

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> List[Weight]:
        return sorted({w.weight for w in self.terms}, key=lambda w: (w.ht, w.items))

    def __add__(self, other: "FreeQElement") -> "FreeQElement":
        if self.denominator == other.denominator:
            left, right, denominator = self.terms, other.terms, self.denominator
        else:
            left = {w: c * other.denominator for w, c in self.terms.items()}
            right = {w: c * self.denominator for w, c in other.terms.items()}
            denominator = self.denominator * other.denominator
        out = dict(left)
        for word, c in right.items():
            out[word] = out.get(word, LaurentPoly()) + c
        return FreeQElement(out, denominator)

    def __neg__(self) -> "FreeQElement":
        return FreeQElement({w: -c for w, c in self.terms.items()}, self.denominator)

    def __sub__(self, other: "FreeQElement") -> "FreeQElement":
        return self + (-other)

    def __mul__(self, other) -> "FreeQElement":
        if isinstance(other, (int, LaurentPoly)):
            return FreeQElement({w: c * other for w, c in self.terms.items()}, self.denominator)
        if not isinstance(other, FreeQElement):
            return NotImplemented
        out: Dict[FreeQWord, LaurentPoly] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 * w2
                out[word] = out.get(word, LaurentPoly()) + c1 * c2
        return FreeQElement(out, self.denominator * other.denominator)

    def __rmul__(self, other) -> "FreeQElement":
        if isinstance(other, (int, LaurentPoly)):
            return self * other
        return NotImplemented

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        body = " + ".join(f"({c}) {w}" for w, c in sorted(self.terms.items(), key=lambda t: t[0].letters))
        if self.denominator == LaurentPoly.one():
            return body
        return f"[{body}] / ({self.denominator})"


def rho_expand(word: FreeQWord, datum: BorcherdsCartanDatum) -> List[Tuple[FreeQWord, FreeQWord, LaurentPoly]]:
    """
    Twisted coproduct of a word: one term per split of the letters into left and right.

    The coefficient is q^(-sum i_p . i_q) over p < q with p sent right and q sent left.
    """
    letters = word.letters
    n = len(letters)
    out = []
    for size in range(n + 1):
        for chosen in combinations(range(n), size):
            left = set(chosen)
            exponent = 0
            for p in range(n):
                if p in left:
                    continue
                for q in range(p + 1, n):
                    if q in left:
                        exponent -= datum.bilinear(letters[p], letters[q])
            out.append((
                FreeQWord(tuple(letters[p] for p in range(n) if p in left)),
                FreeQWord(tuple(letters[p] for p in range(n) if p not in left)),
                LaurentPoly.monomial(exponent),
            ))
    return out


def _factor_exponents(weight: Weight, datum: BorcherdsCartanDatum) -> Tuple[int, ...]:
    return tuple(sorted(2 * datum.r(label) for label, m in weight.items for _ in range(m)))


@dataclass
class PairingValue:
    """A pairing value as numerator / (denominator * prod (1 - q^c)) with its series up to cap."""

    series: QSeries
    numerator: Optional[LaurentPoly] = None
    factors: Tuple[int, ...] = ()
    denominator: LaurentPoly = field(default_factory=LaurentPoly.one)

    @property
    def has_closed_form(self) -> bool:
        return self.numerator is not None

    def is_zero(self) -> bool:
        if self.numerator is not None:
            return self.numerator.is_zero()
        return self.series.is_zero()

    def closed_form_check(self) -> bool:
        """Clear the denominators of the series and compare with the numerator."""
        if self.numerator is None:
            return True
        cleared = self.series * self.denominator
        for c in self.factors:
            cleared = cleared * (LaurentPoly.one() - LaurentPoly.monomial(c))
        return cleared.compare(self.numerator).equal

    def closed_form(self) -> Optional[str]:
        if self.numerator is None:
            return None
        parts = [f"(1 - q^{c})" for c in self.factors]
        if self.denominator != LaurentPoly.one():
            parts.insert(0, f"({self.denominator})")
        if not parts:
            return str(self.numerator)
        return f"({self.numerator}) / " + " ".join(parts)

    def to_dict(self) -> Dict:
        return {
            "series": str(self.series),
            "closedForm": self.closed_form(),
            "numerator": None if self.numerator is None else str(self.numerator),
            "factors": list(self.factors),
        }


def _expand(numerator: LaurentPoly, factors: Tuple[int, ...], denominator: LaurentPoly, cap: int) -> QSeries:
    if numerator.is_zero():
        return QSeries.zero(cap)
    margin = max(0, -numerator.min_exponent) + max(0, denominator.max_exponent) + max(0, -denominator.min_exponent)
    inner = cap + margin
    series = geom_product(factors, inner) * numerator
    if denominator != LaurentPoly.one():
        series = series_div_exact(series, denominator)
    return series.truncate(cap)


class BilinearForm:
    """
    The symmetric form on the free algebra, memoized on pairs of words.

    pair_words returns the Laurent numerator N with
    {a, b} = N / prod over the letters of (1 - q^{2 r_i}).
    """

    def __init__(self, datum: BorcherdsCartanDatum, peel: str = "first"):
        if peel not in PEEL_STRATEGIES:
            raise InvalidArg(f"Unknown peel strategy {peel!r}; expected one of {PEEL_STRATEGIES}")
        self.datum = datum
        self.peel = peel
        self._memo: Dict[Tuple[Sequence, Sequence], LaurentPoly] = {}
        self._lock = threading.Lock()

    def pair_words(self, a: Sequence, b: Sequence) -> LaurentPoly:
        a, b = tuple(a), tuple(b)
        if Weight.of(a) != Weight.of(b):
            return LaurentPoly()
        if not b:
            return LaurentPoly.one()
        key = (a, b)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = self._peel_first(a, b) if self.peel == "first" else self._peel_last(a, b)
        with self._lock:
            self._memo[key] = value
        return value

    def _peel_first(self, a: Sequence, b: Sequence) -> LaurentPoly:
        # {a, f_j z}: only splits with the single letter j on the left survive
        j, rest = b[0], b[1:]
        total = LaurentPoly()
        for p, label in enumerate(a):
            if label != j:
                continue
            exponent = -sum(self.datum.bilinear(a[s], j) for s in range(p))
            total = total + LaurentPoly.monomial(exponent) * self.pair_words(a[:p] + a[p + 1:], rest)
        return total

    def _peel_last(self, a: Sequence, b: Sequence) -> LaurentPoly:
        j, rest = b[-1], b[:-1]
        total = LaurentPoly()
        for p, label in enumerate(a):
            if label != j:
                continue
            exponent = -sum(self.datum.bilinear(j, a[s]) for s in range(p + 1, len(a)))
            total = total + LaurentPoly.monomial(exponent) * self.pair_words(a[:p] + a[p + 1:], rest)
        return total

    def pair(self, x: FreeQElement, y: FreeQElement, cap: int) -> PairingValue:
        """Bilinear extension; a closed form is kept when a single weight contributes."""
        by_weight: Dict[Weight, LaurentPoly] = {}
        for wx, cx in x.terms.items():
            for wy, cy in y.terms.items():
                if wx.weight != wy.weight:
                    continue
                value = cx * cy * self.pair_words(wx.letters, wy.letters)
                by_weight[wx.weight] = by_weight.get(wx.weight, LaurentPoly()) + value
        by_weight = {w: n for w, n in by_weight.items() if not n.is_zero()}
        denominator = x.denominator * y.denominator
        if not by_weight:
            return PairingValue(series=QSeries.zero(cap), numerator=LaurentPoly(), denominator=denominator)
        if len(by_weight) == 1:
            (weight, numerator), = by_weight.items()
            factors = _factor_exponents(weight, self.datum)
            return PairingValue(series=_expand(numerator, factors, denominator, cap), numerator=numerator,
                                factors=factors, denominator=denominator)
        series = QSeries.zero(cap)
        for weight, numerator in by_weight.items():
            series = series + _expand(numerator, _factor_exponents(weight, self.datum), denominator, cap)
        return PairingValue(series=series, denominator=denominator)

    def cache_size(self) -> int:
        with self._lock:
            return len(self._memo)


def pair(x: FreeQElement, y: FreeQElement, datum: BorcherdsCartanDatum, cap: int,
         peel: str = "first", form: Optional[BilinearForm] = None) -> PairingValue:
    form = form or BilinearForm(datum, peel)
    return form.pair(x, y, cap)


def serre_element(i: str, j: str, datum: BorcherdsCartanDatum) -> FreeQElement:
    """
    sum over r + s = 1 - a_ij of (-1)^r f_i^(r) f_j f_i^(s), over the common denominator [m]_i!.

    For a_ij = 0 this is the commutator f_i f_j - f_j f_i.
    """
    datum.position(j)
    if not datum.is_real(i):
        raise RealIndexRequired(f"Serre element needs a real index, {i} is imaginary")
    if i == j:
        raise InvalidArg("Serre element needs j != i")
    a_ij = datum.a(i, j)
    if a_ij == 0:
        return FreeQElement.word((i, j)) - FreeQElement.word((j, i))
    m = 1 - a_ij
    r_i = datum.r(i)
    terms = {}
    for r in range(m + 1):
        s = m - r
        terms[FreeQWord((i,) * r + (j,) + (i,) * s)] = quantum_binomial(m, r, r_i) * (-1) ** r
    return FreeQElement(terms, quantum_factorial(m, r_i))


def match_pairing_with_gdim(i_seq: Sequence, j_seq: Sequence, datum: BorcherdsCartanDatum, cap: int,
                            form: Optional[BilinearForm] = None) -> bool:
    """{f_i-word, f_j-word} against gdim(1_i R 1_j), two independent computations."""
    if Weight.of(i_seq) != Weight.of(j_seq):
        raise WeightMismatch(f"{format_sequence(i_seq)} and {format_sequence(j_seq)} have different weights")
    value = pair(FreeQElement.word(i_seq), FreeQElement.word(j_seq), datum, cap, form=form)
    return value.series.compare(gdim_corner(j_seq, i_seq, datum, cap)).equal


def commutation_check(i: str, j: str, datum: BorcherdsCartanDatum, cap: int) -> bool:
    """f_i f_j - f_j f_i pairs to zero with every word of its weight."""
    if datum.bilinear(i, j) != 0:
        raise BadPair(f"{i} . {j} = {datum.bilinear(i, j)} is not zero")
    form = BilinearForm(datum)
    commutator = FreeQElement.word((i, j)) - FreeQElement.word((j, i))
    for u in sequences_of_weight(Weight.of((i, j))):
        if not form.pair(commutator, FreeQElement.word(u), cap).is_zero():
            logger.warning(f"Commutator f_{i} f_{j} - f_{j} f_{i} pairs nontrivially with {format_sequence(u)}")
            return False
    return True


def radical_failures(i: str, j: str, datum: BorcherdsCartanDatum, cap: int, max_ht: int = 4) -> List[str]:
    serre = serre_element(i, j, datum)
    weight = serre.weights()[0]
    form = BilinearForm(datum)
    failures = []
    padding = [Weight()] + weights_up_to(datum.indices, max_ht - weight.ht)
    for extra in padding:
        if weight.ht + extra.ht > max_ht:
            continue
        for w_letters in sequences_of_weight(extra):
            w = FreeQElement.word(w_letters)
            for u in sequences_of_weight(weight + extra):
                target = FreeQElement.word(u)
                for name, element in (("serre*w", serre * w), ("w*serre", w * serre)):
                    if not form.pair(element, target, cap).is_zero():
                        failures.append(f"{name} with w={format_sequence(w_letters) or '1'} "
                                        f"against {format_sequence(u)}")
    return failures


def radical_check(i: str, j: str, datum: BorcherdsCartanDatum, cap: int, max_ht: int = 4) -> bool:
    """The Serre element lies in the radical of the form, tested against words up to max_ht."""
    failures = radical_failures(i, j, datum, cap, max_ht)
    for failure in failures:
        logger.warning(f"Serre element ({i}, {j}) not in the radical: {failure}")
    return not failures


def pairing_rows(datum: BorcherdsCartanDatum, weight: Weight, cap: int,
                 form: Optional[BilinearForm] = None) -> List[Dict]:
    """Both sides of the pairing for every ordered pair of sequences of one weight."""
    form = form or BilinearForm(datum)
    sequences = sequences_of_weight(weight)
    rows = []
    for i_seq in sequences:
        for j_seq in sequences:
            quantum = form.pair(FreeQElement.word(i_seq), FreeQElement.word(j_seq), cap).series
            algebra = gdim_corner(j_seq, i_seq, datum, cap)
            comparison = quantum.compare(algebra)
            rows.append({
                "pair": [format_sequence(i_seq), format_sequence(j_seq)],
                "algebraSide": str(algebra),
                "quantumSide": str(quantum),
                "equalToCap": comparison.cap if comparison.equal else None,
            })
    return rows


def symmetry_failures(datum: BorcherdsCartanDatum, weight: Weight) -> List[str]:
    """Pairs of one weight where the form is not symmetric or the two peel orders disagree."""
    first = BilinearForm(datum, "first")
    last = BilinearForm(datum, "last")
    failures = []
    sequences = sequences_of_weight(weight)
    for a in sequences:
        for b in sequences:
            value = first.pair_words(a, b)
            if value != first.pair_words(b, a):
                failures.append(f"asymmetric on ({format_sequence(a)}, {format_sequence(b)})")
            if value != last.pair_words(a, b):
                failures.append(f"peel orders differ on ({format_sequence(a)}, {format_sequence(b)})")
    return failures


def pairing_sweep(datum: BorcherdsCartanDatum, max_ht: int, cap: int) -> List[Dict]:
    """Every ordered pair of equal-weight sequences up to max_ht, both sides as report rows."""
    form = BilinearForm(datum)
    rows = []
    for weight in weights_up_to(datum.indices, max_ht):
        rows.extend(pairing_rows(datum, weight, cap, form))
    logger.info(f"Pairing sweep over {len(rows)} pairs up to height {max_ht}")
    return rows
