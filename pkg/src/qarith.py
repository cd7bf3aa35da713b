"""
Q-Arithmetic Module
Integer Laurent polynomials and truncated Laurent series in the formal variable q.
"""

from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple, Union
import logging
import re

from src.errors import InvalidArg, NotDivisible, NotInvertibleLeading

logger = logging.getLogger(__name__)

_TERM = re.compile(r"^([+-]?\d*)(q(?:\^(-?\d+))?)?$")


class LaurentPoly:
    """
    Finitely supported map exponent -> integer coefficient.

    Immutable; zero coefficients are never stored, so equality and hashing are canonical.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Dict[int, int]] = None):
        self._coeffs: Dict[int, int] = {int(e): int(c) for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def coerce(cls, value: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls({0: value})
        raise TypeError(f"Cannot convert {type(value).__name__} to LaurentPoly")

    # inspection

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def terms(self) -> List[Tuple[int, int]]:
        return sorted(self._coeffs.items())

    @property
    def min_exponent(self) -> int:
        if not self._coeffs:
            raise InvalidArg("The zero polynomial has no lowest exponent")
        return min(self._coeffs)

    @property
    def max_exponent(self) -> int:
        if not self._coeffs:
            raise InvalidArg("The zero polynomial has no highest exponent")
        return max(self._coeffs)

    def evaluate_at_one(self) -> int:
        return sum(self._coeffs.values())

    def bar(self) -> "LaurentPoly":
        """q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()})

    # ring structure

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: Dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise InvalidArg(f"Negative power {n} of a Laurent polynomial")
        result = LaurentPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def to_series(self, cap: int) -> "QSeries":
        floor = self.min_exponent if self._coeffs else 0
        return QSeries(self._coeffs, floor=min(floor, cap + 1), cap=cap)

    # text

    def __str__(self) -> str:
        return _render(self.terms())

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the rendering of __str__, e.g. "q^-3 + 2q^-1 - q + 4"."""
        cleaned = text.replace(" ", "").replace("^-", "^~")
        if cleaned in ("", "0"):
            return cls()
        coeffs: Dict[int, int] = {}
        for piece in filter(None, re.split(r"(?=[+-])", cleaned)):
            piece = piece.replace("^~", "^-")
            match = _TERM.match(piece)
            if not match:
                raise InvalidArg(f"Cannot parse Laurent term {piece!r} in {text!r}")
            raw_coeff, has_q, raw_exp = match.groups()
            if raw_coeff in ("", "+"):
                coefficient = 1
            elif raw_coeff == "-":
                coefficient = -1
            else:
                coefficient = int(raw_coeff)
            exponent = (int(raw_exp) if raw_exp is not None else 1) if has_q else 0
            coeffs[exponent] = coeffs.get(exponent, 0) + coefficient
        return cls(coeffs)


def _render(terms: Iterable[Tuple[int, int]]) -> str:
    out = ""
    for e, c in terms:
        magnitude = abs(c)
        if e == 0:
            body = f"{magnitude}"
        else:
            power = "q" if e == 1 else f"q^{e}"
            body = power if magnitude == 1 else f"{magnitude}{power}"
        if not out:
            out = body if c > 0 else f"-{body}"
        else:
            out += f" + {body}" if c > 0 else f" - {body}"
    return out or "0"


class SeriesComparison(NamedTuple):
    equal: bool
    cap: int


class QSeries:
    """
    Truncated Laurent series with integer coefficients.

    Coefficients are known exactly for exponents in [floor, cap]; below floor they are zero,
    above cap they are unknown. Arithmetic propagates the cap; comparisons never claim
    equality beyond the common cap.
    """

    __slots__ = ("_coeffs", "floor", "cap")

    def __init__(self, coeffs: Optional[Dict[int, int]] = None, floor: int = 0, cap: int = 0):
        self.floor = int(floor)
        self.cap = int(cap)
        self._coeffs: Dict[int, int] = {
            int(e): int(c) for e, c in (coeffs or {}).items() if c != 0 and floor <= e <= cap
        }
        if any(e < floor for e, c in (coeffs or {}).items() if c != 0 and e <= cap):
            raise InvalidArg(f"Series has a nonzero coefficient below its floor {floor}")

    @classmethod
    def zero(cls, cap: int) -> "QSeries":
        return cls({}, floor=0, cap=cap)

    def coefficient(self, exponent: int) -> int:
        if exponent > self.cap:
            raise InvalidArg(f"Coefficient of q^{exponent} is beyond the cap {self.cap}")
        return self._coeffs.get(exponent, 0)

    def terms(self) -> List[Tuple[int, int]]:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def truncate(self, cap: int) -> "QSeries":
        return QSeries(self._coeffs, floor=min(self.floor, cap + 1), cap=min(cap, self.cap))

    def shift(self, k: int) -> "QSeries":
        return QSeries({e + k: c for e, c in self._coeffs.items()}, floor=self.floor + k, cap=self.cap + k)

    def evaluate_polynomial_part(self) -> LaurentPoly:
        return LaurentPoly(self._coeffs)

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentPoly.coerce(other)
            other = other.to_series(self.cap) if not other.is_zero() else QSeries.zero(self.cap)
        if not isinstance(other, QSeries):
            return NotImplemented
        cap = min(self.cap, other.cap)
        out = {e: c for e, c in self._coeffs.items() if e <= cap}
        for e, c in other._coeffs.items():
            if e <= cap:
                out[e] = out.get(e, 0) + c
        return QSeries(out, floor=min(self.floor, other.floor, cap + 1), cap=cap)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self._coeffs.items()}, floor=self.floor, cap=self.cap)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries({e: c * other for e, c in self._coeffs.items()}, floor=self.floor, cap=self.cap)
        if isinstance(other, LaurentPoly):
            if other.is_zero():
                return QSeries.zero(self.cap)
            low = other.min_exponent
            cap = self.cap + low
            out: Dict[int, int] = {}
            for e1, c1 in self._coeffs.items():
                for e2, c2 in other.terms():
                    if e1 + e2 <= cap:
                        out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
            return QSeries(out, floor=min(self.floor + low, cap + 1), cap=cap)
        if not isinstance(other, QSeries):
            return NotImplemented
        cap = min(self.cap + other.floor, other.cap + self.floor)
        out = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                if e1 + e2 <= cap:
                    out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QSeries(out, floor=min(self.floor + other.floor, cap + 1), cap=cap)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self * other
        return NotImplemented

    def compare(self, other: Union["QSeries", LaurentPoly, int]) -> SeriesComparison:
        """Compare up to the common cap; the cap is part of the answer."""
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentPoly.coerce(other)
            other = other.to_series(self.cap) if not other.is_zero() else QSeries.zero(self.cap)
        cap = min(self.cap, other.cap)
        mine = {e: c for e, c in self._coeffs.items() if e <= cap}
        theirs = {e: c for e, c in other._coeffs.items() if e <= cap}
        return SeriesComparison(mine == theirs, cap)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (QSeries, LaurentPoly, int)):
            return NotImplemented
        return self.compare(other).equal

    __hash__ = None

    def __str__(self) -> str:
        return f"{_render(self.terms())} + O(q^{self.cap + 1})"

    def __repr__(self) -> str:
        return f"QSeries({str(self)!r}, floor={self.floor})"

    def to_dict(self) -> Dict:
        return {"series": _render(self.terms()), "floor": self.floor, "cap": self.cap}


def quantum_int(n: int, r: int = 1) -> LaurentPoly:
    """[n]_i with q_i = q^r."""
    if n <= 0 or r <= 0:
        raise InvalidArg(f"quantum_int needs n >= 1 and r >= 1, got n={n}, r={r}")
    return LaurentPoly({r * (n - 1 - 2 * k): 1 for k in range(n)})


def quantum_factorial(n: int, r: int = 1) -> LaurentPoly:
    if n < 0:
        raise InvalidArg(f"quantum_factorial needs n >= 0, got {n}")
    result = LaurentPoly.one()
    for k in range(1, n + 1):
        result = result * quantum_int(k, r)
    return result


def quantum_binomial(n: int, k: int, r: int = 1) -> LaurentPoly:
    if k < 0 or k > n:
        return LaurentPoly()
    return exact_quotient(quantum_factorial(n, r), quantum_factorial(k, r) * quantum_factorial(n - k, r))


def geom_inverse(c: int, cap: int) -> QSeries:
    """(1 - q^c)^-1 = 1 + q^c + q^2c + ... up to cap."""
    if c < 1:
        raise InvalidArg(f"geom_inverse needs c >= 1, got {c}")
    return QSeries({e: 1 for e in range(0, cap + 1, c)}, floor=0, cap=cap)


def geom_product(exponents: Iterable[int], cap: int) -> QSeries:
    """Product of geom_inverse(c) over the exponents, truncated at cap."""
    result = QSeries({0: 1}, floor=0, cap=cap)
    for c in exponents:
        result = result * geom_inverse(c, cap)
    return result


def series_div_exact(num: QSeries, den: LaurentPoly) -> QSeries:
    """
    Divide a series by a Laurent polynomial whose lowest coefficient is a unit.

    Args:
        num: the numerator series
        den: nonzero Laurent polynomial with lowest coefficient +1 or -1

    Returns:
        QSeries s with s * den == num, capped at num.cap - den.max_exponent
    """
    if den.is_zero():
        raise InvalidArg("Division by the zero polynomial")
    low = den.min_exponent
    lead = den.coefficient(low)
    if lead not in (1, -1):
        raise NotInvertibleLeading(f"Lowest coefficient of {den} is {lead}, not a unit")
    floor = num.floor - low
    cap = num.cap - den.max_exponent
    tail = [(e - low, c) for e, c in den.terms() if e != low]
    out: Dict[int, int] = {}
    for e in range(floor, cap + 1):
        acc = num.coefficient(e + low)
        for t, c in tail:
            acc -= c * out.get(e - t, 0)
        if acc:
            out[e] = lead * acc
    return QSeries(out, floor=min(floor, cap + 1), cap=cap)


def exact_quotient(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact Laurent polynomial division; raises NotDivisible on a remainder."""
    if den.is_zero():
        raise InvalidArg("Division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly()
    remainder = dict(num.terms())
    top = den.max_exponent
    lead = den.coefficient(top)
    quotient: Dict[int, int] = {}
    low_limit = num.min_exponent - den.min_exponent
    while remainder:
        e = max(remainder)
        shift = e - top
        if shift < low_limit or remainder[e] % lead != 0:
            logger.debug(f"Remainder at q^{e} dividing {num} by {den}")
            raise NotDivisible(f"{num} is not divisible by {den}")
        c = remainder[e] // lead
        quotient[shift] = c
        for d, dc in den.terms():
            remainder[d + shift] = remainder.get(d + shift, 0) - c * dc
            if remainder[d + shift] == 0:
                del remainder[d + shift]
    return LaurentPoly(quotient)
