"""
Word Combinatorics Module
Weights, sequences, divided-power sequences and symmetric-group combinatorics.

Permutation convention: w moves the entry at position a to position w(a), so
w(seq)[w(a)] = seq[a]. A word [k1, ..., kl] denotes the composite s_k1 o ... o s_kl,
which as a diagram is read top (k1) to bottom (kl).
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Dict, Iterable, Iterator, List, Sequence as _Seq, Tuple
import logging

from src.datum import BorcherdsCartanDatum
from src.errors import ImaginaryDividedPower, InvalidArg, WeightMismatch
from src.qarith import LaurentPoly, quantum_factorial

logger = logging.getLogger(__name__)

Sequence = Tuple[str, ...]


@dataclass(frozen=True)
class Weight:
    """An element of N[I], stored as sorted (label, multiplicity) pairs without zeros."""

    items: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Dict[str, int]) -> "Weight":
        if any(m < 0 for m in counts.values()):
            raise InvalidArg(f"Weight multiplicities must be nonnegative: {counts}")
        return cls(tuple(sorted((label, m) for label, m in counts.items() if m > 0)))

    @classmethod
    def of(cls, seq: Iterable[str]) -> "Weight":
        counts: Dict[str, int] = {}
        for label in seq:
            counts[label] = counts.get(label, 0) + 1
        return cls.from_counts(counts)

    @property
    def counts(self) -> Dict[str, int]:
        return dict(self.items)

    @property
    def ht(self) -> int:
        return sum(m for _, m in self.items)

    def __getitem__(self, label: str) -> int:
        return self.counts.get(label, 0)

    def __add__(self, other: "Weight") -> "Weight":
        counts = self.counts
        for label, m in other.items:
            counts[label] = counts.get(label, 0) + m
        return Weight.from_counts(counts)

    def __sub__(self, other: "Weight") -> "Weight":
        counts = self.counts
        for label, m in other.items:
            counts[label] = counts.get(label, 0) - m
        return Weight.from_counts(counts)

    def __le__(self, other: "Weight") -> bool:
        return all(m <= other[label] for label, m in self.items)

    def scale(self, n: int) -> "Weight":
        return Weight.from_counts({label: n * m for label, m in self.items})

    def __str__(self) -> str:
        return ",".join(f"{label}:{m}" for label, m in self.items)


def weight_of(seq: Iterable[str]) -> Weight:
    return Weight.of(seq)


def bilinear_weights(datum: BorcherdsCartanDatum, a: Weight, b: Weight) -> int:
    return sum(m * n * datum.bilinear(i, j) for i, m in a.items for j, n in b.items)


def parse_sequence(text: str) -> Sequence:
    """"i j i" -> ("i", "j", "i")."""
    return tuple(text.split())


def format_sequence(seq: Sequence) -> str:
    return " ".join(seq)


def parse_weight(text: str) -> Weight:
    """"i:2,j:1" -> Weight."""
    counts: Dict[str, int] = {}
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        label, _, mult = chunk.partition(":")
        try:
            counts[label.strip()] = counts.get(label.strip(), 0) + (int(mult) if mult else 1)
        except ValueError:
            raise InvalidArg(f"Cannot parse weight chunk {chunk!r}")
    return Weight.from_counts(counts)


@lru_cache(maxsize=None)
def _distinct_orderings(items: Tuple[Tuple[str, int], ...]) -> Tuple[Sequence, ...]:
    pool = [label for label, m in items for _ in range(m)]
    return tuple(sorted(set(permutations(pool))))


def sequences_of_weight(weight: Weight) -> List[Sequence]:
    """Seq(weight), sorted."""
    return list(_distinct_orderings(weight.items))


def weights_up_to(indices: Iterable[str], max_ht: int) -> List[Weight]:
    """All nonzero weights over the labels with height <= max_ht, by height then label."""
    labels = list(indices)
    out = []
    for ht in range(1, max_ht + 1):
        for combo in sorted(set(tuple(sorted(c)) for c in product(labels, repeat=ht))):
            out.append(Weight.of(combo))
    logger.debug(f"{len(out)} weights up to height {max_ht} over {labels}")
    return out


@dataclass(frozen=True)
class DividedSequence:
    """Blocks (label, n); n > 1 only for real labels."""

    blocks: Tuple[Tuple[str, int], ...]

    def hat(self) -> Sequence:
        return tuple(label for label, n in self.blocks for _ in range(n))

    @property
    def weight(self) -> Weight:
        return Weight.of(self.hat())

    def validate(self, datum: BorcherdsCartanDatum) -> "DividedSequence":
        for label, n in self.blocks:
            if n < 1:
                raise InvalidArg(f"Block {label}^({n}) must have n >= 1")
            if n > 1 and not datum.is_real(label):
                raise ImaginaryDividedPower(f"Divided power {label}^({n}) on an imaginary index")
        return self

    def bracket(self, datum: BorcherdsCartanDatum) -> int:
        """<i> = sum of n(n-1)/2 r_i over blocks."""
        return sum(n * (n - 1) // 2 * datum.r(label) for label, n in self.blocks)

    def factorial(self, datum: BorcherdsCartanDatum) -> LaurentPoly:
        result = LaurentPoly.one()
        for label, n in self.blocks:
            result = result * quantum_factorial(n, datum.r(label))
        return result

    def __str__(self) -> str:
        return " ".join(label if n == 1 else f"{label}^({n})" for label, n in self.blocks)


def parse_divided(text: str) -> DividedSequence:
    """"i^(2) j i" -> DividedSequence((("i", 2), ("j", 1), ("i", 1)))."""
    blocks = []
    for token in text.split():
        label, sep, rest = token.partition("^(")
        if not sep:
            blocks.append((token, 1))
            continue
        if not rest.endswith(")"):
            raise InvalidArg(f"Cannot parse divided power {token!r}")
        try:
            blocks.append((label, int(rest[:-1])))
        except ValueError:
            raise InvalidArg(f"Cannot parse divided power {token!r}")
    return DividedSequence(tuple(blocks))


@dataclass(frozen=True)
class Permutation:
    """One-line notation: images[a-1] = w(a)."""

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InvalidArg(f"Not a permutation: {list(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, k: int, n: int) -> "Permutation":
        if not 1 <= k < n:
            raise InvalidArg(f"s_{k} is not a generator of S_{n}")
        images = list(range(1, n + 1))
        images[k - 1], images[k] = images[k], images[k - 1]
        return cls(tuple(images))

    @classmethod
    def from_word(cls, word: Iterable[int], n: int) -> "Permutation":
        result = cls.identity(n)
        for k in reversed(list(word)):
            result = cls.simple(k, n) * result
        return result

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition (self o other)."""
        return Permutation(tuple(self.images[b - 1] for b in other.images))

    def inverse(self) -> "Permutation":
        out = [0] * self.n
        for a, b in enumerate(self.images, start=1):
            out[b - 1] = a
        return Permutation(tuple(out))

    def length(self) -> int:
        im = self.images
        return sum(1 for p in range(len(im)) for q in range(p + 1, len(im)) if im[p] > im[q])

    def inversions(self) -> Iterator[Tuple[int, int]]:
        """Source position pairs (p, q), p < q, whose strands cross."""
        im = self.images
        for p in range(len(im)):
            for q in range(p + 1, len(im)):
                if im[p] > im[q]:
                    yield p + 1, q + 1

    def is_left_descent(self, k: int) -> bool:
        """l(s_k w) < l(w)."""
        inv = self.inverse()
        return inv(k) > inv(k + 1)

    def is_right_descent(self, k: int) -> bool:
        """l(w s_k) < l(w)."""
        return self(k) > self(k + 1)

    def act(self, seq: _Seq) -> Sequence:
        if len(seq) != self.n:
            raise InvalidArg(f"Permutation of {self.n} letters applied to a sequence of length {len(seq)}")
        out: List[str] = [""] * self.n
        for a, label in enumerate(seq):
            out[self.images[a] - 1] = label
        return tuple(out)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


def all_permutations(n: int) -> List[Permutation]:
    return [Permutation(p) for p in permutations(range(1, n + 1))]


@lru_cache(maxsize=None)
def lexmin_reduced_word(w: Permutation) -> Tuple[int, ...]:
    """
    The lexicographically smallest reduced word of w.

    Every left descent can start a reduced word, so taking the smallest one at each
    step is lex-minimal.
    """
    word: List[int] = []
    current = w
    while True:
        descent = next((k for k in range(1, current.n) if current.is_left_descent(k)), None)
        if descent is None:
            return tuple(word)
        word.append(descent)
        current = Permutation.simple(descent, current.n) * current


def longest_element(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def coset_reps_min(n: int, m: int) -> List[Permutation]:
    """Minimal length representatives of w(S_n x S_m) in S_{n+m}, by length then one-line order."""
    if n < 0 or m < 0:
        raise InvalidArg(f"coset_reps_min needs n, m >= 0, got ({n}, {m})")
    total = n + m
    reps = []
    for chosen in combinations(range(1, total + 1), n):
        rest = [p for p in range(1, total + 1) if p not in chosen]
        reps.append(Permutation(tuple(chosen) + tuple(rest)))
    return sorted(reps, key=lambda w: (w.length(), w.images))


def transport_set(src: Sequence, dst: Sequence) -> List[Permutation]:
    """All w with w(src) = dst, sorted by one-line notation."""
    if Weight.of(src) != Weight.of(dst):
        raise WeightMismatch(f"{format_sequence(src)} and {format_sequence(dst)} have different weights")
    n = len(src)
    labels = sorted(set(src))
    sources = {label: [a for a in range(n) if src[a] == label] for label in labels}
    targets = {label: [b for b in range(n) if dst[b] == label] for label in labels}
    out = []
    for choice in product(*(permutations(targets[label]) for label in labels)):
        images = [0] * n
        for label, chosen in zip(labels, choice):
            for a, b in zip(sources[label], chosen):
                images[a] = b + 1
        out.append(Permutation(tuple(images)))
    return sorted(out, key=lambda w: w.images)


def crossing_degree(w: Permutation, src: Sequence, datum: BorcherdsCartanDatum) -> int:
    return -sum(datum.bilinear(src[p - 1], src[q - 1]) for p, q in w.inversions())


def word_degree(word: Iterable[int], src: Sequence, datum: BorcherdsCartanDatum) -> int:
    """Sum of the crossing generator degrees along a word, read bottom to top."""
    current = tuple(src)
    total = 0
    for k in reversed(list(word)):
        total -= datum.bilinear(current[k - 1], current[k])
        current = Permutation.simple(k, len(current)).act(current)
    return total


def interleavings(a: Sequence, b: Sequence, datum: BorcherdsCartanDatum) -> Iterator[Tuple[Sequence, Permutation, int]]:
    """
    Every interleaving of a before b.

    Yields (target, u, |u|) where u sends positions of the concatenation ab to target
    positions, and |u| sums -(a_p . b_q) over the crossed pairs.
    """
    n, m = len(a), len(b)
    for chosen in combinations(range(1, n + m + 1), n):
        rest = [p for p in range(1, n + m + 1) if p not in chosen]
        u = Permutation(tuple(chosen) + tuple(rest))
        target = u.act(tuple(a) + tuple(b))
        degree = 0
        for p, pos_a in enumerate(chosen):
            for q, pos_b in enumerate(rest):
                if pos_b < pos_a:
                    degree -= datum.bilinear(a[p], b[q])
        yield target, u, degree


def shuffles(a: Sequence, b: Sequence, target: Sequence, datum: BorcherdsCartanDatum) -> List[Tuple[Permutation, int]]:
    if Weight.of(a) + Weight.of(b) != Weight.of(target):
        raise WeightMismatch(
            f"{format_sequence(a)} and {format_sequence(b)} do not shuffle to {format_sequence(target)}"
        )
    target = tuple(target)
    return [(u, degree) for t, u, degree in interleavings(a, b, datum) if t == target]
