"""
Relations Module
The defining local relations, instantiated per sequence.

A generator word is a tuple of tokens ("x", k) or ("t", k) read like an operator
composite: the rightmost token acts first. Each relation instance states
sum(lhs) == sum(rhs) as maps out of the source idempotent. Every oracle in the
package (polynomial representation, finite modules) consumes this one list.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence as _Seq, Tuple
import logging

from src.datum import BorcherdsCartanDatum
from src.wordcomb import Sequence, format_sequence

logger = logging.getLogger(__name__)

Token = Tuple[str, int]
Word = Tuple[Token, ...]
Term = Tuple[Fraction, Word]


@dataclass(frozen=True)
class RelationInstance:
    name: str
    source: Sequence
    lhs: Tuple[Term, ...]
    rhs: Tuple[Term, ...]

    def describe(self) -> str:
        return f"{self.name} on {format_sequence(self.source)}"


def dot_power(k: int, e: int) -> Word:
    return (("x", k),) * e


def double_crossing_rhs(datum: BorcherdsCartanDatum, a: str, b: str, k: int) -> Tuple[Term, ...]:
    """tau_k tau_k on bottom labels (a, b) at positions (k, k+1)."""
    if a == b:
        return ()
    if datum.bilinear(a, b) == 0:
        return ((Fraction(1), ()),)
    return (
        (Fraction(1), dot_power(k, -datum.a(a, b))),
        (Fraction(1), dot_power(k + 1, -datum.a(b, a))),
    )


def braid_correction(datum: BorcherdsCartanDatum, labels: _Seq[str], k: int) -> Tuple[Term, ...]:
    """
    tau_k tau_k+1 tau_k - tau_k+1 tau_k tau_k+1 on bottom labels (labels[0..2]) at k, k+1, k+2.

    Nonzero only for an i j i pattern with i real, j != i and i . j != 0, where it is
    sum over a + b = -a_ij - 1 of x_k^a x_k+2^b.
    """
    i, j, i2 = labels
    if i != i2 or i == j or not datum.is_real(i) or datum.bilinear(i, j) == 0:
        return ()
    top = -datum.a(i, j) - 1
    return tuple((Fraction(1), dot_power(k, e) + dot_power(k + 2, top - e)) for e in range(top + 1))


def crossing_positions(n: int, blocks: Optional[_Seq[int]] = None) -> List[int]:
    """Crossing positions 1..n-1, minus block boundaries when a composition is given."""
    if not blocks:
        return list(range(1, n))
    boundaries = set()
    running = 0
    for size in list(blocks)[:-1]:
        running += size
        boundaries.add(running)
    return [k for k in range(1, n) if k not in boundaries]


def relation_instances(
    datum: BorcherdsCartanDatum,
    seq: Sequence,
    blocks: Optional[_Seq[int]] = None,
) -> List[RelationInstance]:
    seq = tuple(seq)
    n = len(seq)
    one = Fraction(1)
    crossings = crossing_positions(n, blocks)
    out: List[RelationInstance] = []

    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            out.append(RelationInstance(f"dots x{a} x{b} commute", seq,
                                        ((one, (("x", a), ("x", b))),), ((one, (("x", b), ("x", a))),)))

    for k in crossings:
        a, b = seq[k - 1], seq[k]
        unit = ((one, ()),) if a == b and datum.is_real(a) else ()
        t = ("t", k)
        out.append(RelationInstance(f"double crossing t{k}", seq, ((one, (t, t)),),
                                    double_crossing_rhs(datum, a, b, k)))
        out.append(RelationInstance(f"x{k} t{k} - t{k} x{k + 1}", seq,
                                    ((one, (("x", k), t)), (-one, (t, ("x", k + 1)))), unit))
        out.append(RelationInstance(f"t{k} x{k} - x{k + 1} t{k}", seq,
                                    ((one, (t, ("x", k))), (-one, (("x", k + 1), t))), unit))
        for p in range(1, n + 1):
            if p not in (k, k + 1):
                out.append(RelationInstance(f"x{p} slides past t{k}", seq,
                                            ((one, (("x", p), t)),), ((one, (t, ("x", p))),)))

    for k in crossings:
        for l in crossings:
            if l > k + 1:
                out.append(RelationInstance(f"t{k} t{l} commute", seq,
                                            ((one, (("t", k), ("t", l))),), ((one, (("t", l), ("t", k))),)))

    for k in crossings:
        if k + 1 in crossings:
            out.append(RelationInstance(
                f"braid t{k} t{k + 1} t{k}", seq,
                ((one, (("t", k), ("t", k + 1), ("t", k))), (-one, (("t", k + 1), ("t", k), ("t", k + 1)))),
                braid_correction(datum, seq[k - 1:k + 2], k),
            ))

    logger.debug(f"{len(out)} relation instances on {format_sequence(seq)}")
    return out
