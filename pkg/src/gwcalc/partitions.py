"""Cohomology-weighted partitions and the partial order on relative data.

A weighted partition is a multiset of (multiplicity, class) pairs over a
divisor's cohomology; it records tangency orders together with the classes
constraining the contact points.  This module supplies the size and
lexicographic comparisons, automorphism counts, the gluing factor, and the
strict partial order on invariant keys used to pick minimal terms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import factorial, prod

from .ring import RingElement, Space


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    INCOMPARABLE = 2


@dataclass(frozen=True)
class WeightedPair:
    """A tangency multiplicity together with its cohomology weight."""

    multiplicity: int
    weight: RingElement

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("tangency multiplicity must be positive")
        if self.weight.is_zero():
            raise ValueError("weight class must be nonzero")
        if self.weight.homogeneous_degree() is None:
            raise ValueError("weight class must be homogeneous")

    @property
    def weight_degree(self) -> int:
        return self.weight.homogeneous_degree()


def size_compare(p: WeightedPair, q: WeightedPair) -> Ordering:
    """Order pairs by multiplicity, then by weight degree.

    Distinct classes of equal degree compare EQUAL in size; the comparison
    deliberately sees only (m, deg).
    """
    if p.multiplicity != q.multiplicity:
        return Ordering.GREATER if p.multiplicity > q.multiplicity else Ordering.LESS
    if p.weight_degree != q.weight_degree:
        return Ordering.GREATER if p.weight_degree > q.weight_degree else Ordering.LESS
    return Ordering.EQUAL


def _canonical_key(pair: WeightedPair) -> tuple:
    # Sorting key: decreasing size first, then a stable textual tiebreak so
    # equal multisets always produce identical tuples.
    return (
        -pair.multiplicity,
        -pair.weight_degree,
        tuple(pair.weight.coeffs),
    )


@dataclass(frozen=True)
class WeightedPartition:
    """Canonically sorted multiset of weighted pairs over a divisor space."""

    space: Space
    pairs: tuple[WeightedPair, ...]


def weighted_partition(space: Space, pairs) -> WeightedPartition:
    pairs = tuple(pairs)
    for p in pairs:
        if p.weight.space != space:
            raise ValueError("weight lives on the wrong space")
    return WeightedPartition(space, tuple(sorted(pairs, key=_canonical_key)))


def pairs_of(space: Space, data) -> WeightedPartition:
    """Build a partition from (multiplicity, element) tuples."""
    return weighted_partition(space, (WeightedPair(m, w) for m, w in data))


def total_weight(mu: WeightedPartition) -> int:
    return sum(p.multiplicity for p in mu.pairs)


def deg(mu: WeightedPartition) -> int:
    """Sum of the real degrees of the weights."""
    return sum(p.weight_degree for p in mu.pairs)


def aut_order(mu: WeightedPartition) -> int:
    """Order of the symmetry group of the weighted multiset."""
    counts: dict[tuple, int] = {}
    for p in mu.pairs:
        key = (p.multiplicity, p.weight.coeffs)
        counts[key] = counts.get(key, 0) + 1
    return prod(factorial(c) for c in counts.values())


def aut_order_unweighted(mu: WeightedPartition) -> int:
    """Order of the symmetry group of the bare multiplicity multiset."""
    counts: dict[int, int] = {}
    for p in mu.pairs:
        counts[p.multiplicity] = counts.get(p.multiplicity, 0) + 1
    return prod(factorial(c) for c in counts.values())


def delta_factor(mu: WeightedPartition) -> int:
    """Gluing multiplicity: product of tangencies times the weighted
    automorphism count."""
    return prod(p.multiplicity for p in mu.pairs) * aut_order(mu)


def lex_compare(mu: WeightedPartition, nu: WeightedPartition) -> Ordering:
    """Lexicographic comparison of size-sorted partitions.

    The first position where the sizes differ decides; if one partition
    runs out while the other still has pairs, the longer one is GREATER.
    Note this is a total preorder: partitions can compare EQUAL without
    being equal, because size ignores the actual weight classes.
    """
    if mu.space != nu.space:
        raise ValueError("partitions over different spaces")
    for p, q in zip(mu.pairs, nu.pairs):
        cmp = size_compare(p, q)
        if cmp is not Ordering.EQUAL:
            return cmp
    if len(mu.pairs) != len(nu.pairs):
        return Ordering.GREATER if len(mu.pairs) > len(nu.pairs) else Ordering.LESS
    return Ordering.EQUAL


@dataclass(frozen=True)
class InvariantKey:
    """Index of a relative invariant: curve degree, genus, absolute
    insertions, and the weighted partition of tangency conditions."""

    degree: int
    insertions: tuple[RingElement, ...]
    partition: WeightedPartition
    genus: int = 0


def key_compare(a: InvariantKey, b: InvariantKey) -> Ordering:
    """Strict partial order on invariant keys.

    A key is smaller when its curve degree is smaller; ties are broken by
    genus, then by fewer absolute insertions, then by *larger* partition
    degree, then by *lexicographically greater* partition.  With rank-one
    curve classes every pair is comparable (possibly EQUAL).
    """
    if a.partition.space != b.partition.space:
        raise ValueError("keys over different divisor spaces")
    if a.degree != b.degree:
        return Ordering.LESS if a.degree < b.degree else Ordering.GREATER
    if a.genus != b.genus:
        return Ordering.LESS if a.genus < b.genus else Ordering.GREATER
    if len(a.insertions) != len(b.insertions):
        return (
            Ordering.LESS
            if len(a.insertions) < len(b.insertions)
            else Ordering.GREATER
        )
    if deg(a.partition) != deg(b.partition):
        return (
            Ordering.LESS
            if deg(a.partition) > deg(b.partition)
            else Ordering.GREATER
        )
    lex = lex_compare(a.partition, b.partition)
    if lex is Ordering.GREATER:
        return Ordering.LESS
    if lex is Ordering.LESS:
        return Ordering.GREATER
    return Ordering.EQUAL


# ---------------------------------------------------------------------------
# Text and JSON forms: "(2,1)+(1,pt)" and [{"m": 2, "label": "1"}, ...].


def weight_label(w: RingElement) -> str:
    from .ring import basis

    bas = basis(w.space)
    bits = []
    for i, c in w.coeffs:
        bits.append(bas[i].label if c == 1 else f"{c}*{bas[i].label}")
    return "+".join(bits) if bits else "0"


def parse_partition(space: Space, text: str) -> WeightedPartition:
    from .ring import by_label

    text = text.strip()
    if text in ("", "empty", "()"):
        return weighted_partition(space, ())
    pairs = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ValueError(f"bad partition chunk {chunk!r}")
        m_text, label = chunk[1:-1].split(",", 1)
        pairs.append(WeightedPair(int(m_text), by_label(space, label.strip())))
    return weighted_partition(space, pairs)


def partition_to_json(mu: WeightedPartition) -> list[dict]:
    return [
        {"m": p.multiplicity, "label": weight_label(p.weight)} for p in mu.pairs
    ]


def partition_to_text(mu: WeightedPartition) -> str:
    if not mu.pairs:
        return "empty"
    return "+".join(f"({p.multiplicity},{weight_label(p.weight)})" for p in mu.pairs)


def empty_partition(space: Space) -> WeightedPartition:
    return weighted_partition(space, ())


__all__ = [
    "Ordering",
    "WeightedPair",
    "WeightedPartition",
    "InvariantKey",
    "weighted_partition",
    "pairs_of",
    "total_weight",
    "deg",
    "aut_order",
    "aut_order_unweighted",
    "delta_factor",
    "size_compare",
    "lex_compare",
    "key_compare",
    "parse_partition",
    "partition_to_json",
    "partition_to_text",
    "weight_label",
    "empty_partition",
]
