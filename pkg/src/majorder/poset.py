"""Majorization order on finite non-increasing sequences of positive integers.

``a`` majorizes ``b`` (written a ≻ b) when

* ``len(a) <= len(b)``,
* every prefix sum of ``a`` dominates the matching prefix sum of ``b``, and
* ``sum(a) >= sum(b)``.

Note the total-sum condition is an inequality, so a ≻ b does not force the two
sequences to have the same weight: ``(2,) ≻ (1,)`` holds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator

from .errors import EmptySequence, InvalidSequence, NonPositiveEntry


@dataclass(frozen=True, order=False)
class CanonicalSeq:
    """Non-empty, non-increasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise EmptySequence("sequence must be non-empty")
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool):
                raise InvalidSequence(f"entries must be integers, got {p!r}")
            if p < 1:
                raise NonPositiveEntry(f"entries must be >= 1, got {p}")
        if any(x < y for x, y in zip(parts, parts[1:])):
            raise InvalidSequence(f"{parts} is not non-increasing; use canonicalize()")

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __repr__(self) -> str:
        return f"CanonicalSeq{self}"

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def prefix_sums(self) -> tuple[int, ...]:
        return tuple(accumulate(self.parts))

    def to_list(self) -> list[int]:
        return list(self.parts)


class DominanceResult(enum.Enum):
    EQUAL = "Equal"
    FIRST_MAJORIZES_STRICTLY = "FirstMajorizesStrictly"
    SECOND_MAJORIZES_STRICTLY = "SecondMajorizesStrictly"
    INCOMPARABLE = "Incomparable"

    def mirrored(self) -> "DominanceResult":
        if self is DominanceResult.FIRST_MAJORIZES_STRICTLY:
            return DominanceResult.SECOND_MAJORIZES_STRICTLY
        if self is DominanceResult.SECOND_MAJORIZES_STRICTLY:
            return DominanceResult.FIRST_MAJORIZES_STRICTLY
        return self


def canonicalize(raw: Iterable[int]) -> CanonicalSeq:
    """Sort a multiset of positive integers into canonical (non-increasing) form."""
    items = list(raw)
    if not items:
        raise EmptySequence("sequence must be non-empty")
    for p in items:
        if not isinstance(p, int) or isinstance(p, bool):
            raise InvalidSequence(f"entries must be integers, got {p!r}")
        if p < 1:
            raise NonPositiveEntry(f"entries must be >= 1, got {p}")
    return CanonicalSeq(tuple(sorted(items, reverse=True)))


def parse_sequence(text: str) -> CanonicalSeq:
    """Parse ``"3,1,2"`` into a canonical sequence."""
    fields = [f.strip() for f in text.split(",")]
    if not fields or any(f == "" for f in fields):
        raise InvalidSequence(f"cannot parse sequence {text!r}")
    try:
        values = [int(f) for f in fields]
    except ValueError as exc:
        raise InvalidSequence(f"cannot parse sequence {text!r}") from exc
    return canonicalize(values)


def _as_seq(x) -> CanonicalSeq:
    return x if isinstance(x, CanonicalSeq) else canonicalize(x)


def majorizes(a: CanonicalSeq, b: CanonicalSeq) -> bool:
    """True iff a ≻ b. Reflexive: ``majorizes(a, a)`` is always true."""
    a = _as_seq(a)
    b = _as_seq(b)
    if len(a) > len(b):
        return False
    sa = sb = 0
    for x, y in zip(a.parts, b.parts):
        sa += x
        sb += y
        if sa < sb:
            return False
    return a.total >= b.total


def compare(a: CanonicalSeq, b: CanonicalSeq) -> DominanceResult:
    a = _as_seq(a)
    b = _as_seq(b)
    if a.parts == b.parts:
        return DominanceResult.EQUAL
    if majorizes(a, b):
        return DominanceResult.FIRST_MAJORIZES_STRICTLY
    if majorizes(b, a):
        return DominanceResult.SECOND_MAJORIZES_STRICTLY
    return DominanceResult.INCOMPARABLE


def prefix_table(a: CanonicalSeq, b: CanonicalSeq) -> list[dict]:
    """Rows of running sums used to decide a ≻ b and b ≻ a (``None`` past the end)."""
    pa, pb = a.prefix_sums, b.prefix_sums
    rows = []
    for i in range(max(len(pa), len(pb))):
        rows.append({
            "i": i + 1,
            "prefix_a": pa[i] if i < len(pa) else None,
            "prefix_b": pb[i] if i < len(pb) else None,
        })
    return rows


def _partitions(total: int, length: int, largest: int) -> Iterator[tuple[int, ...]]:
    # partitions of `total` into exactly `length` parts, each <= largest,
    # lexicographically descending
    if length == 0:
        if total == 0:
            yield ()
        return
    hi = min(largest, total - (length - 1))
    lo = -(-total // length)
    for first in range(hi, lo - 1, -1):
        for rest in _partitions(total - first, length - 1, first):
            yield (first,) + rest


def enumerate_sequences(max_sum: int, max_len: int | None = None) -> Iterator[CanonicalSeq]:
    """Every canonical sequence with sum <= max_sum (and length <= max_len).

    Order: ascending sum, then ascending length, then lexicographically
    descending parts. Each call returns a fresh generator.
    """
    if max_sum < 1:
        raise ValueError("max_sum must be >= 1")
    if max_len is not None and max_len < 1:
        raise ValueError("max_len must be >= 1")
    for s in range(1, max_sum + 1):
        top = s if max_len is None else min(s, max_len)
        for length in range(1, top + 1):
            for parts in _partitions(s, length, s):
                yield CanonicalSeq(parts)


def comparable_pairs(max_sum: int) -> Iterator[tuple[CanonicalSeq, CanonicalSeq]]:
    """All ordered pairs (a, b) with a ≻ b and both sums <= max_sum, reflexive pairs included.

    Ordered by the position of ``a`` in :func:`enumerate_sequences`, then of ``b``.
    """
    seqs = list(enumerate_sequences(max_sum))
    prefixes = [s.prefix_sums for s in seqs]
    for i, a in enumerate(seqs):
        pa = prefixes[i]
        for j, b in enumerate(seqs):
            pb = prefixes[j]
            if len(pa) > len(pb) or pa[-1] < pb[-1]:
                continue
            if all(x >= y for x, y in zip(pa, pb)):
                yield a, b


def rectangle(value: int, count: int) -> CanonicalSeq:
    """``value`` repeated ``count`` times."""
    if value < 1 or count < 1:
        raise ValueError("value and count must be >= 1")
    return CanonicalSeq((value,) * count)
