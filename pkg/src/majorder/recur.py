"""Fibonacci numbers and two-term linear recurrences A(n+2) = a*A(n+1) + b*A(n).

Fibonacci indexing here starts F(0) = F(1) = 1, so F(2) = 2 and F(n) is the
classical Fibonacci number with index n + 1. Reports label this the
"shifted convention".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Callable, Iterator, Sequence

from .errors import HypothesisViolated, NegativeTerm, NotMonotone
from .exact.interval import RealInterval
from .poset import CanonicalSeq, majorizes

FIB_CONVENTION = "shifted convention: F(0) = F(1) = 1"

_FIB = [1, 1]


def fib(n: int) -> int:
    if n < 0:
        raise ValueError("fib index must be >= 0")
    while len(_FIB) <= n:
        _FIB.append(_FIB[-1] + _FIB[-2])
    return _FIB[n]


def fib_even(n: int) -> int:
    return fib(2 * n)


def fib_odd(n: int) -> int:
    return fib(2 * n + 1)


@dataclass(frozen=True)
class RecurrenceSpec:
    """A(0) = 1, A(1) = A1, A(n+2) = a*A(n+1) + b*A(n), with a > 0 > b."""

    a: int
    b: int
    A1: int

    def __post_init__(self):
        if self.a < 1:
            raise HypothesisViolated(f"a must be a positive integer, got {self.a}")
        if self.b > -1:
            raise HypothesisViolated(f"b must be a negative integer, got {self.b}")
        if self.A1 < 0:
            raise HypothesisViolated(f"A1 must be non-negative, got {self.A1}")
        if self.q(self.A1) <= 0:
            raise HypothesisViolated(
                f"q(A1) = A1^2 - a*A1 - b = {self.q(self.A1)} must be positive"
            )

    def q(self, x: int) -> int:
        return x * x - self.a * x - self.b

    @property
    def label(self) -> str:
        return f"rec(a={self.a},b={self.b},A1={self.A1})"


def recurrence_terms(spec: RecurrenceSpec, n_max: int) -> list[int]:
    """[A(0), ..., A(n_max)]; raises NegativeTerm at the first negative term."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    terms = [1, spec.A1][: n_max + 1]
    while len(terms) <= n_max:
        nxt = spec.a * terms[-1] + spec.b * terms[-2]
        if nxt < 0:
            raise NegativeTerm(len(terms), nxt)
        terms.append(nxt)
    return terms


def valid_specs(a_range=range(1, 6), b_range=range(-1, -4, -1), a1_range=range(0, 7),
                n_max: int = 20) -> Iterator[RecurrenceSpec]:
    """Every spec in the grid whose hypothesis holds and whose terms up to n_max are >= 0."""
    for a in a_range:
        for b in b_range:
            for A1 in a1_range:
                try:
                    spec = RecurrenceSpec(a, b, A1)
                    recurrence_terms(spec, n_max)
                except (HypothesisViolated, NegativeTerm):
                    continue
                yield spec


class Direction(enum.Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"


def ratio_monotone_check(terms: Sequence[int], direction: Direction | None = None) -> Direction:
    """Direction in which A(n+1)/A(n) is strictly monotone.

    Decided exactly by comparing A(n+1)*A(n-1) with A(n)**2 for every interior n.
    """
    if len(terms) < 3:
        raise ValueError("need at least three terms")
    if any(t <= 0 for t in terms):
        raise ValueError("terms must be positive")
    found = direction
    for n in range(1, len(terms) - 1):
        d = terms[n + 1] * terms[n - 1] - terms[n] * terms[n]
        if d == 0:
            raise NotMonotone(n, f"ratio ties at n={n}")
        here = Direction.INCREASING if d > 0 else Direction.DECREASING
        if found is None:
            found = here
        elif here is not found:
            raise NotMonotone(n, f"ratio direction flips at n={n}")
    return found


# -- uniqueness property ------------------------------------------------------

@dataclass
class UniquenessReport:
    source: str
    max_index: int
    max_tuple_len: int
    pairs_checked: int = 0
    violations: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "convention": FIB_CONVENTION if self.source.startswith("fib") else "A(0) = 1",
            "max_index": self.max_index,
            "max_tuple_len": self.max_tuple_len,
            "pairs_checked": self.pairs_checked,
            "violations": [{"n": list(n), "m": list(m)} for n, m in self.violations],
        }


TermSource = str | RecurrenceSpec


def term_function(source: TermSource, max_index: int) -> tuple[str, Callable[[int], int]]:
    """Resolve ``"fib-even"``, ``"fib-odd"`` or a RecurrenceSpec to (label, index -> term)."""
    if isinstance(source, RecurrenceSpec):
        terms = recurrence_terms(source, max_index)
        return source.label, terms.__getitem__
    if source == "fib-even":
        return source, fib_even
    if source == "fib-odd":
        return source, fib_odd
    raise ValueError(f"unknown term source {source!r}")


def index_tuples(max_index: int, max_tuple_len: int) -> list[tuple[int, ...]]:
    """Strictly decreasing tuples drawn from 1..max_index, shortest first."""
    out = []
    for length in range(1, max_tuple_len + 1):
        out.extend(combinations(range(max_index, 0, -1), length))
    return out


def uniqueness_check(source: TermSource, max_index: int, max_tuple_len: int) -> UniquenessReport:
    """Search for equal term products over index tuples n ≻ m with n != m."""
    if max_index < 1 or max_tuple_len < 1:
        raise ValueError("max_index and max_tuple_len must be >= 1")
    label, term = term_function(source, max_index)
    tuples = index_tuples(max_index, max_tuple_len)
    products = [prod(term(i) for i in t) for t in tuples]
    seqs = [CanonicalSeq(t) for t in tuples]
    report = UniquenessReport(label, max_index, max_tuple_len)
    for i, n in enumerate(seqs):
        for j, m in enumerate(seqs):
            if i == j or not majorizes(n, m):
                continue
            report.pairs_checked += 1
            if products[i] == products[j]:
                report.violations.append((tuples[i], tuples[j]))
    return report


def binet_enclosure_check(n_max: int, precision: int) -> bool:
    """Does the interval Binet formula contain fib(n) for every n <= n_max?"""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    sqrt5 = RealInterval.exact(5, precision).sqrt()
    alpha = (sqrt5 + 1) * Fraction(1, 2)
    beta = (1 - sqrt5) * Fraction(1, 2)
    denom = alpha - beta
    a_pow, b_pow = alpha, beta
    for n in range(n_max + 1):
        if not ((a_pow - b_pow) / denom).contains(fib(n)):
            return False
        a_pow = a_pow * alpha
        b_pow = b_pow * beta
    return True
