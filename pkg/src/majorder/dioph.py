"""Catalog of factorial Diophantine equations and bounded exhaustive solvers.

Sequence-shaped equations compare a value built from a ≻ b over every
comparable pair up to a weight bound. Rectangular equations substitute
a = (k repeated n times), b = (n repeated k times) and scan a (k, n) grid.
Every solution found is classified as trivial (a = b), known-exceptional
(the documented {1, 2} families), or unexpected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from math import gcd, prod

from .errors import PreconditionUnmet, Unresolved
from .exact.integers import factorial
from .exact.interval import RealInterval
from .exact.power import Ordering, PowerProduct, compare_detailed
from .monotone import (
    F1,
    F2,
    FACT_OVER_SELF_POWER,
    RATIO_ROOT,
    RATIO_ROOT_POWER,
    _as_interval,
    product_value,
    sum_compare,
)
from .parallel import chunked_map
from .poset import CanonicalSeq, comparable_pairs, majorizes, rectangle


class EquationId(enum.Enum):
    PROD_PLUS = "prod-plus"
    PROD_MINUS = "prod-minus"
    POW_PLUS = "pow-plus"
    POW_MINUS = "pow-minus"
    FACT_OVER_POWER = "fact-over-power"
    RATIO_ROOT = "ratio-root"
    RATIO_ROOT_POWER = "ratio-root-power"
    SUM_F1 = "sum-f1"
    SUM_F2 = "sum-f2"
    RECT_FACT_OVER_POWER = "rect-fact-over-power"
    RECT_RATIO_ROOT = "rect-ratio-root"
    RECT_RATIO_ROOT_POWER = "rect-ratio-root-power"

    @property
    def rectangular(self) -> bool:
        return self in _RECTANGULAR

    @property
    def formula(self) -> str:
        return _FORMULAS[self]


_RECTANGULAR = {
    EquationId.POW_PLUS, EquationId.POW_MINUS, EquationId.RECT_FACT_OVER_POWER,
    EquationId.RECT_RATIO_ROOT, EquationId.RECT_RATIO_ROOT_POWER,
}

_FORMULAS = {
    EquationId.PROD_PLUS: "a1!...an! + a1...an = b1!...bk! + b1...bk",
    EquationId.PROD_MINUS: "a1!...an! - a1...an = b1!...bk! - b1...bk",
    EquationId.POW_PLUS: "(k!)^n + k^n = (n!)^k + n^k",
    EquationId.POW_MINUS: "(k!)^n - k^n = (n!)^k - n^k",
    EquationId.FACT_OVER_POWER: "prod a_i!/a_i^a_i = prod b_j!/b_j^b_j",
    EquationId.RATIO_ROOT: "prod a_i/((a_i-1)!)^(1/(a_i-1)) = same over b",
    EquationId.RATIO_ROOT_POWER: "prod a_i^(a_i+1)/((a_i-1)!)^(1/(a_i-1)) = same over b",
    EquationId.SUM_F1: "sum ((a_i+1)!)^(1/(a_i+2)) = sum ((b_j+1)!)^(1/(b_j+2))",
    EquationId.SUM_F2: "sum ((a_i+2)!)^(1/(a_i+2)) = sum ((b_j+2)!)^(1/(b_j+2))",
    EquationId.RECT_FACT_OVER_POWER: "(k!)^n n^(nk) = (n!)^k k^(nk)",
    EquationId.RECT_RATIO_ROOT: "(k^(k-1)/(k-1)!)^(n(n-1)) = (n^(n-1)/(n-1)!)^(k(k-1))",
    EquationId.RECT_RATIO_ROOT_POWER: "(k^(k^2-1)/(k-1)!)^(n(n-1)) = (n^(n^2-1)/(n-1)!)^(k(k-1))",
}


def equation(name: str | EquationId) -> EquationId:
    if isinstance(name, EquationId):
        return name
    try:
        return EquationId(name)
    except ValueError:
        raise ValueError(f"unknown equation {name!r}; choose from {[e.value for e in EquationId]}") from None


class Classification(enum.Enum):
    TRIVIAL = "Trivial"
    KNOWN_EXCEPTIONAL = "KnownExceptional"
    UNEXPECTED = "Unexpected"


@dataclass
class SolutionRecord:
    equation: EquationId
    a: CanonicalSeq
    b: CanonicalSeq
    classification: Classification
    left: object = None
    right: object = None
    kn: tuple[int, int] | None = None

    def to_dict(self) -> dict:
        d = {
            "equation": self.equation.value,
            "a": str(self.a),
            "b": str(self.b),
            "classification": self.classification.value,
            "left": serialize_value(self.left),
            "right": serialize_value(self.right),
        }
        if self.kn is not None:
            d["k"], d["n"] = self.kn
        return d


def serialize_value(v):
    if v is None:
        return None
    if isinstance(v, (PowerProduct, RealInterval)):
        return v.to_dict()
    return str(v)


# -- evaluators ---------------------------------------------------------------

def _fact_prod(s) -> int:
    return prod(factorial(p) for p in s)


_SEQUENCE_F = {
    EquationId.FACT_OVER_POWER: FACT_OVER_SELF_POWER,
    EquationId.RATIO_ROOT: RATIO_ROOT,
    EquationId.RATIO_ROOT_POWER: RATIO_ROOT_POWER,
}

_SUM_F = {EquationId.SUM_F1: F1, EquationId.SUM_F2: F2}


def eval_side(eq: EquationId | str, s, precision: int = 128):
    """One side of the equation.

    Sequence equations take a CanonicalSeq; rectangular ones take (k, n) and
    return the left side, so the right side is ``eval_side(eq, (n, k))``.
    Values are ``int``/``Fraction`` when rational, PowerProduct for radicals,
    and RealInterval enclosures for the sum equations.
    """
    eq = equation(eq)
    if eq.rectangular:
        k, n = s
        if k < 1 or n < 1:
            raise ValueError("k and n must be positive")
        if eq is EquationId.POW_PLUS:
            return factorial(k) ** n + k ** n
        if eq is EquationId.POW_MINUS:
            return factorial(k) ** n - k ** n
        if eq is EquationId.RECT_FACT_OVER_POWER:
            return factorial(k) ** n * n ** (n * k)
        if eq is EquationId.RECT_RATIO_ROOT:
            return Fraction(k ** (k - 1), factorial(k - 1)) ** (n * (n - 1))
        return Fraction(k ** (k * k - 1), factorial(k - 1)) ** (n * (n - 1))
    if not isinstance(s, CanonicalSeq):
        raise TypeError(f"{eq.value} takes a CanonicalSeq")
    if eq is EquationId.PROD_PLUS:
        return _fact_prod(s) + prod(s)
    if eq is EquationId.PROD_MINUS:
        return _fact_prod(s) - prod(s)
    if eq is EquationId.FACT_OVER_POWER:
        return product_value(FACT_OVER_SELF_POWER, s).as_fraction()
    if eq in _SEQUENCE_F:
        return product_value(_SEQUENCE_F[eq], s)
    f = _SUM_F[eq]
    total = RealInterval.exact(0, precision)
    for p in s:
        total = total + _as_interval(f(p), precision)
    return total


def classify(eq: EquationId, a: CanonicalSeq, b: CanonicalSeq) -> Classification:
    if a.parts == b.parts:
        return Classification.TRIVIAL
    if eq is EquationId.PROD_MINUS and set(a) | set(b) <= {1, 2}:
        return Classification.KNOWN_EXCEPTIONAL
    if eq is EquationId.POW_MINUS and {a.parts, b.parts} == {(1, 1), (2,)}:
        return Classification.KNOWN_EXCEPTIONAL
    return Classification.UNEXPECTED


# -- solvers ------------------------------------------------------------------

def _solve_chunk(eq: EquationId, precision: int, max_precision: int | None, pairs):
    out = []
    for a, b in pairs:
        method = "exact"
        if eq in _SUM_F:
            if a.parts == b.parts:
                hit = True
            else:
                try:
                    order, _ = sum_compare(_SUM_F[eq], a, b, precision, max_precision, shifted=False)
                except Unresolved:
                    out.append((a, b, None, "unresolved"))
                    continue
                hit = order is Ordering.EQUAL
            method = "interval"
        elif eq in (EquationId.RATIO_ROOT, EquationId.RATIO_ROOT_POWER):
            f = _SEQUENCE_F[eq]
            order, method = compare_detailed(product_value(f, a), product_value(f, b))
            hit = order is Ordering.EQUAL
        else:
            hit = eval_side(eq, a) == eval_side(eq, b)
        out.append((a, b, hit, method))
    return out


def solve_sequence_equation(eq: EquationId | str, max_sum: int, *, precision: int = 128,
                            max_precision: int | None = None, workers: int = 1,
                            stats: dict | None = None) -> list[SolutionRecord]:
    """Every solution with a ≻ b and both weights <= max_sum, in enumeration order.

    ``stats`` (if given) receives pair counts and how each pair was decided.
    Raises :class:`Unresolved` if a sum equation cannot be separated.
    """
    eq = equation(eq)
    if eq.rectangular:
        raise ValueError(f"{eq.value} is rectangular; use solve_rectangular")
    if max_sum < 1:
        raise ValueError("max_sum must be >= 1")
    pairs = list(comparable_pairs(max_sum))
    rows = chunked_map(partial(_solve_chunk, eq, precision, max_precision), pairs, workers)
    records = []
    methods: dict[str, int] = {}
    unresolved = []
    for a, b, hit, method in rows:
        methods[method] = methods.get(method, 0) + 1
        if hit is None:
            unresolved.append((a, b))
        elif hit:
            left = eval_side(eq, a, precision)
            right = eval_side(eq, b, precision)
            records.append(SolutionRecord(eq, a, b, classify(eq, a, b), left, right))
    if stats is not None:
        stats.update(pairs=len(pairs), methods=methods,
                     unresolved=[(str(a), str(b)) for a, b in unresolved])
    if unresolved:
        a, b = unresolved[0]
        raise Unresolved(f"{eq.value}: could not separate {a} and {b}", context=unresolved)
    return records


def solve_rectangular(eq: EquationId | str, n_max: int) -> list[SolutionRecord]:
    """Every (k, n) with 1 <= k, n <= n_max where both sides agree exactly."""
    eq = equation(eq)
    if not eq.rectangular:
        raise ValueError(f"{eq.value} is sequence-shaped; use solve_sequence_equation")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    records = []
    for k in range(1, n_max + 1):
        for n in range(1, n_max + 1):
            left = eval_side(eq, (k, n))
            right = eval_side(eq, (n, k))
            if left == right:
                a, b = rectangle(k, n), rectangle(n, k)
                records.append(SolutionRecord(eq, a, b, classify(eq, a, b), left, right, (k, n)))
    return records


def solve(eq: EquationId | str, bound: int, **kwargs) -> list[SolutionRecord]:
    eq = equation(eq)
    if eq.rectangular:
        return solve_rectangular(eq, bound)
    return solve_sequence_equation(eq, bound, **kwargs)


def factorize_check_prodplus(a: CanonicalSeq, b: CanonicalSeq) -> bool:
    """Coprimality step behind the plus-form product equation.

    With m the first index where a and b differ, checks
    gcd(b_m * ... * b_k, (a_1 - 1)! ... (a_n - 1)! + 1) == 1.
    """
    if not majorizes(a, b):
        raise PreconditionUnmet(f"{a} does not majorize {b}")
    if a.parts == b.parts:
        raise PreconditionUnmet("sequences are identical")
    m = next((i for i, (x, y) in enumerate(zip(a, b)) if x != y), None)
    if m is None or a[m] <= b[m]:
        raise PreconditionUnmet(f"{a}, {b} do not have a first index with a_m > b_m")
    tail = prod(b.parts[m:])
    shifted = prod(factorial(x - 1) for x in a) + 1
    return gcd(tail, shifted) == 1
