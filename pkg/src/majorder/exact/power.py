"""Formal products of natural-number bases raised to rational exponents.

A :class:`PowerProduct` represents the positive real ``prod(base**exp)``
exactly. Two of them are compared by exponent clearing: move every negative
exponent across the inequality, raise both sides to the lcm ``L`` of all
exponent denominators, and compare the two resulting integers. When the
integers would be too large the comparison escalates through interval
enclosures of the log-sum instead and only ever answers when the enclosure
excludes zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import gmpy2
from gmpy2 import mpz

from ..config import DEFAULTS, schedule
from ..errors import Unresolved
from .integers import factor_small, factorial_factorization
from .interval import RealInterval


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, sign: int) -> "Ordering":
        return cls((sign > 0) - (sign < 0))

    def flipped(self) -> "Ordering":
        return Ordering(-int(self))


def _frac(e) -> Fraction:
    return e if isinstance(e, Fraction) else Fraction(e)


@dataclass(frozen=True)
class PowerProduct:
    """Normalized ``((base, exponent), ...)`` with strictly increasing bases >= 2."""

    factors: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        prev = 1
        for base, exp in self.factors:
            if not isinstance(base, int) or base <= prev:
                raise ValueError(f"factors not normalized: {self.factors}")
            if not isinstance(exp, Fraction) or exp == 0:
                raise ValueError(f"factors not normalized: {self.factors}")
            prev = base

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, pairs: Iterable[tuple[int, Fraction | int]]) -> "PowerProduct":
        # bases are split by trial division, so 4^(1/2) and 2 normalize alike;
        # cofactors with no prime below the trial limit stay whole
        acc: dict[int, Fraction] = {}
        for base, exp in pairs:
            base = int(base)
            if base < 1:
                raise ValueError(f"base must be >= 1, got {base}")
            if base == 1:
                continue
            exp = _frac(exp)
            for p, k in factor_small(base):
                acc[p] = acc.get(p, Fraction(0)) + exp * k
        return cls(tuple((b, e) for b, e in sorted(acc.items()) if e != 0))

    @classmethod
    def integer(cls, n: int) -> "PowerProduct":
        if n < 1:
            raise ValueError(f"power products represent positive values, got {n}")
        return cls.build([(n, 1)])

    @classmethod
    def rational(cls, q: Fraction | int) -> "PowerProduct":
        q = Fraction(q)
        if q <= 0:
            raise ValueError("power products represent positive values")
        return cls.integer(q.numerator) / cls.integer(q.denominator)

    @classmethod
    def factorial(cls, n: int) -> "PowerProduct":
        return cls.build(factorial_factorization(n))

    # -- algebra ----------------------------------------------------------

    def __mul__(self, other: "PowerProduct") -> "PowerProduct":
        if not isinstance(other, PowerProduct):
            return NotImplemented
        return PowerProduct.build(self.factors + other.factors)

    def __truediv__(self, other: "PowerProduct") -> "PowerProduct":
        if not isinstance(other, PowerProduct):
            return NotImplemented
        return PowerProduct.build(self.factors + tuple((b, -e) for b, e in other.factors))

    def __pow__(self, exponent) -> "PowerProduct":
        e = _frac(exponent)
        return PowerProduct.build((b, x * e) for b, x in self.factors)

    def inverse(self) -> "PowerProduct":
        return self ** -1

    @property
    def is_one(self) -> bool:
        return not self.factors

    def as_fraction(self) -> Fraction | None:
        """Exact value when every exponent is an integer, else ``None``."""
        if any(e.denominator != 1 for _, e in self.factors):
            return None
        num = den = 1
        for b, e in self.factors:
            if e > 0:
                num *= b ** int(e)
            else:
                den *= b ** int(-e)
        return Fraction(num, den)

    def log2_magnitude(self) -> float:
        """Rough ``sum |e| * log2(b)``; only used for cost estimates."""
        return sum(abs(float(e)) * math.log2(b) for b, e in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for b, e in self.factors:
            if e == 1:
                parts.append(str(b))
            elif e.denominator == 1:
                parts.append(f"{b}^{e.numerator}")
            else:
                parts.append(f"{b}^({e})")
        return "*".join(parts)

    def to_dict(self) -> dict:
        return {"factors": [[str(b), str(e)] for b, e in self.factors]}


ONE = PowerProduct()


def pp_mul(x: PowerProduct, y: PowerProduct) -> PowerProduct:
    return x * y


def pp_product(items: Iterable[PowerProduct]) -> PowerProduct:
    pairs: list = []
    for it in items:
        pairs.extend(it.factors)
    return PowerProduct.build(pairs)


def clearing_cost(x: PowerProduct) -> tuple[int, float]:
    """(L, estimated bits of the largest integer built when clearing exponents of x)."""
    L = 1
    for _, e in x.factors:
        L = L * e.denominator // math.gcd(L, e.denominator)
    num_bits = sum(float(e) * math.log2(b) for b, e in x.factors if e > 0)
    den_bits = sum(float(-e) * math.log2(b) for b, e in x.factors if e < 0)
    return L, L * max(num_bits, den_bits)


def _log_sum(x: PowerProduct, precision: int) -> RealInterval:
    total = RealInterval.exact(0, precision)
    for b, e in x.factors:
        total = total + RealInterval.exact(b, precision).log() * RealInterval.exact(e, precision)
    return total


def compare_detailed(
    x: PowerProduct,
    y: PowerProduct,
    *,
    blowup_bits: int | None = None,
    max_precision: int | None = None,
) -> tuple[Ordering, str]:
    """Exact ordering of two power products plus the method that decided it.

    The method is ``"structural"`` (identical normal forms), ``"exact"``
    (exponent clearing) or ``"interval"`` (blow-up guard tripped, decided by a
    rigorous log-sum enclosure).
    """
    ratio = x / y
    if ratio.is_one:
        return Ordering.EQUAL, "structural"
    cap = DEFAULTS.blowup_bits if blowup_bits is None else blowup_bits
    L, cost = clearing_cost(ratio)
    if cost <= cap:
        num = mpz(1)
        den = mpz(1)
        for b, e in ratio.factors:
            k = e * L
            if k > 0:
                num *= mpz(b) ** int(k)
            else:
                den *= mpz(b) ** int(-k)
        return Ordering.of(gmpy2.cmp(num, den)), "exact"
    for prec in schedule(max_precision):
        work = prec + DEFAULTS.guard_bits + int(ratio.log2_magnitude()).bit_length()
        s = _log_sum(ratio, work).sign()
        if s:
            return Ordering.of(s), "interval"
    raise Unresolved(f"cannot order {x} and {y}", context=(x, y), precision=max_precision)


def pp_compare(x: PowerProduct, y: PowerProduct, **kwargs) -> Ordering:
    return compare_detailed(x, y, **kwargs)[0]


def pp_interval_eval(x: PowerProduct, precision: int) -> RealInterval:
    """Enclosure of the value of ``x``, relative width well below 2**(1 - precision/2)."""
    if precision < 32:
        raise ValueError("precision must be at least 32 bits")
    if x.is_one:
        return RealInterval.exact(1, precision)
    frac = x.as_fraction()
    if frac is not None:
        return RealInterval.exact(frac, precision)
    work = precision + DEFAULTS.guard_bits + int(x.log2_magnitude()).bit_length() + len(x.factors).bit_length()
    return _log_sum(x, work).exp().with_precision(precision)
