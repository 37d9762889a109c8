"""Closed real intervals with MPFR endpoints and directed rounding.

Lower endpoints are always computed with round-toward-minus-infinity and upper
endpoints with round-toward-plus-infinity, so every operation returns an
enclosure of the exact result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr, mpq, mpz

_LOG10_2 = math.log10(2)


@lru_cache(maxsize=None)
def _ctx(precision: int, rnd) -> gmpy2.context:
    return gmpy2.context(
        precision=precision,
        round=rnd,
        emax=gmpy2.get_emax_max(),
        emin=gmpy2.get_emin_min(),
        subnormalize=False,
        trap_underflow=False,
        trap_overflow=False,
        trap_inexact=False,
        trap_invalid=False,
        trap_divzero=False,
    )


def down(precision: int) -> gmpy2.context:
    return _ctx(precision, gmpy2.RoundDown)


def up(precision: int) -> gmpy2.context:
    return _ctx(precision, gmpy2.RoundUp)


def to_mpq(value) -> mpq:
    if isinstance(value, mpq):
        return value
    if isinstance(value, (int, mpz)):
        return mpq(value, 1)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, mpfr):
        n, d = value.as_integer_ratio()
        return mpq(n, d)
    if isinstance(value, str):
        return to_mpq(Fraction(value))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _round_rational(q: mpq, ctx) -> mpfr:
    return ctx.div(mpz(q.numerator), mpz(q.denominator))


@dataclass(frozen=True)
class RealInterval:
    lo: mpfr
    hi: mpfr
    precision: int

    def __post_init__(self):
        if gmpy2.is_nan(self.lo) or gmpy2.is_nan(self.hi):
            raise ValueError("interval endpoint is NaN")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, value, precision: int) -> "RealInterval":
        """Tightest enclosure of an exact rational at ``precision`` bits."""
        if isinstance(value, RealInterval):
            return value
        q = to_mpq(value)
        return cls(_round_rational(q, down(precision)), _round_rational(q, up(precision)), precision)

    @classmethod
    def hull(cls, a, b, precision: int) -> "RealInterval":
        qa, qb = to_mpq(a), to_mpq(b)
        if qa > qb:
            qa, qb = qb, qa
        return cls(_round_rational(qa, down(precision)), _round_rational(qb, up(precision)), precision)

    @classmethod
    def pi(cls, precision: int) -> "RealInterval":
        return cls(down(precision).const_pi(), up(precision).const_pi(), precision)

    @classmethod
    def e(cls, precision: int) -> "RealInterval":
        one = mpfr(1)
        return cls(down(precision).exp(one), up(precision).exp(one), precision)

    @classmethod
    def euler_gamma(cls, precision: int) -> "RealInterval":
        return cls(down(precision).const_euler(), up(precision).const_euler(), precision)

    # -- coercion ---------------------------------------------------------

    def _other(self, other) -> "RealInterval":
        if isinstance(other, RealInterval):
            return other
        return RealInterval.exact(other, self.precision)

    def _prec(self, other: "RealInterval") -> int:
        return max(self.precision, other.precision)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "RealInterval":
        return RealInterval(-self.hi, -self.lo, self.precision)

    def __add__(self, other) -> "RealInterval":
        o = self._other(other)
        p = self._prec(o)
        return RealInterval(down(p).add(self.lo, o.lo), up(p).add(self.hi, o.hi), p)

    __radd__ = __add__

    def __sub__(self, other) -> "RealInterval":
        o = self._other(other)
        p = self._prec(o)
        return RealInterval(down(p).sub(self.lo, o.hi), up(p).sub(self.hi, o.lo), p)

    def __rsub__(self, other) -> "RealInterval":
        return self._other(other) - self

    def __mul__(self, other) -> "RealInterval":
        o = self._other(other)
        p = self._prec(o)
        dn, un = down(p), up(p)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(dn.mul(x, y) for x, y in pairs)
        hi = max(un.mul(x, y) for x, y in pairs)
        return RealInterval(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RealInterval":
        o = self._other(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        p = self._prec(o)
        dn, un = down(p), up(p)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(dn.div(x, y) for x, y in pairs)
        hi = max(un.div(x, y) for x, y in pairs)
        return RealInterval(lo, hi, p)

    def __rtruediv__(self, other) -> "RealInterval":
        return self._other(other) / self

    def __pow__(self, n: int) -> "RealInterval":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        if n == 0:
            return RealInterval.exact(1, self.precision)
        p = self.precision
        dn, un = down(p), up(p)
        if self.lo >= 0:
            return RealInterval(dn.pow(self.lo, n), un.pow(self.hi, n), p)
        if self.hi <= 0:
            if n % 2:
                return RealInterval(dn.pow(self.lo, n), un.pow(self.hi, n), p)
            return RealInterval(dn.pow(self.hi, n), un.pow(self.lo, n), p)
        # straddles zero
        if n % 2:
            return RealInterval(dn.pow(self.lo, n), un.pow(self.hi, n), p)
        return RealInterval(mpfr(0), max(un.pow(self.lo, n), un.pow(self.hi, n)), p)

    def log(self) -> "RealInterval":
        if self.lo <= 0:
            raise ValueError("log of an interval that is not strictly positive")
        p = self.precision
        return RealInterval(down(p).log(self.lo), up(p).log(self.hi), p)

    def exp(self) -> "RealInterval":
        p = self.precision
        return RealInterval(down(p).exp(self.lo), up(p).exp(self.hi), p)

    def sqrt(self) -> "RealInterval":
        if self.lo < 0:
            raise ValueError("sqrt of an interval with negative part")
        p = self.precision
        return RealInterval(down(p).sqrt(self.lo), up(p).sqrt(self.hi), p)

    def root(self, n: int) -> "RealInterval":
        if self.lo < 0:
            raise ValueError("root of an interval with negative part")
        p = self.precision
        return RealInterval(down(p).rootn(self.lo, n), up(p).rootn(self.hi, n), p)

    def with_precision(self, precision: int) -> "RealInterval":
        """Round endpoints outward to ``precision`` bits (never tightens past the true value)."""
        return RealInterval(down(precision).plus(self.lo), up(precision).plus(self.hi), precision)

    # -- predicates -------------------------------------------------------

    def contains(self, value) -> bool:
        if isinstance(value, RealInterval):
            return self.lo <= value.lo and value.hi <= self.hi
        q = to_mpq(value)
        return self.lo <= q <= self.hi

    def strictly_less(self, other) -> bool:
        return self.hi < self._other(other).lo

    def strictly_greater(self, other) -> bool:
        return self.lo > self._other(other).hi

    def sign(self) -> int:
        """+1 or -1 when the sign is certain, 0 when the interval touches zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    @property
    def width(self) -> mpfr:
        return up(self.precision).sub(self.hi, self.lo)

    @property
    def relative_width(self) -> mpfr:
        mag = min(abs(self.lo), abs(self.hi))
        if mag == 0:
            return mpfr("inf")
        return up(self.precision).div(self.width, mag)

    @property
    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)

    def lo_fraction(self) -> Fraction:
        return Fraction(*self.lo.as_integer_ratio())

    def hi_fraction(self) -> Fraction:
        return Fraction(*self.hi.as_integer_ratio())

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        digits = int(math.ceil(self.precision * _LOG10_2)) + 2
        return {
            "lo": decimal_string(self.lo_fraction(), digits, upward=False),
            "hi": decimal_string(self.hi_fraction(), digits, upward=True),
            "precision": self.precision,
        }

    def __str__(self) -> str:
        digits = 20
        lo = decimal_string(self.lo_fraction(), digits, upward=False)
        hi = decimal_string(self.hi_fraction(), digits, upward=True)
        return f"[{lo}, {hi}]"


def decimal_string(value: Fraction, digits: int, *, upward: bool) -> str:
    """Decimal scientific string of about ``digits`` significant digits.

    Rounded toward +inf when ``upward`` else toward -inf, so the printed
    number still bounds ``value`` on the requested side.
    """
    if value == 0:
        return "0"
    num, den = value.numerator, value.denominator
    e10 = int(math.floor((abs(num).bit_length() - den.bit_length()) * _LOG10_2))
    k = digits - 1 - e10
    if k >= 0:
        scaled_num, scaled_den = num * 10 ** k, den
    else:
        scaled_num, scaled_den = num, den * 10 ** (-k)
    m = -((-scaled_num) // scaled_den) if upward else scaled_num // scaled_den
    if m == 0:
        return "0"
    sign = "-" if m < 0 else ""
    s = str(abs(m))
    exponent = len(s) - 1 - k
    s = s.rstrip("0") or "0"
    mantissa = s[0] + ("." + s[1:] if len(s) > 1 else "")
    return f"{sign}{mantissa}e{exponent}"
