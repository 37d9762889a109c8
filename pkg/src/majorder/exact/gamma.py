"""Rigorous enclosures of ln Gamma and digamma on the positive reals.

Both functions use the same scheme: shift the argument upward with the
functional equation until it is large, sum the Stirling asymptotic series
there, and add the first omitted term as a symmetric error bound. For real
arguments the series remainder never exceeds the first omitted term in
absolute value, so the enclosure is rigorous for any number of terms.

Arguments may be exact rationals, fixed :class:`RealInterval` values, or
callables ``precision -> RealInterval`` (for irrational points such as e that
must be recomputed when precision escalates).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, NamedTuple, Union

from ..config import DEFAULTS, schedule
from ..errors import Unresolved
from .interval import RealInterval, to_mpq

Point = Union[int, Fraction, str, RealInterval, Callable[[int], RealInterval]]

_TANGENT: list[int] = [0, 1]
_BERNOULLI: dict[int, Fraction] = {}


def _extend_tangent(n: int) -> None:
    # integer-only tangent-number recurrence; recomputed from scratch on growth
    if len(_TANGENT) > n:
        return
    size = max(n, 2 * (len(_TANGENT) - 1))
    T = [0] * (size + 1)
    T[1] = 1
    for k in range(2, size + 1):
        T[k] = (k - 1) * T[k - 1]
    for k in range(2, size + 1):
        for j in range(k, size + 1):
            T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j]
    _TANGENT[:] = T


def bernoulli_even(k: int) -> Fraction:
    """B_{2k} for k >= 1, exact."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k not in _BERNOULLI:
        _extend_tangent(k)
        sign = 1 if k % 2 else -1
        four = 1 << (2 * k)
        _BERNOULLI[k] = Fraction(sign * 2 * k * _TANGENT[k], four * (four - 1))
    return _BERNOULLI[k]


def _as_interval(x: Point, precision: int) -> RealInterval:
    if isinstance(x, RealInterval):
        return x
    if callable(x):
        return x(precision)
    return RealInterval.exact(x, precision)


def _exact(x: Point) -> Fraction | None:
    if isinstance(x, RealInterval) or callable(x):
        return None
    q = to_mpq(x)
    return Fraction(int(q.numerator), int(q.denominator))


def _target(precision: int) -> int:
    return max(DEFAULTS.stirling_min_argument, math.ceil(DEFAULTS.stirling_argument_per_bit * precision))


def _shift_count(x: Point, work: int, precision: int) -> int:
    q = _exact(x)
    lo = Fraction(*_as_interval(x, work).lo.as_integer_ratio()) if q is None else q
    return max(0, math.ceil(_target(precision) - lo))


def _check_positive(x: Point, work: int) -> None:
    if _as_interval(x, work).lo <= 0:
        raise ValueError("argument must be > 0")


def _series_terms(z: RealInterval, work: int, power_offset: int, coeff: Callable[[int], Fraction]):
    """Sum coeff(k) * z**-(2k - 1 + power_offset) until the next term is negligible.

    Returns (sum, bound on the first omitted term).
    """
    inv = 1 / z
    inv2 = inv * inv
    zpow = inv ** (1 + power_offset)
    total = RealInterval.exact(0, work)
    tiny = Fraction(1, 1 << (work + 4))
    prev = None
    k = 1
    while True:
        total = total + zpow * RealInterval.exact(coeff(k), work)
        zpow = zpow * inv2
        # zpow now bounds z**-(2k + 1 + offset), the power in term k + 1
        nxt = (RealInterval.exact(abs(coeff(k + 1)), work) * zpow).hi_fraction()
        if nxt < tiny or k >= DEFAULTS.stirling_max_terms or (prev is not None and nxt > prev):
            return total, nxt
        prev = nxt
        k += 1


def ln_gamma_interval(x: Point, precision: int) -> RealInterval:
    """Enclosure of ln Gamma(x) for x > 0."""
    work = precision + DEFAULTS.guard_bits
    _check_positive(x, work)
    n = _shift_count(x, work, precision)
    q = _exact(x)
    if q is not None:
        prod = Fraction(1)
        for i in range(n):
            prod *= q + i
        shift = RealInterval.exact(prod, work).log()
        z = RealInterval.exact(q + n, work)
    else:
        xi = _as_interval(x, work)
        prod = RealInterval.exact(1, work)
        for i in range(n):
            prod = prod * (xi + i)
        shift = prod.log()
        z = xi + n

    half_log_2pi = (RealInterval.pi(work) * 2).log() * Fraction(1, 2)
    main = (z - Fraction(1, 2)) * z.log() - z + half_log_2pi
    series, omitted = _series_terms(
        z, work, 0, lambda k: bernoulli_even(k) / ((2 * k) * (2 * k - 1))
    )
    err = RealInterval.hull(-omitted, omitted, work)
    return (main + series + err - shift).with_precision(precision)


def digamma_interval(x: Point, precision: int) -> RealInterval:
    """Enclosure of psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    work = precision + DEFAULTS.guard_bits
    _check_positive(x, work)
    n = _shift_count(x, work, precision)
    q = _exact(x)
    if q is not None:
        harmonic = sum((Fraction(1) / (q + i) for i in range(n)), Fraction(0))
        shift = RealInterval.exact(harmonic, work)
        z = RealInterval.exact(q + n, work)
    else:
        xi = _as_interval(x, work)
        shift = RealInterval.exact(0, work)
        for i in range(n):
            shift = shift + 1 / (xi + i)
        z = xi + n

    main = z.log() - 1 / (z * 2)
    series, omitted = _series_terms(z, work, 1, lambda k: bernoulli_even(k) / (2 * k))
    err = RealInterval.hull(-omitted, omitted, work)
    return (main - series + err - shift).with_precision(precision)


class TheoremCResult(NamedTuple):
    bound1: bool
    bound2: bool
    precision: int


def _decide(lhs: RealInterval, rhs: RealInterval) -> bool | None:
    # True: lhs < rhs certainly; False: lhs > rhs certainly; None: overlap
    if lhs.strictly_less(rhs):
        return True
    if lhs.strictly_greater(rhs):
        return False
    return None


def theorem_c_check(x: Point, precision: int | None = None, max_precision: int | None = None) -> TheoremCResult:
    """Check ln Gamma(x) > (x - 1/2) ln x - x and psi(x) < ln x at one point x > 1.

    Escalates precision until both comparisons separate; raises
    :class:`Unresolved` if they still overlap at the cap. A bound that is
    decided false is reported as ``False`` (it would be a counterexample).
    """
    start = precision or DEFAULTS.start_precision
    if _as_interval(x, start).lo <= 1:
        raise ValueError("Theorem C is stated for x > 1")
    b1 = b2 = None
    used = start
    for prec in schedule(max_precision, start):
        used = prec
        xi = _as_interval(x, prec + DEFAULTS.guard_bits)
        log_x = xi.log()
        if b1 is None:
            rhs = (xi - Fraction(1, 2)) * log_x - xi
            r = _decide(rhs, ln_gamma_interval(x, prec))
            b1 = r
        if b2 is None:
            b2 = _decide(digamma_interval(x, prec), log_x)
        if b1 is not None and b2 is not None:
            return TheoremCResult(b1, b2, used)
    raise Unresolved(f"Theorem C comparison at x={x} still overlaps", context=x, precision=used)


def sandwich_check(x: Point, precision: int = 128) -> dict[str, bool | None]:
    """The four one-sided bounds ln(x-1) < psi(x) < ln x and
    x ln x - x + 1 < ln Gamma(x+1) < (x+1) ln(x+1) - x at one point x > 1.

    Each entry is True/False when decided at ``precision``, None if the
    enclosures overlap.
    """
    work = precision + DEFAULTS.guard_bits
    xi = _as_interval(x, work)
    psi = digamma_interval(x, precision)
    q = _exact(x)
    x1: Point = (q + 1) if q is not None else (xi + 1)
    lg1 = ln_gamma_interval(x1, precision)
    log_x = xi.log()
    return {
        "digamma_lower": _decide((xi - 1).log(), psi),
        "digamma_upper": _decide(psi, log_x),
        "lngamma_lower": _decide(xi * log_x - xi + 1, lg1),
        "lngamma_upper": _decide(lg1, (xi + 1) * (xi + 1).log() - xi),
    }
