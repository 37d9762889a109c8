"""Executable monotone-map theorems for products and sums over the majorization order.

Product form: if f(0) = 1 and f(x)/f(x-1) is strictly increasing (decreasing),
then a ≻ b implies prod f(a_i) >= prod f(b_j) (<=), with equality only when
a = b. Sum form: same with f(0) = 0, differences f(x) - f(x-1), and sums.

Hypotheses are certified over a finite range (:func:`ratio_profile`,
:func:`diff_profile`); conclusions are then checked pair by pair.

Sum-form functions whose value at 0 is not 0 (f1, f2) are handled by shifting:
the checked quantity is ``sum(f(a_i) - f(0)) - sum(f(b_j) - f(0))``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable

from .config import DEFAULTS, schedule
from .errors import F0NotOne, NotMonotone, PreconditionUnmet, TheoremViolation, Unresolved
from .exact.integers import factorial
from .exact.interval import RealInterval
from .exact.power import ONE, Ordering, PowerProduct, compare_detailed, pp_interval_eval, pp_product
from .parallel import chunked_map
from .poset import CanonicalSeq, comparable_pairs, majorizes
from .recur import RecurrenceSpec, fib, recurrence_terms

Value = PowerProduct | Fraction


# -- function catalog ---------------------------------------------------------

def _factorial(x: int) -> PowerProduct:
    return PowerProduct.factorial(x)


def _fact_over_self_power(x: int) -> PowerProduct:
    if x == 0:
        return ONE
    return PowerProduct.factorial(x) / PowerProduct.integer(x) ** x


def _ratio_root(x: int) -> PowerProduct:
    if x == 0:
        return ONE
    if x == 1:
        return PowerProduct.rational(Fraction(3, 2))
    return PowerProduct.integer(x) / PowerProduct.factorial(x - 1) ** Fraction(1, x - 1)


def _ratio_root_power(x: int) -> PowerProduct:
    if x == 0:
        return ONE
    if x == 1:
        return PowerProduct.integer(2)
    return PowerProduct.integer(x) ** (x + 1) / PowerProduct.factorial(x - 1) ** Fraction(1, x - 1)


def _f1(x: int) -> PowerProduct:
    return PowerProduct.factorial(x + 1) ** Fraction(1, x + 2)


def _f2(x: int) -> PowerProduct:
    return PowerProduct.factorial(x + 2) ** Fraction(1, x + 2)


def _fib_even(x: int) -> PowerProduct:
    return PowerProduct.integer(fib(2 * x))


def _fib_odd(x: int) -> PowerProduct:
    return PowerProduct.integer(fib(2 * x + 1))


_CATALOG: dict[str, Callable[[int], PowerProduct]] = {
    "factorial": _factorial,
    "fact-over-self-power": _fact_over_self_power,
    "ratio-root": _ratio_root,
    "ratio-root-power": _ratio_root_power,
    "f1": _f1,
    "f2": _f2,
    "fib-even": _fib_even,
    "fib-odd": _fib_odd,
}

_VALUE_CACHE: dict[tuple, Value] = {}


@dataclass(frozen=True)
class BuiltinF:
    """A function from non-negative integers to exact positive values.

    ``tag`` names a catalog entry, ``"recurrence"`` (with ``spec``) or
    ``"custom"`` (with ``fn`` returning a PowerProduct or an exact rational).
    """

    tag: str
    spec: RecurrenceSpec | None = None
    fn: Callable[[int], Value] | None = field(default=None, compare=False)
    label: str | None = None

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.tag == "recurrence":
            return self.spec.label
        return self.tag

    def __call__(self, x: int) -> Value:
        if x < 0:
            raise ValueError("functions are defined on non-negative integers")
        key = (self.name, self.spec, x)
        if self.tag == "custom":
            return self.fn(x)
        try:
            return _VALUE_CACHE[key]
        except KeyError:
            pass
        if self.tag == "recurrence":
            term = recurrence_terms(self.spec, x)[x]
            if term <= 0:
                raise ValueError(f"{self.name} has non-positive term A_{x} = {term}")
            value = PowerProduct.integer(term)
        else:
            value = _CATALOG[self.tag](x)
        _VALUE_CACHE[key] = value
        return value


FACTORIAL = BuiltinF("factorial")
FACT_OVER_SELF_POWER = BuiltinF("fact-over-self-power")
RATIO_ROOT = BuiltinF("ratio-root")
RATIO_ROOT_POWER = BuiltinF("ratio-root-power")
F1 = BuiltinF("f1")
F2 = BuiltinF("f2")
FIB_EVEN = BuiltinF("fib-even")
FIB_ODD = BuiltinF("fib-odd")

BUILTINS: dict[str, BuiltinF] = {f.tag: f for f in (
    FACTORIAL, FACT_OVER_SELF_POWER, RATIO_ROOT, RATIO_ROOT_POWER, F1, F2, FIB_EVEN, FIB_ODD,
)}


def recurrence(spec: RecurrenceSpec) -> BuiltinF:
    return BuiltinF("recurrence", spec=spec)


def custom(name: str, fn: Callable[[int], Value]) -> BuiltinF:
    return BuiltinF("custom", fn=fn, label=name)


def builtin(name: str) -> BuiltinF:
    try:
        return BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown function {name!r}; choose from {sorted(BUILTINS)}") from None


# -- value helpers ------------------------------------------------------------

def _as_pp(v: Value) -> PowerProduct:
    if isinstance(v, PowerProduct):
        return v
    return PowerProduct.rational(v)


def _as_fraction(v: Value) -> Fraction | None:
    if isinstance(v, PowerProduct):
        return v.as_fraction()
    return Fraction(v)


def _as_interval(v: Value, precision: int) -> RealInterval:
    if isinstance(v, PowerProduct):
        return pp_interval_eval(v, precision)
    return RealInterval.exact(v, precision)


# -- certificates -------------------------------------------------------------

class CertKind(enum.Enum):
    RATIO_INCREASING = "RatioIncreasing"
    RATIO_DECREASING = "RatioDecreasing"
    DIFF_INCREASING = "DiffIncreasing"
    DIFF_DECREASING = "DiffDecreasing"

    @property
    def is_ratio(self) -> bool:
        return self in (CertKind.RATIO_INCREASING, CertKind.RATIO_DECREASING)

    @property
    def increasing(self) -> bool:
        return self in (CertKind.RATIO_INCREASING, CertKind.DIFF_INCREASING)


@dataclass(frozen=True)
class MonotoneCertificate:
    """Evidence that the ratio or difference profile of ``function`` is strictly monotone.

    ``witness_checked`` consecutive comparisons were made, one per x in
    1..x_max, each strict and in the same direction.
    """

    function: str
    kind: CertKind
    x_max: int
    witness_checked: int
    exact_steps: int = 0
    interval_steps: int = 0
    max_precision_used: int = 0
    shift: str | None = None

    @property
    def range(self) -> tuple[int, int]:
        return (1, self.x_max)

    def covers(self, part: int) -> bool:
        return 1 <= part <= self.x_max

    def to_dict(self) -> dict:
        d = {
            "function": self.function,
            "kind": self.kind.value,
            "range": list(self.range),
            "witness_checked": self.witness_checked,
            "exact_steps": self.exact_steps,
            "interval_steps": self.interval_steps,
            "max_precision_used": self.max_precision_used,
        }
        if self.shift is not None:
            d["shift"] = self.shift
        return d


def ratio_profile(f: BuiltinF, x_max: int) -> MonotoneCertificate:
    """Certify that f(x)/f(x-1) is strictly monotone, comparing it with f(x+1)/f(x) for x = 1..x_max.

    Each comparison is f(x)**2 against f(x-1)*f(x+1), decided exactly.
    """
    if x_max < 2:
        raise ValueError("x_max must be >= 2")
    if compare_detailed(_as_pp(f(0)), ONE)[0] is not Ordering.EQUAL:
        raise F0NotOne(f"{f.name}: f(0) = {f(0)} != 1")
    direction = None
    exact = interval = 0
    prev, cur = _as_pp(f(0)), _as_pp(f(1))
    for x in range(1, x_max + 1):
        nxt = _as_pp(f(x + 1))
        order, method = compare_detailed(cur * cur, prev * nxt)
        if method == "interval":
            interval += 1
        else:
            exact += 1
        if order is Ordering.EQUAL:
            raise NotMonotone(x, f"{f.name}: f({x})/f({x - 1}) ties with f({x + 1})/f({x})")
        # f(x)^2 > f(x-1) f(x+1)  <=>  ratio drops from x to x+1
        here = CertKind.RATIO_DECREASING if order is Ordering.GREATER else CertKind.RATIO_INCREASING
        if direction is None:
            direction = here
        elif here is not direction:
            raise NotMonotone(x, f"{f.name}: ratio profile changes direction at x={x}")
        prev, cur = cur, nxt
    return MonotoneCertificate(f.name, direction, x_max, x_max, exact, interval)


def _sign_escalating(build: Callable[[int], RealInterval], start: int, max_precision: int | None,
                     context) -> tuple[int, int]:
    for prec in schedule(max_precision, start):
        s = build(prec).sign()
        if s:
            return s, prec
    raise Unresolved(f"sign undecided for {context}", context=context, precision=max_precision)


def diff_profile(f: BuiltinF, x_max: int, precision: int = 128,
                 max_precision: int | None = None) -> MonotoneCertificate:
    """Certify that f(x) - f(x-1) is strictly monotone for x = 1..x_max + 1.

    Uses the sign of the second difference f(x+1) - 2 f(x) + f(x-1): exactly
    when the three values are rational, otherwise by escalating intervals.
    """
    if x_max < 2:
        raise ValueError("x_max must be >= 2")
    direction = None
    exact = interval = 0
    top = 0
    for x in range(1, x_max + 1):
        vals = (f(x - 1), f(x), f(x + 1))
        fr = [_as_fraction(v) for v in vals]
        if all(v is not None for v in fr):
            d2 = fr[2] - 2 * fr[1] + fr[0]
            s = (d2 > 0) - (d2 < 0)
            exact += 1
        else:
            def build(prec, vals=vals):
                lo, mid, hi = (_as_interval(v, prec) for v in vals)
                return hi - mid * 2 + lo
            s, used = _sign_escalating(build, precision, max_precision, (f.name, x))
            top = max(top, used)
            interval += 1
        if s == 0:
            raise NotMonotone(x, f"{f.name}: differences tie at x={x}")
        here = CertKind.DIFF_INCREASING if s > 0 else CertKind.DIFF_DECREASING
        if direction is None:
            direction = here
        elif here is not direction:
            raise NotMonotone(x, f"{f.name}: difference profile changes direction at x={x}")
    return MonotoneCertificate(f.name, direction, x_max, x_max, exact, interval, top,
                               shift=f"f(x) - f(0), f(0) = {f(0)}")


# -- conclusions --------------------------------------------------------------

class Relation(enum.Enum):
    STRICTLY_GREATER = "StrictlyGreater"
    STRICTLY_LESS = "StrictlyLess"
    EQUAL = "Equal"

    @classmethod
    def of(cls, order: Ordering) -> "Relation":
        return {Ordering.GREATER: cls.STRICTLY_GREATER, Ordering.LESS: cls.STRICTLY_LESS,
                Ordering.EQUAL: cls.EQUAL}[order]


def _expected(a: CanonicalSeq, b: CanonicalSeq, cert: MonotoneCertificate) -> Relation:
    if a.parts == b.parts:
        return Relation.EQUAL
    return Relation.STRICTLY_GREATER if cert.kind.increasing else Relation.STRICTLY_LESS


def _check_pre(f: BuiltinF, a: CanonicalSeq, b: CanonicalSeq, cert: MonotoneCertificate, ratio: bool):
    if not majorizes(a, b):
        raise PreconditionUnmet(f"{a} does not majorize {b}")
    if cert.function != f.name:
        raise PreconditionUnmet(f"certificate is for {cert.function}, not {f.name}")
    if cert.kind.is_ratio != ratio:
        raise PreconditionUnmet(f"wrong certificate kind {cert.kind.value}")
    if not cert.covers(max(a[0], b[0])):
        raise PreconditionUnmet(f"certificate range {cert.range} does not cover {max(a[0], b[0])}")


def product_value(f: BuiltinF, s: CanonicalSeq) -> PowerProduct:
    return pp_product(_as_pp(f(p)) for p in s)


def product_compare(f: BuiltinF, a: CanonicalSeq, b: CanonicalSeq) -> tuple[Ordering, str]:
    return compare_detailed(product_value(f, a), product_value(f, b))


def verify_product_inequality(f: BuiltinF, a: CanonicalSeq, b: CanonicalSeq,
                              cert: MonotoneCertificate) -> Relation:
    _check_pre(f, a, b, cert, ratio=True)
    observed = Relation.of(product_compare(f, a, b)[0])
    expected = _expected(a, b, cert)
    if observed is not expected:
        raise TheoremViolation(a, b, observed.value, expected.value)
    return observed


def sum_compare(f: BuiltinF, a: CanonicalSeq, b: CanonicalSeq, precision: int = 128,
                max_precision: int | None = None, shifted: bool = True) -> tuple[Ordering, int]:
    """Order sum f(a_i) against sum f(b_j) (each term minus f(0) when ``shifted``).

    Returns the ordering and the precision that decided it (0 when exact).
    Identical sequences are Equal by definition; distinct sequences must be
    separated strictly or :class:`Unresolved` is raised.
    """
    if a.parts == b.parts:
        return Ordering.EQUAL, 0
    offset = (len(a) - len(b)) if shifted else 0
    va = [f(p) for p in a]
    vb = [f(p) for p in b]
    f0 = f(0)
    fr = [_as_fraction(v) for v in va + vb + [f0]]
    if all(v is not None for v in fr):
        diff = sum(fr[:len(va)]) - sum(fr[len(va):len(va) + len(vb)]) - offset * fr[-1]
        return Ordering.of((diff > 0) - (diff < 0)), 0

    def build(prec):
        total = RealInterval.exact(0, prec)
        for v in va:
            total = total + _as_interval(v, prec)
        for v in vb:
            total = total - _as_interval(v, prec)
        if offset:
            total = total - _as_interval(f0, prec) * offset
        return total

    s, used = _sign_escalating(build, precision, max_precision, (f.name, str(a), str(b)))
    return Ordering.of(s), used


def verify_sum_inequality(f: BuiltinF, a: CanonicalSeq, b: CanonicalSeq, cert: MonotoneCertificate,
                          precision: int = 128, max_precision: int | None = None) -> Relation:
    _check_pre(f, a, b, cert, ratio=False)
    observed = Relation.of(sum_compare(f, a, b, precision, max_precision)[0])
    expected = _expected(a, b, cert)
    if observed is not expected:
        raise TheoremViolation(a, b, observed.value, expected.value)
    return observed


# -- sweeps -------------------------------------------------------------------

@dataclass
class SweepResult:
    function: str
    certificate: MonotoneCertificate
    pairs: int = 0
    equal_pairs: int = 0
    violations: list[dict] = field(default_factory=list)
    unresolved: list[dict] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations and not self.unresolved

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "certificate": self.certificate.to_dict(),
            "pairs": self.pairs,
            "equal_pairs": self.equal_pairs,
            "violations": self.violations,
            "unresolved": self.unresolved,
        }


def _product_chunk(f: BuiltinF, cert: MonotoneCertificate, pairs):
    cache: dict[tuple, PowerProduct] = {}

    def value(s):
        if s.parts not in cache:
            cache[s.parts] = product_value(f, s)
        return cache[s.parts]

    out = []
    for a, b in pairs:
        order = compare_detailed(value(a), value(b))[0]
        observed = Relation.of(order)
        out.append((a, b, observed, _expected(a, b, cert)))
    return out


def _sum_chunk(f: BuiltinF, cert: MonotoneCertificate, precision: int, max_precision: int | None, pairs):
    out = []
    for a, b in pairs:
        try:
            observed = Relation.of(sum_compare(f, a, b, precision, max_precision)[0])
        except Unresolved:
            observed = None
        out.append((a, b, observed, _expected(a, b, cert)))
    return out


def _collect(result: SweepResult, rows) -> SweepResult:
    for a, b, observed, expected in rows:
        result.pairs += 1
        if observed is None:
            result.unresolved.append({"a": str(a), "b": str(b)})
            continue
        if observed is Relation.EQUAL:
            result.equal_pairs += 1
        if observed is not expected:
            result.violations.append({"a": str(a), "b": str(b), "observed": observed.value,
                                      "expected": expected.value})
    return result


def _pairs_within(max_sum: int, max_part: int | None):
    for a, b in comparable_pairs(max_sum):
        if max_part is None or max(a[0], b[0]) <= max_part:
            yield a, b


def theorem_a_sweep(f: BuiltinF, max_sum: int, cert: MonotoneCertificate | None = None,
                    max_part: int | None = None, workers: int = 1) -> SweepResult:
    """Check the product conclusion on every comparable pair with sums <= max_sum."""
    cert = cert or ratio_profile(f, max(max_sum, 2))
    pairs = list(_pairs_within(max_sum, max_part))
    for a, b in pairs[:1]:
        _check_pre(f, a, b, cert, ratio=True)
    rows = chunked_map(partial(_product_chunk, f, cert), pairs, workers)
    return _collect(SweepResult(f.name, cert), rows)


def theorem_b_sweep(f: BuiltinF, max_sum: int, cert: MonotoneCertificate | None = None,
                    precision: int = 128, max_precision: int | None = None,
                    workers: int = 1) -> SweepResult:
    """Check the shifted-sum conclusion on every comparable pair with sums <= max_sum."""
    cert = cert or diff_profile(f, max(max_sum, 2), precision, max_precision)
    pairs = list(comparable_pairs(max_sum))
    rows = chunked_map(partial(_sum_chunk, f, cert, precision, max_precision), pairs, workers)
    return _collect(SweepResult(f.name, cert), rows)


def exp_composition_check(f: BuiltinF, x_max: int, precision: int = 128) -> bool:
    """Is g(x) = exp(f(x) - f(0)) ratio-monotone, in the direction f's differences are?

    g(x)/g(x-1) = exp(f(x) - f(x-1)); checked with intervals for x = 1..x_max.
    """
    cert = diff_profile(f, x_max, precision)
    ratios = []
    for x in range(1, x_max + 2):
        d = _as_interval(f(x), precision) - _as_interval(f(x - 1), precision)
        ratios.append(d.exp())
    for r0, r1 in zip(ratios, ratios[1:]):
        ok = r0.strictly_less(r1) if cert.kind.increasing else r0.strictly_greater(r1)
        if not ok:
            return False
    return True


def factorial_sweep(max_sum: int) -> SweepResult:
    """Product conclusion for f = factorial with plain integers (no power products)."""
    cert = ratio_profile(FACTORIAL, max(max_sum, 2))
    values: dict[tuple, int] = {}
    result = SweepResult(FACTORIAL.name, cert)
    for a, b in comparable_pairs(max_sum):
        for s in (a, b):
            if s.parts not in values:
                v = 1
                for p in s:
                    v *= factorial(p)
                values[s.parts] = v
        va, vb = values[a.parts], values[b.parts]
        observed = Relation.of(Ordering.of((va > vb) - (va < vb)))
        result = _collect(result, [(a, b, observed, _expected(a, b, cert))])
    return result
