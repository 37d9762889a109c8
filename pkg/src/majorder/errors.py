"""Exception hierarchy shared by every module.

Each failure the library can signal has its own class so callers (and the
CLI's exit-code mapping) can tell a usage problem from an inconclusive
computation from a genuine counterexample.
"""

from __future__ import annotations


class MajorderError(Exception):
    """Base class for all library errors."""


class InvalidSequence(MajorderError, ValueError):
    pass


class EmptySequence(InvalidSequence):
    pass


class NonPositiveEntry(InvalidSequence):
    pass


class Unresolved(MajorderError):
    """Interval enclosures still overlap at the maximum allowed precision.

    This means the margin is too tight to decide, never that the claim is false.
    """

    def __init__(self, message: str, *, context: object = None, precision: int | None = None):
        super().__init__(message)
        self.context = context
        self.precision = precision


class NotMonotone(MajorderError):
    def __init__(self, x: int, message: str = ""):
        super().__init__(message or f"ratio/difference profile ties or flips direction at x={x}")
        self.x = x


class F0NotOne(MajorderError):
    pass


class TheoremViolation(MajorderError):
    """A computed ordering contradicts the monotone-map theorem being checked."""

    def __init__(self, a, b, observed, expected):
        super().__init__(f"{a} vs {b}: observed {observed}, theorem predicts {expected}")
        self.a = a
        self.b = b
        self.observed = observed
        self.expected = expected


class PreconditionUnmet(MajorderError, ValueError):
    pass


class NegativeTerm(MajorderError):
    def __init__(self, n: int, value: int):
        super().__init__(f"term A_{n} = {value} is negative")
        self.n = n
        self.value = value


class HypothesisViolated(MajorderError, ValueError):
    pass
