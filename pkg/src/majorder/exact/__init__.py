"""Exact and rigorously enclosed arithmetic."""

from .gamma import (
    TheoremCResult,
    bernoulli_even,
    digamma_interval,
    ln_gamma_interval,
    sandwich_check,
    theorem_c_check,
)
from .integers import factorial, factorial_factorization, factor_small
from .interval import RealInterval
from .power import (
    ONE,
    Ordering,
    PowerProduct,
    compare_detailed,
    pp_compare,
    pp_interval_eval,
    pp_mul,
    pp_product,
)

__all__ = [
    "ONE",
    "Ordering",
    "PowerProduct",
    "RealInterval",
    "TheoremCResult",
    "bernoulli_even",
    "compare_detailed",
    "digamma_interval",
    "factor_small",
    "factorial",
    "factorial_factorization",
    "ln_gamma_interval",
    "pp_compare",
    "pp_interval_eval",
    "pp_mul",
    "pp_product",
    "sandwich_check",
    "theorem_c_check",
]
