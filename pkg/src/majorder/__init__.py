"""Majorization order on positive-integer sequences, monotone-map theorems,
factorial Diophantine solvers and rigorous Gamma-function bounds."""

__version__ = "0.1.0"

from .errors import (
    EmptySequence,
    F0NotOne,
    HypothesisViolated,
    InvalidSequence,
    MajorderError,
    NegativeTerm,
    NonPositiveEntry,
    NotMonotone,
    PreconditionUnmet,
    TheoremViolation,
    Unresolved,
)
from .poset import (
    CanonicalSeq,
    DominanceResult,
    canonicalize,
    comparable_pairs,
    compare,
    enumerate_sequences,
    majorizes,
    parse_sequence,
    prefix_table,
    rectangle,
)

__all__ = [
    "CanonicalSeq",
    "DominanceResult",
    "EmptySequence",
    "F0NotOne",
    "HypothesisViolated",
    "InvalidSequence",
    "MajorderError",
    "NegativeTerm",
    "NonPositiveEntry",
    "NotMonotone",
    "PreconditionUnmet",
    "TheoremViolation",
    "Unresolved",
    "__version__",
    "canonicalize",
    "comparable_pairs",
    "compare",
    "enumerate_sequences",
    "majorizes",
    "parse_sequence",
    "prefix_table",
    "rectangle",
]
