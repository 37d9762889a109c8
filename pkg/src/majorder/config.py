"""Every tunable and CLI default lives here.

``DEFAULTS`` is the single configuration record. CLI flags override individual
fields; the environment variable ``MAJORDER_MAX_PRECISION`` caps the interval
escalation schedule.

Fields
------
precision_schedule
    Bit precisions tried in order by every escalating interval comparison.
    Geometric, so wasted work stays within a constant factor of the last step.
max_precision
    Escalation stops after this many bits and the comparison is reported
    as unresolved.
blowup_bits
    Estimated size (bits) of the largest intermediate integer that exact
    exponent clearing may build before handing off to intervals.
stirling_min_argument / stirling_argument_per_bit
    Gamma/digamma arguments are shifted upward until they reach
    ``max(stirling_min_argument, stirling_argument_per_bit * precision)``
    before the asymptotic series is summed.
stirling_max_terms
    Hard cap on series terms; the remainder bound keeps the enclosure
    rigorous even if the cap is hit.
guard_bits
    Extra working precision carried internally before rounding outward.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

PRECISION_ENV = "MAJORDER_MAX_PRECISION"


@dataclass(frozen=True)
class Defaults:
    start_precision: int = 128
    max_precision: int = 8192
    blowup_bits: int = 1 << 24
    stirling_min_argument: int = 10
    stirling_argument_per_bit: float = 0.5
    stirling_max_terms: int = 2000
    guard_bits: int = 32

    # CLI defaults
    x_max: int = 200
    solve_bound: int = 10
    poset_max_sum: int = 9
    theorem_a_max_sum: int = 12
    theorem_b_max_sum: int = 10
    theorem_c_grid: str = "1.1:50:0.1"
    uniqueness_max_index: int = 10
    uniqueness_tuple_len: int = 3
    fib_ratio_n_max: int = 200
    recurrence_n_max: int = 20
    binet_n_max: int = 100
    binet_precision: int = 256
    threads: int = 1
    report_format: str = "json"
    sum_precision_cap: int = 1024

    @property
    def precision_schedule(self) -> tuple[int, ...]:
        steps = []
        p = self.start_precision
        while p < self.max_precision:
            steps.append(p)
            p *= 2
        steps.append(self.max_precision)
        return tuple(steps)


def _from_env() -> Defaults:
    base = Defaults()
    raw = os.environ.get(PRECISION_ENV)
    if raw:
        cap = int(raw)
        if cap < 32:
            raise ValueError(f"{PRECISION_ENV} must be at least 32 bits, got {cap}")
        base = replace(base, max_precision=cap, start_precision=min(base.start_precision, cap))
    return base


DEFAULTS = _from_env()


def schedule(max_precision: int | None = None, start: int | None = None) -> tuple[int, ...]:
    """Escalation schedule, optionally truncated to a smaller cap."""
    cfg = DEFAULTS
    if max_precision is not None or start is not None:
        cap = max_precision if max_precision is not None else cfg.max_precision
        cfg = replace(cfg, max_precision=cap,
                      start_precision=min(start or cfg.start_precision, cap))
    return cfg.precision_schedule
