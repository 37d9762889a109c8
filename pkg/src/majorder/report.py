"""Machine-readable run reports (JSON or CSV) and their exit-code contract.

JSON is canonical: sorted keys, two-space indent, UTF-8, LF, trailing newline,
and no native floats. Interval bounds are decimal strings, wall time is an
integer number of milliseconds. Parsing a report and dumping it again with
:func:`dumps` reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_UNRESOLVED = 2
EXIT_USAGE = 64


class Outcome(enum.Enum):
    VERIFIED = "Verified"
    COUNTEREXAMPLE_FOUND = "CounterexampleFound"
    UNRESOLVED = "Unresolved"

    @property
    def exit_code(self) -> int:
        return {
            Outcome.VERIFIED: EXIT_OK,
            Outcome.COUNTEREXAMPLE_FOUND: EXIT_COUNTEREXAMPLE,
            Outcome.UNRESOLVED: EXIT_UNRESOLVED,
        }[self]


# record "status" values
OK = "ok"
COUNTEREXAMPLE = "counterexample"
UNRESOLVED = "unresolved"
INELIGIBLE = "ineligible"


def outcome_of(records: list[dict]) -> Outcome:
    statuses = {r.get("status", OK) for r in records}
    if COUNTEREXAMPLE in statuses:
        return Outcome.COUNTEREXAMPLE_FOUND
    if UNRESOLVED in statuses:
        return Outcome.UNRESOLVED
    return Outcome.VERIFIED


@dataclass
class RunReport:
    command: list[str]
    parameters: dict
    records: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    wall_time_ms: int = 0
    outcome: Outcome | None = None

    def __post_init__(self):
        if self.outcome is None:
            self.outcome = outcome_of(self.records)

    @property
    def exit_code(self) -> int:
        return self.outcome.exit_code

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "outcome": self.outcome.value,
            "records": self.records,
            "summary": self.summary,
            "wall_time_ms": self.wall_time_ms,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        return records_csv(self.records)


def _check_no_floats(obj, path="$"):
    if isinstance(obj, float):
        raise TypeError(f"float at {path}; serialize numbers as strings or ints")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _check_no_floats(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _check_no_floats(v, f"{path}[{i}]")


def dumps(obj) -> str:
    _check_no_floats(obj)
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def records_csv(records: list[dict]) -> str:
    """One row per record; nested values are embedded as canonical JSON."""
    columns = sorted({k for r in records for k in r})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        row = []
        for c in columns:
            v = r.get(c)
            if isinstance(v, (dict, list)):
                v = json.dumps(v, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
            row.append("" if v is None else v)
        writer.writerow(row)
    return buf.getvalue()
