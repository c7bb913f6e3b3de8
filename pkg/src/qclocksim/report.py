"""Deterministic result reporting for scenario runs.

Reports hold three things: the parameters a scenario ran with, tabular rows
of computed numbers, and named pass/fail checks with their tolerances.
Emission is byte-reproducible: floats are written with repr (shortest
round-trip form), JSON keys are sorted, and nothing time- or host-dependent
ever goes into an output file.  Wall-clock timings belong on stderr, not in
the artifacts.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np


def format_value(value) -> str:
    """Shortest round-trip text for a cell value."""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _plain(value):
    """Recursively convert numpy containers to JSON-friendly builtins."""
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass(frozen=True)
class CheckResult:
    """One named tolerance check inside a scenario run."""

    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""


@dataclass
class RunReport:
    """Everything a scenario run produced, ready to emit."""

    scenario: str
    name: str
    parameters: dict
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add_check(self, name: str, passed: bool, value, tolerance, detail: str = "") -> None:
        self.checks.append(
            CheckResult(
                name=name,
                passed=bool(passed),
                value=float(value),
                tolerance=float(tolerance),
                detail=detail,
            )
        )

    def summary_lines(self) -> list:
        lines = [f"[{self.scenario}] {self.name}: {len(self.rows)} rows"]
        for check in self.checks:
            verdict = "PASS" if check.passed else "FAIL"
            line = (
                f"  {verdict} {check.name}: value={format_value(check.value)} "
                f"tolerance={format_value(check.tolerance)}"
            )
            if check.detail:
                line += f" ({check.detail})"
            lines.append(line)
        for note in self.notes:
            lines.append(f"  note: {note}")
        return lines

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "scenario": self.scenario,
            "name": self.name,
            "parameters": _plain(self.parameters),
            "rows": _plain(self.rows),
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "value": _plain(c.value),
                    "tolerance": _plain(c.tolerance),
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "notes": list(self.notes),
            "passed": self.passed,
        }

    def write_json(self, path) -> None:
        text = json.dumps(self.to_json_dict(), sort_keys=True, indent=2)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text + "\n")

    def write_csv(self, path) -> None:
        """Emit the tabular rows; column order follows the first row."""
        columns = list(self.rows[0].keys()) if self.rows else []
        for row in self.rows:
            if list(row.keys()) != columns:
                raise ValueError("all report rows must share one column layout")
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(columns)
            for row in self.rows:
                writer.writerow([format_value(row[c]) for c in columns])
