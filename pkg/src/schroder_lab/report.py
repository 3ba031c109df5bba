"""Structured pass/fail verification reports with a stable JSON layout.

Schema (also shipped as ``docs/verification-report.schema.json``):

    {
      "checks": [
        {"check": str, "expected": number, "computed": number,
         "tolerance": number, "pass": bool},
        ...
      ],
      "summary": {"total": int, "passed": int}
    }

Reports are deterministic: same inputs, byte-identical serialization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["checks", "summary"],
    "additionalProperties": False,
    "properties": {
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["check", "expected", "computed", "tolerance", "pass"],
                "additionalProperties": False,
                "properties": {
                    "check": {"type": "string"},
                    "expected": {"type": "number"},
                    "computed": {"type": "number"},
                    "tolerance": {"type": "number"},
                    "pass": {"type": "boolean"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["total", "passed"],
            "additionalProperties": False,
            "properties": {
                "total": {"type": "integer"},
                "passed": {"type": "integer"},
            },
        },
    },
}


@dataclass(frozen=True)
class CheckRow:
    check: str
    expected: float
    computed: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.computed - self.expected) <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "expected": self.expected,
            "computed": self.computed,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    checks: List[CheckRow] = field(default_factory=list)

    def add(self, check: str, expected: float, computed: float, tolerance: float):
        self.checks.append(CheckRow(check, float(expected), float(computed), float(tolerance)))

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)

    @property
    def total(self) -> int:
        return len(self.checks)

    @property
    def passed(self) -> int:
        return sum(1 for row in self.checks if row.passed)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total

    def to_dict(self) -> dict:
        return {
            "checks": [row.to_dict() for row in self.checks],
            "summary": {"total": self.total, "passed": self.passed},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def lines(self):
        """One human-readable pass/fail line per check."""
        for row in self.checks:
            status = "PASS" if row.passed else "FAIL"
            yield (
                f"[{status}] {row.check}: expected {row.expected:.10g}, "
                f"computed {row.computed:.10g} (tol {row.tolerance:.2g})"
            )
