"""Residual reports shared by every verification routine."""
from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """One numeric check.

    ``kind="max"``: ``value`` is a residual and must not exceed ``tol``.
    ``kind="min"``: ``value`` is a nondegeneracy margin and must exceed ``tol``.
    """

    name: str
    value: float
    tol: float
    kind: str = "max"

    @property
    def passed(self) -> bool:
        if math.isnan(self.value):
            return False
        return self.value <= self.tol if self.kind == "max" else self.value > self.tol

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "tol": self.tol,
            "kind": self.kind,
            "pass": self.passed,
        }


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, name: str, value: float, tol: float, kind: str = "max") -> Check:
        c = Check(name, float(value), float(tol), kind)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.value, c.tol, c.kind))

    @property
    def max_residual(self) -> float:
        return max((c.value for c in self.checks if c.kind == "max"), default=0.0)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.as_dict() for c in self.checks],
            "max_residual": self.max_residual,
            "pass": self.passed,
            **({"notes": self.notes} if self.notes else {}),
        }
