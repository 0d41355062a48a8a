"""Uniform pass/fail reports for the package's consistency checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of one named check.

    params holds the inputs that identify the run, details holds
    structured findings (empty when the check passes), data holds
    check-specific payload such as per-degree tables.
    """

    check: str
    params: dict[str, Any]
    passed: bool
    details: list[Any] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"check": self.check, "params": dict(self.params)}
        out.update(self.data)
        out["details"] = list(self.details)
        out["verdict"] = self.verdict
        return out


class CheckFailure(Exception):
    """Raised when an internal consistency check fails hard enough that
    the requested object cannot be trusted.  Carries the report."""

    def __init__(self, report: CheckReport):
        self.report = report
        super().__init__(f"{report.check} failed: {report.details[:3]}")
