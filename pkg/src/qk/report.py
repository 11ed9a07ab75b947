"""Structured pass/fail reports shared by the validators and theorem suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Any
    detail: str = ""
    count: int = 1

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "witness": _plain(self.witness),
                "detail": self.detail, "count": self.count}


class ViolationLog:
    """Collects the first witness per axiom and counts the rest."""

    def __init__(self) -> None:
        self._first: dict[str, Violation] = {}
        self._count: dict[str, int] = {}

    def add(self, axiom: str, witness: Any, detail: str = "") -> None:
        if axiom not in self._first:
            self._first[axiom] = Violation(axiom, witness, detail)
        self._count[axiom] = self._count.get(axiom, 0) + 1

    def result(self) -> list[Violation]:
        return [Violation(v.axiom, v.witness, v.detail, self._count[a])
                for a, v in self._first.items()]


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    # inputs refused by a validator; listed but not counted as failures
    rejected: list[tuple[str, str]] = field(default_factory=list)

    def reject(self, label: str, reason: str) -> None:
        self.rejected.append((label, reason))

    def add(self, name: str, passed: bool, witness: Any = None,
            detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), witness, detail))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.detail))
        self.rejected.extend((prefix + lbl, why) for lbl, why in other.rejected)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        out = {"title": self.title, "passed": self.passed,
               "checks": [c.to_dict() for c in self.checks]}
        if self.rejected:
            out["rejected_inputs"] = [{"input": lbl, "reason": why}
                                      for lbl, why in self.rejected]
        return out

    def summary(self) -> str:
        n_ok = sum(c.passed for c in self.checks)
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} {self.title}: {n_ok}/{len(self.checks)} checks"]
        for c in self.failures():
            lines.append(f"  FAIL {c.name}: {c.detail or c.witness}")
        for lbl, why in self.rejected:
            lines.append(f"  REJECTED INPUT {lbl}: {why}")
        return "\n".join(lines)


def _plain(x: Any) -> Any:
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)
