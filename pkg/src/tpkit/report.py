"""Structured pass/fail reports shared by the verifiers and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NOT_MET = "hypothesis-not-met"


@dataclass
class Check:
    name: str
    passed: bool
    expected: Any = None
    actual: Any = None
    witness: Any = None
    status: str | None = None

    def __post_init__(self):
        if self.status is None:
            self.status = PASS if self.passed else FAIL

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "witness": _jsonable(self.witness),
        }


def not_met(name: str, detail: Any = None) -> Check:
    return Check(name, passed=True, actual=detail, status=NOT_MET)


@dataclass
class Report:
    case: str
    details: list[Check] = field(default_factory=list)
    seed: int | None = None
    trials: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if any(c.status == FAIL for c in self.details):
            return FAIL
        if self.details and all(c.status == NOT_MET for c in self.details):
            return NOT_MET
        return PASS

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def add(self, check: Check) -> Check:
        self.details.append(check)
        return check

    def extend(self, other: "Report") -> None:
        for c in other.details:
            self.details.append(
                Check(f"{other.case}: {c.name}", c.passed, c.expected, c.actual, c.witness, c.status)
            )

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, NOT_MET: 0}
        for c in self.details:
            out[c.status] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "status": self.status,
            "seed": self.seed,
            "trials": self.trials,
            "counts": self.counts(),
            "notes": list(self.notes),
            "details": [c.to_dict() for c in self.details],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self, verbose: bool = False) -> str:
        counts = self.counts()
        head = (
            f"[{self.status.upper()}] {self.case}: {counts[PASS]} passed, {counts[FAIL]} failed, "
            f"{counts[NOT_MET]} hypothesis-not-met"
        )
        if self.seed is not None or self.trials is not None:
            head += f" (seed={self.seed}, trials={self.trials})"
        lines = [head]
        lines += [f"  note: {n}" for n in self.notes]
        for c in self.details:
            if verbose or c.status == FAIL:
                line = f"  {c.status:>18}  {c.name}"
                if c.status == FAIL:
                    line += f"  expected={_short(c.expected)} actual={_short(c.actual)}"
                    if c.witness is not None:
                        line += f" witness={_short(c.witness)}"
                lines.append(line)
        return "\n".join(lines)


def _short(x) -> str:
    s = json.dumps(_jsonable(x))
    return s if len(s) < 160 else s[:157] + "..."


def _jsonable(x):
    from fractions import Fraction

    from .exact import ExactMatrix, IndexSet, format_rational

    if x is None or isinstance(x, (bool, int, str, float)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, IndexSet):
        return list(x.indices)
    if isinstance(x, ExactMatrix):
        return x.to_strings()
    if hasattr(x, "to_dict"):
        return x.to_dict()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return str(x)
