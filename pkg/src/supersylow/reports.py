"""Pass/fail records for verification runs, serialized deterministically."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from gmpy2 import mpq

from .exactla import rat_str

COMPUTED = "computed"
TABULATED = "tabulated"


def jsonable(x):
    """Recursively convert rationals, tuples and sets to JSON-friendly values."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if type(x) is type(mpq(0)):
        return rat_str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


@dataclass
class Check:
    name: str
    passed: bool | None
    details: dict = field(default_factory=dict)
    source: str = COMPUTED

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed,
                "details": jsonable(self.details), "source": self.source}


@dataclass
class VerificationReport:
    """``passed=None`` marks a check that could not be decided; such a check
    keeps the verdict at 'unknown' unless its source is tabulated."""

    target: str
    checks: list[Check] = field(default_factory=list)
    seed: int = 0
    runtime_ms: int | None = None

    def add(self, name: str, passed: bool | None, source: str = COMPUTED, **details) -> Check:
        c = Check(name, passed, details, source)
        self.checks.append(c)
        return c

    @property
    def verdict(self) -> str:
        if any(c.passed is False for c in self.checks):
            return "fail"
        if any(c.passed is None and c.source != TABULATED for c in self.checks):
            return "unknown"
        return "pass"

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        out = {"target": self.target, "seed": self.seed, "verdict": self.verdict,
               "checks": [c.to_dict() for c in self.checks]}
        if self.runtime_ms is not None:
            out["runtime_ms"] = self.runtime_ms
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
