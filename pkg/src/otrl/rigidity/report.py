from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence


def _num(x):
    if isinstance(x, bool):
        return x
    return float(x)


@dataclass(frozen=True)
class Check:
    desc: str
    anchor: str
    computed: list
    expected: list
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "desc": self.desc,
            "anchor": self.anchor,
            "computed": [_num(x) for x in self.computed],
            "expected": [_num(x) for x in self.expected],
            "tol": float(self.tol),
            "pass": bool(self.passed),
        }


@dataclass
class SuiteReport:
    """Outcome of one verification suite; passes iff every check passes."""

    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, desc: str, anchor: str, computed, expected, tol: float, passed: bool) -> Check:
        c = Check(desc, anchor, list(computed), list(expected), tol, bool(passed))
        self.checks.append(c)
        return c

    def close(self, desc: str, anchor: str, computed: Sequence[float], expected: Sequence[float], tol: float) -> Check:
        """Elementwise ``|computed - expected| <= tol``."""
        ok = len(computed) == len(expected) and all(
            math.isfinite(c) and abs(c - e) <= tol for c, e in zip(computed, expected)
        )
        return self.add(desc, anchor, computed, expected, tol, ok)

    def worst(self, desc: str, anchor: str, deviation: float, tol: float) -> Check:
        """A sampled deviation that should vanish."""
        return self.close(desc, anchor, [deviation], [0.0], tol)

    def exceeds(self, desc: str, anchor: str, value: float, bound: float, margin: float) -> Check:
        """Strict inequality ``value >= bound + margin``."""
        return self.add(desc, anchor, [value], [bound], margin, value >= bound + margin)

    def holds(self, desc: str, anchor: str, flag: bool, computed: Sequence = (), expected: Sequence = ()) -> Check:
        return self.add(desc, anchor, computed or [flag], expected or [True], 0.0, flag)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "checks": [c.to_dict() for c in self.checks], "pass": self.passed}

    def summary_lines(self) -> list[str]:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.suite}"]
        for c in self.checks:
            lines.append(f"    {'ok  ' if c.passed else 'FAIL'} {c.anchor}: {c.desc}")
        return lines


@dataclass
class AggregateReport:
    suites: list[SuiteReport]
    name: str = "all"

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_dict(self) -> dict:
        checks = []
        for s in self.suites:
            for c in s.checks:
                d = c.to_dict()
                d["desc"] = f"{s.suite}: {d['desc']}"
                checks.append(d)
        return {
            "suite": self.name,
            "checks": checks,
            "pass": self.passed,
            "suites": [s.to_dict() for s in self.suites],
        }
