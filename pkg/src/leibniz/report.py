"""Structured outcomes of identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .poly import Poly
from .scalars import ScalarElem


@dataclass(frozen=True)
class Counterexample:
    """One failed instance: both sides and the first coefficient where they differ."""

    inputs: tuple
    lhs: Any  # Poly or ScalarElem
    rhs: Any
    index: int | None = None
    label: str = ""

    def to_json(self) -> dict:
        out = {
            "inputs": [_text(x) for x in self.inputs],
            "lhs": _text(self.lhs),
            "rhs": _text(self.rhs),
            "first_differing_power": self.index,
        }
        if self.label:
            out["identity"] = self.label
        if self.index is not None and isinstance(self.lhs, Poly):
            out["coefficients"] = [_text(self.lhs.coeff(self.index)), _text(self.rhs.coeff(self.index))]
        return out


@dataclass
class CheckReport:
    total: int = 0
    passed: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    skipped: int = 0
    by_identity: dict[str, dict[str, int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def record(self, inputs: tuple, lhs, rhs, label: str = "") -> bool:
        """Compare lhs and rhs exactly; returns True on agreement."""
        self.total += 1
        stats = self.by_identity.setdefault(label, {"total": 0, "passed": 0, "skipped": 0}) if label else None
        if stats is not None:
            stats["total"] += 1
        if lhs == rhs:
            self.passed += 1
            if stats is not None:
                stats["passed"] += 1
            return True
        self.counterexamples.append(Counterexample(tuple(inputs), lhs, rhs, first_difference(lhs, rhs), label))
        return False

    def skip(self, label: str = "") -> None:
        self.skipped += 1
        if label:
            stats = self.by_identity.setdefault(label, {"total": 0, "passed": 0, "skipped": 0})
            stats["skipped"] += 1

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.total += other.total
        self.passed += other.passed
        self.counterexamples.extend(other.counterexamples)
        self.skipped += other.skipped
        for label, stats in other.by_identity.items():
            mine = self.by_identity.setdefault(label, {"total": 0, "passed": 0, "skipped": 0})
            for key, value in stats.items():
                mine[key] += value
        return self

    def to_json(self, limit: int | None = 20) -> dict:
        cex = self.counterexamples if limit is None else self.counterexamples[:limit]
        out = {
            "total": self.total,
            "passed": self.passed,
            "failed": len(self.counterexamples),
            "skipped": self.skipped,
            "counterexamples": [c.to_json() for c in cex],
        }
        if self.by_identity:
            out["by_identity"] = {k: dict(v) for k, v in sorted(self.by_identity.items())}
        return out


def first_difference(lhs, rhs) -> int | None:
    if isinstance(lhs, Poly) and isinstance(rhs, Poly):
        n = max(len(lhs), len(rhs))
        for k in range(n):
            if lhs.coeff(k) != rhs.coeff(k):
                return k
        return None
    return 0


def _text(x) -> Any:
    if isinstance(x, (Poly, ScalarElem)):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [_text(v) for v in x]
    if isinstance(x, (int, str)) or x is None:
        return x
    return str(x)
