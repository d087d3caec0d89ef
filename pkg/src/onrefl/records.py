"""Uniform result record for all verifiers, shared by the tests and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def render_value(v: Any) -> str:
    """Stable text for lhs/rhs cells: rationals as p/q, tuples space-joined."""
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, (list, tuple)):
        return " ".join(render_value(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={render_value(v[k])}" for k in sorted(v, key=str))
    return str(v)


@dataclass(frozen=True)
class VerificationRecord:
    """One checked identity: lhs and rhs as computed by two independent routes."""

    theorem: str
    params: dict[str, Any]
    lhs: Any
    rhs: Any
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def params_text(self) -> str:
        return ",".join(f"{k}={render_value(self.params[k])}" for k in sorted(self.params))

    def as_row(self, ms: float | None = None) -> list[str]:
        row = [
            self.theorem,
            self.params_text(),
            render_value(self.lhs),
            render_value(self.rhs),
            "pass" if self.passed else "FAIL",
        ]
        row.append("" if ms is None else f"{ms:.1f}")
        return row
