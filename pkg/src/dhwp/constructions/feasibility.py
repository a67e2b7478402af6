"""Necessary conditions for a directed two-cycle-size factorization."""

from __future__ import annotations

from dataclasses import dataclass

from ..model import ProblemSpec

__all__ = ["FeasibilityReport", "check_necessary"]


@dataclass
class FeasibilityReport:
    spec: ProblemSpec
    conditions: list[tuple[str, bool]]

    @property
    def met(self) -> bool:
        return all(ok for _, ok in self.conditions)

    def violations(self) -> list[str]:
        return [name for name, ok in self.conditions if not ok]


def check_necessary(spec: ProblemSpec) -> FeasibilityReport:
    """Divisibility and factor-count conditions every solvable instance meets.

    Meeting them is necessary, never a guarantee of existence.
    """
    conditions = [
        (f"m | v when r > 0 ({spec.m} | {spec.v})", spec.r == 0 or spec.v % spec.m == 0),
        (f"n | v when s > 0 ({spec.n} | {spec.v})", spec.s == 0 or spec.v % spec.n == 0),
        (f"r + s = v - 1 ({spec.r}+{spec.s} = {spec.v - 1})", spec.r + spec.s == spec.v - 1),
    ]
    return FeasibilityReport(spec, conditions)
