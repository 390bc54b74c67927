"""Verification verdicts and their aggregation.

Every checker emits one ConditionResult per named condition; a report
aggregates them with the precedence FAIL > INDETERMINATE > PROBABLE > PASS.
PROBABLE marks facts established only modulo a prime (or nonemptiness known
over the closure without a rational witness in hand); INDETERMINATE marks
resource-capped computations.  Exit codes follow the same split: 0 all pass,
1 any failure, 2 blocked short of a definite answer.
"""

from __future__ import annotations

from dataclasses import dataclass, is_dataclass, fields as dc_fields
from fractions import Fraction

PASS = "PASS"
FAIL = "FAIL"
PROBABLE = "PROBABLE"
INDETERMINATE = "INDETERMINATE"

VERDICTS = (PASS, FAIL, PROBABLE, INDETERMINATE)

_SEVERITY = {FAIL: 3, INDETERMINATE: 2, PROBABLE: 1, PASS: 0}
_BY_SEVERITY = {v: k for k, v in _SEVERITY.items()}


def combine(verdicts) -> str:
    worst = 0
    for v in verdicts:
        if v not in _SEVERITY:
            raise ValueError(f"unknown verdict {v!r}")
        worst = max(worst, _SEVERITY[v])
    return _BY_SEVERITY[worst]


@dataclass(frozen=True)
class ConditionResult:
    """Outcome of one named check.

    data carries small jsonable-after-plain() extras: ranks, witness points,
    certificates.  Keep it light; full matrices do not belong in reports.
    """

    name: str
    verdict: str
    detail: str = ""
    data: dict | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    mode: str
    field_name: str
    conditions: tuple[ConditionResult, ...]

    @property
    def overall(self) -> str:
        return combine(c.verdict for c in self.conditions)

    @property
    def exit_code(self) -> int:
        worst = self.overall
        if worst == PASS:
            return 0
        if worst == FAIL:
            return 1
        return 2

    def condition(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_jsonable(self) -> dict:
        return {
            "subject": self.subject,
            "mode": self.mode,
            "field": self.field_name,
            "overall": self.overall,
            "conditions": [
                {"name": c.name, "verdict": c.verdict, "detail": c.detail,
                 **({"data": plain(c.data)} if c.data else {})}
                for c in self.conditions
            ],
        }

    def summary_lines(self) -> list[str]:
        width = max((len(c.name) for c in self.conditions), default=0)
        lines = [f"{c.name.ljust(width)}  {c.verdict}"
                 + (f"  {c.detail}" if c.detail else "")
                 for c in self.conditions]
        lines.append(f"{'overall'.ljust(width)}  {self.overall}")
        return lines


def plain(value):
    """Recursively convert report payloads to json-ready primitives.

    Fractions become canonical "p/q" strings, matrices nested lists; prime
    field scalars are already ints and stay ints.
    """
    if value is None or isinstance(value, (bool, int, str, float)):
        return value
    if isinstance(value, Fraction):
        d = value.denominator
        return str(value.numerator) if d == 1 else f"{value.numerator}/{d}"
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if hasattr(value, "rows") and hasattr(value, "ncols"):
        return [[plain(x) for x in row] for row in value.rows]
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: plain(getattr(value, f.name))
                for f in dc_fields(value)}
    raise TypeError(f"cannot make {type(value).__name__} json-ready")
