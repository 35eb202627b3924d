from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..minkowski import Point


class Verdict(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    VACUOUS = "VacuouslyHolds"
    WITNESSED = "WitnessedOnly"

    @property
    def ok(self) -> bool:
        return self is not Verdict.FAILS


def combine(verdicts) -> Verdict:
    """Fails beats WitnessedOnly beats Holds beats VacuouslyHolds."""
    verdicts = list(verdicts)
    if not verdicts:
        return Verdict.VACUOUS
    if Verdict.FAILS in verdicts:
        return Verdict.FAILS
    if Verdict.WITNESSED in verdicts:
        return Verdict.WITNESSED
    if Verdict.HOLDS in verdicts:
        return Verdict.HOLDS
    return Verdict.VACUOUS


@dataclass
class CheckReport:
    name: str
    verdict: Verdict
    witnesses: List[Any] = field(default_factory=list)
    trace: List[str] = field(default_factory=list)
    parts: Dict[str, "CheckReport"] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict.ok

    @property
    def holds(self) -> bool:
        return self.verdict is not Verdict.FAILS

    def summary(self) -> dict:
        out = {
            "name": self.name,
            "verdict": self.verdict.value,
            "witnesses": [_plain(w) for w in self.witnesses],
        }
        if self.parts:
            out["parts"] = {k: v.summary() for k, v in self.parts.items()}
        return out

    def summary_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True, ensure_ascii=False)

    def text(self, indent: str = "") -> str:
        lines = [f"{indent}{self.name}: {self.verdict.value}"]
        for t in self.trace:
            lines.append(f"{indent}  {t}")
        for w in self.witnesses[:10]:
            lines.append(f"{indent}  witness: {json.dumps(_plain(w), ensure_ascii=False)}")
        if len(self.witnesses) > 10:
            lines.append(f"{indent}  ... {len(self.witnesses) - 10} more")
        for part in self.parts.values():
            lines.append(part.text(indent + "  "))
        return "\n".join(lines)

    def __str__(self):
        return self.text()


def _plain(x):
    if isinstance(x, Point):
        return [c.literal() for c in x.coords]
    if hasattr(x, "literal"):
        return x.literal()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, enum.Enum):
        return x.value
    return x
