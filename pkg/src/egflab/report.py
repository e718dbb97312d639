"""Machine-readable results for axiom and identity checkers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
IMPROPER = "IMPROPER"


@dataclass
class CheckReport:
    """Outcome of one brute-force check.

    ``witness`` holds a minimal JSON-able counterexample when the check
    fails; ``instances_checked`` counts the ground instances that were
    actually examined, so a suspiciously small count is visible.
    """

    axiom: str
    status: str
    witness: Any = None
    instances_checked: int = 0
    notes: str | None = None

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        data = {
            "axiom": self.axiom,
            "status": self.status,
            "instances_checked": self.instances_checked,
        }
        if self.witness is not None:
            data["witness"] = self.witness
        if self.notes:
            data["notes"] = self.notes
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=str)

    def __str__(self):
        tail = f" witness={self.witness}" if self.witness is not None else ""
        note = f" ({self.notes})" if self.notes else ""
        return f"[{self.status}] {self.axiom}: {self.instances_checked} instances{tail}{note}"
