from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of an identity or theorem check.

    ``witness`` describes the first failure (offending walk, entry, values).
    """

    identity: str
    passed: bool = True
    checked: int = 0
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def fail(self, **witness) -> "Report":
        if self.passed:
            self.passed = False
            self.witness = witness
        return self

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        out = {"identity": self.identity, "pass": self.passed, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out
