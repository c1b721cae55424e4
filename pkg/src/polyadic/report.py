from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def plain(obj):
    """Convert numpy scalars/arrays and tuples into JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


@dataclass
class Report:
    """Named pass/fail checks with optional witnesses."""

    name: str
    checks: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def check(self, name: str, ok, witness=None, **details) -> bool:
        entry = {"name": name, "passed": bool(ok)}
        if witness is not None:
            entry["witness"] = plain(witness)
        if details:
            entry.update(plain(details))
        self.checks.append(entry)
        return bool(ok)

    def extend(self, other: Report, prefix: str = ""):
        for c in other.checks:
            c = dict(c)
            c["name"] = prefix + c["name"]
            self.checks.append(c)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c["passed"]]

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "info": plain(self.info), "checks": self.checks}
