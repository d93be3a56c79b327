"""Pass/fail records shared by the lemma checks and the verification suite."""

from __future__ import annotations

from dataclasses import dataclass

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class CheckResult:
    check: str
    status: str
    value: object
    tolerance: object = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "status": self.status,
            "value": _plain(self.value),
            "tolerance": _plain(self.tolerance),
        }


def status_of(ok: bool) -> str:
    return PASS if ok else FAIL


def _plain(v):
    """Convert numpy scalars and tuples into JSON-friendly builtins."""
    if v is None or isinstance(v, (bool, str, int)):
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return float(v)
