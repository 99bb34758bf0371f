"""Check records and the report container emitted by the command line tool."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cyclo import Cyclotomic

SCHEMA_VERSION = 1
PASS, FAIL, INFO = "pass", "fail", "info"
EXACT_ZERO = "exact-zero"


@dataclass
class CheckRecord:
    check_id: str
    status: str
    mode: str
    max_residual: float | str | None = None
    detail: str = ""

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "status": self.status,
            "mode": self.mode,
            "max_residual": self.max_residual,
            "detail": self.detail,
        }

    @classmethod
    def from_residual(cls, res, check_id: str | None = None) -> CheckRecord:
        mres = EXACT_ZERO if res.exact_zero else float(res.max_residual)
        return cls(check_id or res.name, PASS if res.passed else FAIL, res.mode, mres, res.detail)


def scalar_json(c, q: Cyclotomic | None = None):
    """JSON form of a scalar: exact text (when exact) and the complex value."""
    from .dsl import format_scalar

    if c is None:
        return None
    if isinstance(c, Cyclotomic):
        z = c.embed()
        return {"exact": format_scalar(c, q), "value": [z.real, z.imag]}
    z = complex(c)
    return {"value": [z.real, z.imag]}


@dataclass
class Report:
    job: dict
    tool_version: str
    results: list[CheckRecord] = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    def add(self, record: CheckRecord) -> None:
        if any(r.check_id == record.check_id for r in self.results):
            raise ValueError(f"duplicate check id {record.check_id!r}")
        self.results.append(record)

    @property
    def failed(self) -> bool:
        return any(r.status == FAIL for r in self.results)

    def as_dict(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "tool": {"name": "ggcs", "version": self.tool_version},
            "job": self.job,
            "results": [r.as_dict() for r in self.results],
            "artifacts": self.artifacts,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            res = r.max_residual
            if isinstance(res, float):
                res = f"{res:.3e}"
            elif res is None:
                res = "-"
            lines.append(f"{r.status.upper():<4}  {r.check_id}  [{r.mode}]  {res}  {r.detail}".rstrip())
        for name in sorted(self.artifacts):
            lines.append(f"# {name}: {json.dumps(self.artifacts[name], sort_keys=True)}")
        return "\n".join(lines)
