"""Check results and their JSON serialization."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, List, Optional


@dataclass
class CheckResult:
    identity: str
    status: bool
    residual: Optional[str] = None
    alpha: Optional[list] = None
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = "pass" if self.status else "fail"
        d["wall_time"] = round(self.wall_time, 6)
        return d


def is_zero_residual(r: Any) -> bool:
    """Zero test used by every check; matrices and containers are zero entry-wise."""
    if r is None:
        return True
    if isinstance(r, bool):
        return r
    if hasattr(r, "is_zero"):
        return r.is_zero()
    if isinstance(r, dict):
        return all(is_zero_residual(v) for v in r.values())
    if isinstance(r, (list, tuple)):
        return all(is_zero_residual(v) for v in r)
    return r == 0


def residual_text(r: Any) -> str:
    if isinstance(r, bool):
        return "mismatch"
    if isinstance(r, dict):
        bad = {k: v for k, v in r.items() if not is_zero_residual(v)}
        k, v = next(iter(bad.items()))
        return f"{k}: {residual_text(v)}"
    if isinstance(r, (list, tuple)):
        for k, v in enumerate(r):
            if not is_zero_residual(v):
                return f"[{k}]: {residual_text(v)}"
    return str(r)


@dataclass
class Report:
    name: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status for r in self.results)

    def __bool__(self):
        return self.passed

    def check(self, identity: str, fn: Callable[[], Any], alpha=None) -> CheckResult:
        """Run ``fn`` and record it; ``fn`` returns a residual that must vanish."""
        t0 = time.perf_counter()
        r = fn()
        dt = time.perf_counter() - t0
        ok = is_zero_residual(r)
        res = CheckResult(identity, ok, None if ok else residual_text(r),
                          None if alpha is None else [str(a) for a in alpha], dt)
        self.results.append(res)
        return res

    def extend(self, other: "Report") -> "Report":
        self.results.extend(other.results)
        return self

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.status]

    def to_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed,
                "results": [r.to_dict() for r in self.results]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def summary(self) -> str:
        lines = []
        for r in self.results:
            mark = "PASS" if r.status else "FAIL"
            line = f"{mark}  {r.identity}"
            if r.alpha:
                line += f"  alpha=({','.join(r.alpha)})"
            if not r.status:
                line += f"  residual: {r.residual}"
            lines.append(line)
        return "\n".join(lines)
