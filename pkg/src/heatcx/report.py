"""Structured results of verification runs.

Every check in the geometry modules returns a :class:`CheckReport`; the CLI
serializes them as JSON lines and CSV rows.  Reports are deterministic for a
fixed configuration: no wall-clock fields, fixed reduction order upstream.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict

__all__ = ["CheckReport", "CSV_HEADER"]

CSV_HEADER = "id,lhs,rhs,abs_err,rel_err,pass"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verification: lhs vs rhs at a tolerance.

    ``passed`` is True iff the relative error is within ``tol`` and no
    trust gate failed.  For scan-type checks (pointwise bounds) lhs is the
    worst observed ratio and rhs its admissible value.  ``node_counts``
    records the quadrature budget, ``drift`` the change under refinement.
    """

    id: str
    lhs: float
    rhs: float
    tol: float
    mode: str = "equality"  # "equality" | "bound" (lhs <= rhs allowed slack tol)
    scale: float = float("nan")  # explicit error scale for residual-type checks
    node_counts: dict = field(default_factory=dict)
    drift: float = float("nan")
    extrapolated: bool = False
    pole_proximity: bool = False
    trust_failures: tuple = ()
    details: dict = field(default_factory=dict)

    @property
    def abs_err(self) -> float:
        if self.mode == "bound":
            return max(0.0, self.lhs - self.rhs)
        return abs(self.lhs - self.rhs)

    @property
    def rel_err(self) -> float:
        scale = self.scale if math.isfinite(self.scale) else max(abs(self.lhs), abs(self.rhs))
        if scale == 0.0:
            return 0.0
        return self.abs_err / scale

    @property
    def passed(self) -> bool:
        return self.rel_err <= self.tol and not self.trust_failures

    def to_dict(self) -> dict:
        d = asdict(self)
        d["abs_err"] = self.abs_err
        d["rel_err"] = self.rel_err
        d["pass"] = self.passed
        d["trust_failures"] = list(self.trust_failures)
        return d

    def to_json(self) -> str:
        def clean(v):
            if isinstance(v, float) and (math.isnan(v) or math.isinf(v)):
                return repr(v)
            return v

        d = {k: clean(v) for k, v in self.to_dict().items()}
        return json.dumps(d, sort_keys=True)

    def to_csv_row(self) -> str:
        return (
            f"{self.id},{self.lhs!r},{self.rhs!r},"
            f"{self.abs_err!r},{self.rel_err!r},{self.passed}"
        )
