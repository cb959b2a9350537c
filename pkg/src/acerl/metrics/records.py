"""Replication aggregation: mean and standard error per design cell."""
import json
import math
from typing import Optional, Sequence

import numpy as np
import pydantic


def summarize(values: Sequence[float]) -> tuple[float, float]:
    """
    Mean and standard error ``sd / sqrt(reps)`` (sample sd, ``ddof=1``).

    A single replication has standard error 0.

    :raises ValueError: On an empty sequence.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("cannot summarize an empty set of replications")
    mean = float(arr.mean())
    if arr.size == 1:
        return mean, 0.0
    return mean, float(arr.std(ddof=1) / math.sqrt(arr.size))


def format_mean_se(mean: float, se: float, percent: bool = True, digits: int = 1) -> str:
    """``"mean(se)"`` to ``digits`` decimals, scaled to percent when requested."""
    if not (math.isfinite(mean) and math.isfinite(se)):
        return "n/a"
    scale = 100.0 if percent else 1.0
    return f"{mean * scale:.{digits}f}({se * scale:.{digits}f})"


class ExperimentRecord(pydantic.BaseModel):
    """One (design cell, method, task, metric) row of aggregated results."""
    model_config = pydantic.ConfigDict(frozen=True)

    n: int
    v: int
    d: int
    r: int
    sigma_xi: float
    method: str
    task: str
    metric: str
    values: tuple[float, ...] = ()
    status: str = "ok"

    @pydantic.computed_field
    @property
    def reps(self) -> int:
        return len(self.values)

    @pydantic.computed_field
    @property
    def mean(self) -> Optional[float]:
        return summarize(self.values)[0] if self.values else None

    @pydantic.computed_field
    @property
    def se(self) -> Optional[float]:
        return summarize(self.values)[1] if self.values else None

    @property
    def sort_key(self) -> tuple:
        return self.n, self.v, self.r, self.sigma_xi, self.method, self.task, self.metric

    def to_row(self) -> dict:
        row = self.model_dump(exclude={"values"})
        row["values_json"] = json.dumps([float(x) for x in self.values])
        return row
