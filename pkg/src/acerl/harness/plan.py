import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional

import pydantic

from ..config.models import SCHEMA_VERSION, AcerlConfig, AdmmConfig, KMeansConfig
from ..downstream import SubjectWeighting
from ..utils import stable_hash64

Method = Literal["acerl", "spca"]
Task = Literal["classify", "select", "community", "error"]


@dataclass(frozen=True, order=True)
class DesignCell:
    """One point of the design grid."""
    n: int
    v: int
    r: int
    sigma_xi: float

    @property
    def d(self) -> int:
        return self.v * (self.v - 1) // 2

    @property
    def key(self) -> str:
        return f"n{self.n}_v{self.v}_r{self.r}_sigma{self.sigma_xi:g}"

    def as_dict(self) -> dict:
        return {"n": self.n, "v": self.v, "r": self.r, "sigma_xi": self.sigma_xi}


class ExperimentPlan(pydantic.BaseModel):
    """
    Replication study over a grid of designs.

    Classification, selection and error tasks run on the sparse design;
    the community task runs on the community design of the same cell.
    """
    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    schema_version: str = SCHEMA_VERSION
    n: list[int] = pydantic.Field(min_length=1)
    v: list[int] = pydantic.Field(min_length=1)
    r: list[int] = pydantic.Field(default=[10], min_length=1)
    sigma_xi: list[float] = pydantic.Field(default=[0.0], min_length=1)
    methods: list[Method] = pydantic.Field(default=["acerl", "spca"], min_length=1)
    tasks: list[Task] = pydantic.Field(default=["classify", "select"], min_length=1)
    reps: int = pydantic.Field(default=50, ge=1)
    base_seed: int = pydantic.Field(default=0, ge=0)
    output_dir: Path = Path("results")

    s: Optional[int] = pydantic.Field(default=150, ge=1, description="Working sparsity, capped at d")
    s_star: int = pydantic.Field(default=50, ge=1)
    G: int = pydantic.Field(default=2, ge=1)
    train_frac: float = pydantic.Field(default=0.6, gt=0.0, lt=1.0)
    workers: int = pydantic.Field(default=1, ge=1)
    embedding: SubjectWeighting = "precision_weighted"

    estimator: AcerlConfig = AcerlConfig(init="gram_pca", eta=0.5, diag_weight="squared")
    admm: AdmmConfig = AdmmConfig()
    kmeans: KMeansConfig = KMeansConfig()

    @pydantic.field_validator("n", "v", "r", "sigma_xi", "methods", "tasks")
    @classmethod
    def _unique(cls, values: list) -> list:
        return list(dict.fromkeys(values))

    @pydantic.model_validator(mode="after")
    def _check_grid(self):
        if min(self.n) < 5:
            raise ValueError("every n must be at least 5 so both sides of the split hold 2 subjects")
        if min(self.v) < 2:
            raise ValueError("every v must be at least 2")
        sparse_tasks = {"classify", "select", "error"} & set(self.tasks)
        if sparse_tasks and min(v * (v - 1) // 2 for v in self.v) < self.s_star:
            raise ValueError(f"s_star={self.s_star} exceeds the edge count of the smallest v")
        if "classify" in self.tasks and min(self.r) < 2:
            raise ValueError("the classification task needs r >= 2")
        if "community" in self.tasks and self.G > min(self.v):
            raise ValueError(f"G={self.G} exceeds the smallest node count")
        return self

    def cells(self) -> list[DesignCell]:
        return sorted(
            DesignCell(n=n, v=v, r=r, sigma_xi=float(sigma))
            for n, v, r, sigma in itertools.product(self.n, self.v, self.r, self.sigma_xi)
        )

    def fingerprint(self, cell: DesignCell) -> str:
        """
        Hash of everything that shapes the records of ``cell``.

        The grid lists, ``output_dir`` and ``workers`` are left out, so growing
        the grid or changing parallelism keeps existing checkpoints valid.
        """
        settings = self.model_dump(mode="json", exclude={"n", "v", "r", "sigma_xi", "output_dir", "workers"})
        return f"{stable_hash64(settings, cell.as_dict()):016x}"
