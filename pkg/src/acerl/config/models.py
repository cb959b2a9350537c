from typing import Literal, Optional

import pydantic

from .registry import register_configuration

SCHEMA_VERSION = "1.0"

InitMethod = Literal["auto", "fantope", "gram_pca"]
DiagWeight = Literal["enumerated", "squared"]
StepScaling = Literal["spectral", "none"]
InnerSchedule = Literal["constant", "growing"]

_SEED_MAX = (1 << 64) - 1


@register_configuration(prefix="estimator")
class AcerlConfig(pydantic.BaseModel):
    """
    Tuning of the two-level contrastive estimator.

    ``s=None`` disables sparsity (s = d); ``inner_iters``/``outer_iters`` left
    at ``None`` resolve to ceil(ln n) for the data at hand.
    """
    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    r: int = pydantic.Field(default=10, ge=1, description="Latent dimension")
    s: Optional[int] = pydantic.Field(default=None, ge=1, description="Working sparsity level")
    eta: float = pydantic.Field(default=0.1, gt=0.0, description="Step size")
    inner_iters: Optional[int] = pydantic.Field(default=None, ge=1, description="T")
    outer_iters: Optional[int] = pydantic.Field(default=None, ge=1, description="K")
    seed: int = pydantic.Field(default=0, ge=0, le=_SEED_MAX)
    init: InitMethod = "auto"
    diag_weight: DiagWeight = "enumerated"
    step_scaling: StepScaling = "spectral"
    inner_schedule: InnerSchedule = "constant"


@register_configuration(prefix="admm")
class AdmmConfig(pydantic.BaseModel):
    """Alternating-direction solver behind the Fantope initializer."""
    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    rho: float = pydantic.Field(default=1.0, gt=0.0)
    lam: Optional[float] = pydantic.Field(
        default=None, ge=0.0,
        description="Soft-threshold level; None uses sqrt(log d / n) * median(diag M)"
    )
    max_iter: int = pydantic.Field(default=50, ge=1)
    tol: float = pydantic.Field(default=1e-4, gt=0.0)


@register_configuration(prefix="kmeans")
class KMeansConfig(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    restarts: int = pydantic.Field(default=20, ge=1)
    max_iter: int = pydantic.Field(default=100, ge=1)
    seed: int = pydantic.Field(default=0, ge=0, le=(1 << 32) - 1)
