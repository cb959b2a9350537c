from .masking import (
    MaskingParams,
    MaskDiagonal,
    sample_mask,
    mask_moment,
    diagonal_weights,
    sampling_params,
    update_masking_params,
)
from .thresholding import hard_threshold
from .gram import (
    CenteredGram,
    centered_gram,
    fantope_project,
    initial_embedding,
)
from .loss import (
    ContrastiveObjective,
    empirical_loss,
    loss_gradient,
    expected_loss_surrogate,
)
from .fitting import fit, resolve_config

__all__ = [
    "MaskingParams",
    "MaskDiagonal",
    "sample_mask",
    "mask_moment",
    "diagonal_weights",
    "sampling_params",
    "update_masking_params",
    "hard_threshold",
    "CenteredGram",
    "centered_gram",
    "fantope_project",
    "initial_embedding",
    "ContrastiveObjective",
    "empirical_loss",
    "loss_gradient",
    "expected_loss_surrogate",
    "fit",
    "resolve_config",
]
