"""
Three-point random masking and its adaptive parameter update.

Each coordinate draws ``a_e`` from ``{0, 1/2, 1}`` with probabilities
``((1-p_e)/2, p_e, (1-p_e)/2)``; the two augmented views are ``A x`` and
``(I - A) x`` with ``A = diag(a)``.
"""
import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..config.models import DiagWeight
from ..core.dataset import NetworkDataset
from ..core.embedding import EmbeddingMatrix
from ..errors import DimensionMismatchError
from ..utils import frozen

logger = logging.getLogger(__name__)

MASK_VALUES = np.array([0.0, 0.5, 1.0])
VARIANCE_FLOOR = 1e-12


@dataclass(frozen=True)
class MaskingParams:
    p: np.ndarray

    def __post_init__(self):
        p = frozen(self.p)
        if p.ndim != 1:
            raise DimensionMismatchError(f"p must be a vector, got shape {p.shape}")
        if not np.all((p >= 0.0) & (p <= 1.0)):
            raise ValueError("masking probabilities must lie in [0, 1]")
        object.__setattr__(self, "p", p)

    @classmethod
    def constant(cls, d: int, value: float) -> "MaskingParams":
        return cls(np.full(d, float(value)))

    @property
    def d(self) -> int:
        return self.p.shape[0]


@dataclass(frozen=True)
class MaskDiagonal:
    a: np.ndarray

    def __post_init__(self):
        a = frozen(self.a)
        if a.ndim != 1:
            raise DimensionMismatchError(f"mask must be a vector, got shape {a.shape}")
        if not np.all(np.isin(a, MASK_VALUES)):
            raise ValueError("mask entries must be exactly 0, 0.5 or 1")
        object.__setattr__(self, "a", a)

    @classmethod
    def constant(cls, d: int, value: float) -> "MaskDiagonal":
        return cls(np.full(d, float(value)))

    @property
    def d(self) -> int:
        return self.a.shape[0]


def sample_mask(params: MaskingParams, rng: np.random.Generator) -> MaskDiagonal:
    """
    Draw one diagonal mask.

    Consumes exactly ``d`` uniforms from ``rng``: ``u < p`` gives 1/2, the
    next ``(1-p)/2`` of mass gives 0, the rest gives 1.
    """
    p = params.p
    u = rng.random(p.shape[0])
    a = np.where(u < p, 0.5, np.where(u < p + (1.0 - p) / 2.0, 0.0, 1.0))
    return MaskDiagonal(a)


def mask_moment(p: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    ``E[a_e (1 - a_e)]`` by enumerating the three outcomes (equals ``p/4``).
    """
    p_arr = np.asarray(p, dtype=np.float64)
    if np.any((p_arr < 0.0) | (p_arr > 1.0)):
        raise ValueError("masking probabilities must lie in [0, 1]")
    probs = np.stack([(1.0 - p_arr) / 2.0, p_arr, (1.0 - p_arr) / 2.0], axis=-1)
    moment = probs @ (MASK_VALUES * (1.0 - MASK_VALUES))
    return float(moment) if np.ndim(p) == 0 else moment


def diagonal_weights(params: MaskingParams, mode: DiagWeight = "enumerated") -> np.ndarray:
    """
    Weights ``w_e`` multiplying ``D(M)`` in the expected loss.

    ``enumerated`` gives ``4 E[a_e(1-a_e)] = p_e``; ``squared`` gives ``p_e**2``.
    """
    if mode == "enumerated":
        return 4.0 * mask_moment(params.p)
    if mode == "squared":
        return params.p ** 2
    raise ValueError(f"Unknown diagonal weighting: {mode}")


def sampling_params(params: MaskingParams, mode: DiagWeight = "enumerated") -> MaskingParams:
    """
    Parameters the masks are actually drawn with, chosen so that
    ``4 E[a_e(1-a_e)]`` equals :func:`diagonal_weights` for ``mode``.

    ``squared`` draws with ``p_e**2``; the diagonal target ``p_e**2 M_ee``
    is then ``min(||q_e||^2, Var(x_e))``.
    """
    if mode == "enumerated":
        return params
    if mode == "squared":
        return MaskingParams(params.p ** 2)
    raise ValueError(f"Unknown diagonal weighting: {mode}")


def update_masking_params(q_hat: EmbeddingMatrix, data: NetworkDataset) -> MaskingParams:
    """
    Adaptive update ``p_e = min(||q_e|| / sqrt(max(Var(x_e), 1e-12)), 1)``.

    ``Var`` is the biased (divide-by-n) sample variance of edge ``e`` across subjects.
    """
    if q_hat.d != data.d:
        raise DimensionMismatchError(f"Q has {q_hat.d} rows but data has d={data.d}")
    variance = np.maximum(np.var(data.X, axis=1), VARIANCE_FLOOR)
    p = np.minimum(q_hat.row_norms / np.sqrt(variance), 1.0)
    logger.debug("Updated masking parameters: mean p=%.4f, #p=1: %d",
                 float(p.mean()), int(np.count_nonzero(p >= 1.0)))
    return MaskingParams(p)
